"""Yang-Baxter braiding, its inverse, and the framing twist on X^2.

The braiding acts on two adjacent pairs (X^2)(x)(X^2): the last two inputs
are comultiplied into three legs each, the first legs exit as the new
leading pair, and the remaining legs feed two copies of the ternary map
applied to the old leading pair.  The inverse runs the same layout through
the reversing partner; the twist comultiplies both members of one pair and
recombines them through two ternary maps.

All four operators are materialized at construction and the inverse
identities (braiding . inverse = identity, twist . twist-inverse =
identity) are asserted then and there, so a wrong leg route fails fast
instead of corrupting invariants downstream.  The leg routes of the
inverse operators are path-dependent (see tsd module docstring): the
reversing partner of the ternary path absorbs a swap, so its undo
identities carry the outer legs in straight rather than reversed order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .algebra import AlgebraSpec, CheckResult, ValidationReport
from .tensor import (
    SparseOperator,
    compose_chain,
    delta_op,
    op_compose,
    tensor_chain,
)
from .tsd import TsdPair, make_tsd_pair

# (x, y, z1, z2, z3, w1, w2, w3) -> (z1, w1, x, z2, w2, y, z3, w3):
# first legs of the last two inputs exit in front; remaining legs pair up
# with x and y for the two ternary-map factors.
_BRAIDING_ROUTE = (2, 5, 0, 3, 6, 1, 4, 7)

# (x1, x2, x3, y1, y2, y3, z, w) -> (z, y2, x2, w, y3, x3, x1, y1):
# binary-path inverse; each reversing-map factor sees (old-pair member,
# y-leg, x-leg), outer legs reversed.
_BRAIDING_INV_ROUTE_BIN = (6, 2, 5, 7, 1, 4, 0, 3)

# (x1, x2, x3, y1, y2, y3, z, w) -> (z, x2, y2, w, x3, y3, x1, y1):
# ternary-path inverse; outer legs in straight order.
_BRAIDING_INV_ROUTE_TER = (6, 1, 4, 7, 2, 5, 0, 3)

# (x1, x2, x3, y1, y2, y3) -> (x1, x2, y2, y1, x3, y3): twist layout.
_TWIST_ROUTE = (0, 1, 4, 3, 2, 5)

# (x1, x2, x3, y1, y2, y3) -> (x1, y2, x2, y1, y3, x3): binary twist inverse.
_TWIST_INV_ROUTE_BIN = (0, 2, 5, 3, 1, 4)


@dataclass(eq=False)
class BraidingKit:
    pair: TsdPair
    braiding: SparseOperator       # X^4 -> X^4
    braiding_inv: SparseOperator   # X^4 -> X^4
    twist: SparseOperator          # X^2 -> X^2
    twist_inv: SparseOperator      # X^2 -> X^2
    # memo for padded generator operators, twist powers, relation reports
    cache: dict = dataclass_field(default_factory=dict, repr=False)

    @property
    def algebra(self) -> AlgebraSpec:
        return self.pair.algebra

    @property
    def dim(self) -> int:
        return self.pair.dim

    @property
    def field(self):
        return self.pair.field


def _identity_block(pair: TsdPair, rank: int) -> SparseOperator:
    return SparseOperator.identity(rank, pair.dim, pair.field)


def build_braiding(pair: TsdPair) -> SparseOperator:
    dim, field = pair.dim, pair.field
    one1 = _identity_block(pair, 1)
    d3 = delta_op(3, dim, field)
    op = compose_chain(
        [
            tensor_chain([one1, one1, pair.op, pair.op]),
            SparseOperator.permutation(_BRAIDING_ROUTE, dim, field),
            tensor_chain([one1, one1, d3, d3]),
        ],
        cache=False,
    )
    return op.materialized()


def build_braiding_inverse(pair: TsdPair) -> SparseOperator:
    dim, field = pair.dim, pair.field
    one1 = _identity_block(pair, 1)
    d3 = delta_op(3, dim, field)
    route = _BRAIDING_INV_ROUTE_BIN if pair.algebra.arity == 2 else _BRAIDING_INV_ROUTE_TER
    op = compose_chain(
        [
            tensor_chain([pair.rev, pair.rev, one1, one1]),
            SparseOperator.permutation(route, dim, field),
            tensor_chain([d3, d3, one1, one1]),
        ],
        cache=False,
    ).materialized()
    forward = build_braiding(pair)
    _assert_inverse("braiding", forward, op)
    return op


def build_twist(pair: TsdPair) -> SparseOperator:
    dim, field = pair.dim, pair.field
    d3 = delta_op(3, dim, field)
    op = compose_chain(
        [
            tensor_chain([pair.op, pair.op]),
            SparseOperator.permutation(_TWIST_ROUTE, dim, field),
            tensor_chain([d3, d3]),
        ],
        cache=False,
    )
    return op.materialized()


def build_twist_inverse(pair: TsdPair) -> SparseOperator:
    dim, field = pair.dim, pair.field
    d3 = delta_op(3, dim, field)
    # binary path: its own leg layout; ternary path: the twist layout run
    # through the reversing partner (the partner's built-in swap undoes it)
    route = _TWIST_INV_ROUTE_BIN if pair.algebra.arity == 2 else _TWIST_ROUTE
    op = compose_chain(
        [
            tensor_chain([pair.rev, pair.rev]),
            SparseOperator.permutation(route, dim, field),
            tensor_chain([d3, d3]),
        ],
        cache=False,
    ).materialized()
    forward = build_twist(pair)
    _assert_inverse("twist", forward, op)
    return op


def _assert_inverse(name: str, forward: SparseOperator, backward: SparseOperator) -> None:
    identity = SparseOperator.identity(forward.in_rank, forward.dim, forward.field)
    for label, composite in (
        (f"{name}-inverse . {name}", op_compose(backward, forward, cache=False)),
        (f"{name} . {name}-inverse", op_compose(forward, backward, cache=False)),
    ):
        witness = composite.diff_witness(identity)
        if witness is not None:
            idx, residual = witness
            raise RuntimeError(
                f"construction bug: {label} != identity at column {idx}; residual {residual}"
            )


def make_braiding_kit(source: AlgebraSpec | TsdPair) -> BraidingKit:
    pair = source if isinstance(source, TsdPair) else make_tsd_pair(source)
    return BraidingKit(
        pair,
        build_braiding(pair),
        build_braiding_inverse(pair),
        build_twist(pair),
        build_twist_inverse(pair),
    )


# --------------------------------------------------------------------------
# Braiding property checks


def _compare(name: str, lhs: SparseOperator, rhs: SparseOperator) -> CheckResult:
    witness = lhs.diff_witness(rhs)
    columns = lhs.dim ** lhs.in_rank
    if witness is None:
        return CheckResult(name, True, f"{columns} columns")
    idx, residual = witness
    return CheckResult(name, False, witness=idx, residual=residual)


def check_braiding(kit: BraidingKit, far_commutation_max_dim: int = 3) -> ValidationReport:
    """Braid equation, inverse identities, slide identities, far commutation.

    Far commutation lives on X^8 and is only checked when the algebra
    dimension d satisfies d + 1 <= far_commutation_max_dim (size guard).
    """
    pair = kit.pair
    dim, field = kit.dim, kit.field
    report = ValidationReport()

    one2 = _identity_block(pair, 2)
    left = kit.braiding.tensor(one2)    # braiding on pairs (1, 2)
    right = one2.tensor(kit.braiding)   # braiding on pairs (2, 3)
    lhs = compose_chain([left, right, left], cache=False)
    rhs = compose_chain([right, left, right], cache=False)
    report.add(_compare("ybe", lhs, rhs))

    identity4 = SparseOperator.identity(4, dim, field)
    report.add(_compare("braiding-invertible", op_compose(kit.braiding_inv, kit.braiding, cache=False), identity4))
    identity2 = SparseOperator.identity(2, dim, field)
    report.add(_compare("twist-invertible", op_compose(kit.twist_inv, kit.twist, cache=False), identity2))

    twist_left = kit.twist.tensor(one2)
    twist_right = one2.tensor(kit.twist)
    report.add(
        _compare(
            "slide-under",
            op_compose(kit.braiding, twist_left, cache=False),
            op_compose(twist_right, kit.braiding, cache=False),
        )
    )
    report.add(
        _compare(
            "slide-over",
            op_compose(kit.braiding, twist_right, cache=False),
            op_compose(twist_left, kit.braiding, cache=False),
        )
    )

    if dim <= far_commutation_max_dim:
        one4 = _identity_block(pair, 4)
        far_left = kit.braiding.tensor(one4)
        far_right = one4.tensor(kit.braiding)
        report.add(
            _compare(
                "far-commutation",
                op_compose(far_left, far_right, cache=False),
                op_compose(far_right, far_left, cache=False),
            )
        )
    else:
        report.add(CheckResult("far-commutation", True, f"skipped (size guard, dim {dim} > {far_commutation_max_dim})"))
    return report
