"""Ternary self-distributive operators on X = k (+) L and their checks.

Two construction paths share one comultiplication (index 0 grouplike,
indices >= 1 primitive):

* binary path (arity-2 algebra): the ternary map sends
  (a,x)(x)(b,y)(x)(c,z) to (abc, bcx + c[x,y] + b[x,z] + [[x,y],z]); its
  reversing partner flips the signs of the two single-bracket terms.  Both
  are nestings of the binary maps (a,x)(x)(b,y) |-> (ab, bx +- [x,y]).
* ternary path (arity-3 algebra): (a,x)(x)(b,y)(x)(c,z) |->
  (abc, bcx + [x,y,z]); the reversing partner composes with the swap of
  the last two inputs, i.e. (abc, bcx - [x,y,z]).

Every identity checked here is an exact operator equality, evaluated on
all basis columns.  Sweedler bookkeeping is pinned by explicit routing
permutations (push convention, 0-based), named once below; this is where
implementations silently diverge, so each constant states the leg layout
it encodes.

The slot order of the reversibility identity depends on the path: with
the reversing partner applied outside, the binary path needs the legs of
the outer pair in reversed order (..., z-leg, y-leg) while the ternary
path needs straight order (..., y-leg, z-leg); the other order provably
fails (it leaves a 2[x,y,z] residue).  The same per-path choice propagates
to the braiding and twist inverses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraSpec, CheckResult, ValidationReport, AlgebraError, ensure_validated
from .tensor import (
    SparseOperator,
    compose_chain,
    counit_op,
    delta_op,
    op_compose,
    tensor_chain,
)

# (x, y, z, u1, u2, u3, v1, v2, v3) -> (x, u1, v1, y, u2, v2, z, u3, v3):
# distribute the three legs of the last two inputs across the three
# ternary-map factors.  Also the tensor-coalgebra shuffle
# (x1, x2, x3, y1, y2, y3, z1, z2, z3) -> (x1, y1, z1, x2, y2, z2, x3, y3, z3).
INTERLEAVE_9 = (0, 3, 6, 1, 4, 7, 2, 5, 8)

# (x, y1, y2, z1, z2) -> (x, y2, z2, z1, y1): inner (second) legs feed the
# first map, outer (first) legs feed slots 2 and 3 in reversed order.
_REV_BINARY_DEF = (0, 4, 1, 3, 2)
# (x, y1, y2, z1, z2) -> (x, y1, z1, z2, y2): first legs inside.
_REV_BINARY_LEM = (0, 1, 4, 2, 3)
# (x, y1, y2, z1, z2) -> (x, y2, z2, y1, z1): outer pair in straight order.
_REV_TERNARY_DEF = (0, 3, 1, 4, 2)
# (x, y1, y2, z1, z2) -> (x, y1, z1, y2, z2).
_REV_TERNARY_LEM = (0, 1, 3, 2, 4)

# (x, y, z1, z2) -> (x, z1, y, z2): duplicate the last input and interleave.
_SD_MIDDLE_SWAP = (0, 2, 1, 3)

# (x1, x2, y1, y2) -> (x1, y1, x2, y2): tensor-coalgebra shuffle on two factors.
_SHUFFLE_2X2 = (0, 2, 1, 3)


@dataclass
class TsdPair:
    """A validated algebra with its ternary map and reversing partner."""

    algebra: AlgebraSpec
    op: SparseOperator        # X^3 -> X
    rev: SparseOperator       # X^3 -> X
    path: str                 # "binary-composed" | "ternary"

    @property
    def dim(self) -> int:
        return self.algebra.dim + 1

    @property
    def field(self):
        return self.algebra.field


def _embed(coeffs: dict) -> dict:
    """L-vector (1-based sparse map) as a rank-1 tensor column."""
    return {(i,): c for i, c in coeffs.items()}


def build_T(spec: AlgebraSpec) -> SparseOperator:
    """The ternary self-distributive operator X^3 -> X on basis columns."""
    ensure_validated(spec)
    from .algebra import bracket2  # local to keep module load light

    field = spec.field
    one = field.one
    dim = spec.dim + 1

    if spec.arity == 2:

        def col(idx: tuple) -> dict:
            i, j, k = idx
            if i == 0:
                return {(0,): one} if j == 0 and k == 0 else {}
            if j == 0 and k == 0:
                return {(i,): one}
            ei = {i: one}
            if k == 0:
                return _embed(spec.bracket_basis((i, j)))
            if j == 0:
                return _embed(spec.bracket_basis((i, k)))
            return _embed(bracket2(spec, bracket2(spec, ei, {j: one}), {k: one}))

    else:

        def col(idx: tuple) -> dict:
            i, j, k = idx
            if i == 0:
                return {(0,): one} if j == 0 and k == 0 else {}
            if j == 0 and k == 0:
                return {(i,): one}
            if j == 0 or k == 0:
                return {}
            return _embed(spec.bracket_basis((i, j, k)))

    return SparseOperator(3, 1, dim, field, col)


def build_T_tilde(spec: AlgebraSpec) -> SparseOperator:
    """The reversing partner of build_T."""
    ensure_validated(spec)
    from .algebra import bracket2

    field = spec.field
    one = field.one
    neg = field.neg
    dim = spec.dim + 1

    if spec.arity == 3:
        # compose the forward map with the swap of the last two inputs
        swap_last_two = SparseOperator.permutation((0, 2, 1), dim, field)
        return op_compose(build_T(spec), swap_last_two)

    def col(idx: tuple) -> dict:
        i, j, k = idx
        if i == 0:
            return {(0,): one} if j == 0 and k == 0 else {}
        if j == 0 and k == 0:
            return {(i,): one}
        ei = {i: one}
        if k == 0:
            return _embed({l: neg(c) for l, c in spec.bracket_basis((i, j)).items()})
        if j == 0:
            return _embed({l: neg(c) for l, c in spec.bracket_basis((i, k)).items()})
        return _embed(bracket2(spec, bracket2(spec, ei, {j: one}), {k: one}))

    return SparseOperator(3, 1, dim, field, col)


def build_q(spec: AlgebraSpec) -> SparseOperator:
    """Binary self-distributive map (a,x)(x)(b,y) |-> (ab, bx + [x,y])."""
    if spec.arity != 2:
        raise AlgebraError("binary self-distributive map needs an arity-2 algebra")
    ensure_validated(spec)
    field = spec.field
    one = field.one
    dim = spec.dim + 1

    def col(idx: tuple) -> dict:
        i, j = idx
        if i == 0:
            return {(0,): one} if j == 0 else {}
        if j == 0:
            return {(i,): one}
        return _embed(spec.bracket_basis((i, j)))

    return SparseOperator(2, 1, dim, field, col)


def make_tsd_pair(spec: AlgebraSpec) -> TsdPair:
    ensure_validated(spec)
    path = "binary-composed" if spec.arity == 2 else "ternary"
    return TsdPair(spec, build_T(spec), build_T_tilde(spec), path)


def reversibility_routes(arity: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(definition-leg route, proof-leg route) for the given arity."""
    if arity == 2:
        return _REV_BINARY_DEF, _REV_BINARY_LEM
    return _REV_TERNARY_DEF, _REV_TERNARY_LEM


# --------------------------------------------------------------------------
# Property checks (exact operator identities)

CHECK_NAMES = ("tsd", "tsd-tilde", "coalgebra-morphism", "reversibility", "mixed", "q-self-distributive")


def _tsd_sides(pair: TsdPair, outer: SparseOperator, inner: SparseOperator):
    """LHS/RHS of the self-distributivity diagram for given outer/inner maps."""
    dim, field = pair.dim, pair.field
    one1 = SparseOperator.identity(1, dim, field)
    lhs = op_compose(outer, tensor_chain([inner, one1, one1]), cache=False)
    route = SparseOperator.permutation(INTERLEAVE_9, dim, field)
    expand = tensor_chain([one1, one1, one1, delta_op(3, dim, field), delta_op(3, dim, field)])
    rhs = compose_chain(
        [outer, tensor_chain([inner, inner, inner]), route, expand],
        cache=False,
    )
    return lhs, rhs


def _compare(name: str, lhs: SparseOperator, rhs: SparseOperator, detail: str = "") -> CheckResult:
    witness = lhs.diff_witness(rhs)
    columns = lhs.dim ** lhs.in_rank
    if witness is None:
        return CheckResult(name, True, detail or f"{columns} columns")
    idx, residual = witness
    return CheckResult(name, False, detail, witness=idx, residual=residual)


def _check_tsd(pair: TsdPair, use_tilde: bool) -> CheckResult:
    m = pair.rev if use_tilde else pair.op
    lhs, rhs = _tsd_sides(pair, m, m)
    return _compare("tsd-tilde" if use_tilde else "tsd", lhs, rhs)


def _check_coalgebra_morphism(pair: TsdPair) -> list[CheckResult]:
    """The ternary map intertwines the (iterated) comultiplications and counits."""
    dim, field = pair.dim, pair.field
    d3 = delta_op(3, dim, field)
    route = SparseOperator.permutation(INTERLEAVE_9, dim, field)
    eps = counit_op(dim, field)
    eps3 = tensor_chain([eps, eps, eps])
    results = []
    for label, m in (("", pair.op), ("~", pair.rev)):
        lhs = op_compose(d3, m, cache=False)
        rhs = compose_chain([tensor_chain([m, m, m]), route, tensor_chain([d3, d3, d3])], cache=False)
        results.append(_compare(f"coalgebra-morphism{label}", lhs, rhs))
        results.append(_compare(f"counit-compat{label}", op_compose(eps, m, cache=False), eps3))
    return results


def _check_reversibility(pair: TsdPair) -> list[CheckResult]:
    """Undoing with the reversing partner recovers x . eps(y) eps(z).

    Checked for both Sweedler leg orders and with the two maps exchanged
    (four identities); cocommutativity makes the two leg orders agree, and
    the check documents that.
    """
    dim, field = pair.dim, pair.field
    one1 = SparseOperator.identity(1, dim, field)
    d2 = delta_op(2, dim, field)
    expand = tensor_chain([one1, d2, d2])
    eps = counit_op(dim, field)
    target = tensor_chain([one1, eps, eps])
    def_route, lem_route = reversibility_routes(pair.algebra.arity)
    results = []
    for order_name, route in (("def-legs", def_route), ("proof-legs", lem_route)):
        perm = SparseOperator.permutation(route, dim, field)
        for pair_name, outer, inner in (("rev.fwd", pair.rev, pair.op), ("fwd.rev", pair.op, pair.rev)):
            lhs = compose_chain([outer, tensor_chain([inner, one1, one1]), perm, expand], cache=False)
            results.append(_compare(f"reversibility[{pair_name},{order_name}]", lhs, target))
    return results


def _check_mixed(pair: TsdPair) -> list[CheckResult]:
    """Mixed distributivity of the map and its partner, (x, y, z) reading."""
    results = []
    for name, outer_lhs, outer_rhs in (
        ("mixed[fwd-outer]", pair.op, pair.rev),
        ("mixed[rev-outer]", pair.rev, pair.op),
    ):
        # LHS: outer_lhs(outer_rhs(x,y,z), u, v); RHS distributes outer_lhs
        # inside over the three legs, with outer_rhs outside.
        dim, field = pair.dim, pair.field
        one1 = SparseOperator.identity(1, dim, field)
        lhs = op_compose(outer_lhs, tensor_chain([outer_rhs, one1, one1]), cache=False)
        route = SparseOperator.permutation(INTERLEAVE_9, dim, field)
        expand = tensor_chain([one1, one1, one1, delta_op(3, dim, field), delta_op(3, dim, field)])
        rhs = compose_chain(
            [outer_rhs, tensor_chain([outer_lhs, outer_lhs, outer_lhs]), route, expand],
            cache=False,
        )
        results.append(_compare(name, lhs, rhs))
    return results


def _check_q_self_distributive(pair: TsdPair) -> list[CheckResult]:
    if pair.algebra.arity != 2:
        raise AlgebraError("q checks need an arity-2 algebra")
    dim, field = pair.dim, pair.field
    q = build_q(pair.algebra)
    one1 = SparseOperator.identity(1, dim, field)
    lhs = op_compose(q, tensor_chain([q, one1]), cache=False)
    rhs = compose_chain(
        [
            q,
            tensor_chain([q, q]),
            SparseOperator.permutation(_SD_MIDDLE_SWAP, dim, field),
            tensor_chain([one1, one1, delta_op(2, dim, field)]),
        ],
        cache=False,
    )
    results = [_compare("q-self-distributive", lhs, rhs)]
    results.append(_compare("tsd-is-nested-q", pair.op, lhs))
    return results


def check_tsd_properties(pair: TsdPair, which=None) -> ValidationReport:
    """Run the requested identity checks (all applicable ones by default)."""
    if which is None:
        which = set(CHECK_NAMES) if pair.algebra.arity == 2 else set(CHECK_NAMES) - {"q-self-distributive"}
    else:
        which = set(which)
        unknown = which - set(CHECK_NAMES)
        if unknown:
            raise ValueError(f"unknown tsd checks: {sorted(unknown)}")
        if "q-self-distributive" in which and pair.algebra.arity != 2:
            raise AlgebraError("q-self-distributive requires an arity-2 algebra")
    report = ValidationReport()
    if "tsd" in which:
        report.add(_check_tsd(pair, use_tilde=False))
    if "tsd-tilde" in which:
        report.add(_check_tsd(pair, use_tilde=True))
    if "coalgebra-morphism" in which:
        for r in _check_coalgebra_morphism(pair):
            report.add(r)
    if "reversibility" in which:
        for r in _check_reversibility(pair):
            report.add(r)
    if "mixed" in which:
        for r in _check_mixed(pair):
            report.add(r)
    if "q-self-distributive" in which:
        for r in _check_q_self_distributive(pair):
            report.add(r)
    return report
