"""Structure-constant presentations of Lie algebras and 3-Lie algebras.

Brackets are stored only on strictly increasing basis-index tuples
(1-based); every other ordering is recovered from the sign of the sorting
permutation and repeated indices give zero.  Antisymmetry / total
skew-symmetry is therefore structural and cannot be violated by data, so
the validators only have to check the Jacobi identity (arity 2) or the
Filippov identity (arity 3), exhaustively over basis tuples -- complete by
multilinearity.

Vectors of L are sparse 1-based index -> scalar maps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from pathlib import Path
from typing import Iterable

from .fields import Field, RATIONALS

BUILTIN_NAMES = ("abelian", "heisenberg3", "so3", "sl2", "nambu4")


class AlgebraError(ValueError):
    """Malformed algebra document or ill-typed bracket arguments."""


@dataclass
class AlgebraSpec:
    name: str
    arity: int
    dim: int
    field: Field
    basis: tuple[str, ...]
    # sorted 1-based index tuple -> {basis index: coefficient}
    structure: dict[tuple[int, ...], dict[int, object]]

    def basis_label(self, i: int) -> str:
        return self.basis[i - 1]

    def bracket_basis(self, indices: tuple[int, ...]) -> dict[int, object]:
        """Bracket of basis vectors in any order, via the permutation sign."""
        key, sign = _sort_with_sign(indices)
        if sign == 0:
            return {}
        coeffs = self.structure.get(key)
        if not coeffs:
            return {}
        if sign == 1:
            return coeffs
        neg = self.field.neg
        return {i: neg(c) for i, c in coeffs.items()}


def _sort_with_sign(indices: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Sort an index tuple, returning the permutation sign (0 on repeats)."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idx)):
        if idx[i - 1] == idx[i]:
            return tuple(idx), 0
    return tuple(idx), sign


def _check_vector(spec: AlgebraSpec, v: dict) -> None:
    for i in v:
        if not 1 <= i <= spec.dim:
            raise AlgebraError(f"vector index {i} out of range 1..{spec.dim}")


def bracket2(spec: AlgebraSpec, x: dict, y: dict) -> dict:
    """Bilinear antisymmetric extension of the structure constants."""
    if spec.arity != 2:
        raise AlgebraError(f"bracket2 on arity-{spec.arity} algebra")
    _check_vector(spec, x)
    _check_vector(spec, y)
    field = spec.field
    out: dict = {}
    for i, xc in x.items():
        for j, yc in y.items():
            coeffs = spec.bracket_basis((i, j))
            if coeffs:
                _add_scaled(out, coeffs, field.mul(xc, yc), field)
    return out


def bracket3(spec: AlgebraSpec, x: dict, y: dict, z: dict) -> dict:
    """Trilinear totally skew extension of the structure constants."""
    if spec.arity != 3:
        raise AlgebraError(f"bracket3 on arity-{spec.arity} algebra")
    for v in (x, y, z):
        _check_vector(spec, v)
    field = spec.field
    out: dict = {}
    for i, xc in x.items():
        for j, yc in y.items():
            cxy = field.mul(xc, yc)
            for k, zc in z.items():
                coeffs = spec.bracket_basis((i, j, k))
                if coeffs:
                    _add_scaled(out, coeffs, field.mul(cxy, zc), field)
    return out


def _add_scaled(target: dict, source: dict, scale, field: Field) -> None:
    if scale == field.zero:
        return
    for i, c in source.items():
        cur = target.get(i)
        s = field.mul(scale, c) if cur is None else field.add(cur, field.mul(scale, c))
        if s == field.zero:
            target.pop(i, None)
        else:
            target[i] = s


# --------------------------------------------------------------------------
# Validation


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    witness: object = None
    residual: object = None

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        msg = f"{self.name}: {status}"
        if self.detail:
            msg += f" ({self.detail})"
        if not self.ok and self.witness is not None:
            msg += f" witness={self.witness} residual={self.residual}"
        return msg


@dataclass
class ValidationReport:
    results: list[CheckResult] = dataclass_field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    @property
    def passed(self) -> bool:
        return not self.failures

    def add(self, result: CheckResult) -> None:
        self.results.append(result)

    def lines(self) -> list[str]:
        return [str(r) for r in self.results]


def _unit(spec: AlgebraSpec, i: int) -> dict:
    return {i: spec.field.one}


def _jacobi_residual(spec: AlgebraSpec, i: int, j: int, k: int) -> dict:
    x, y, z = (_unit(spec, t) for t in (i, j, k))
    field = spec.field
    out: dict = {}
    _add_scaled(out, bracket2(spec, bracket2(spec, x, y), z), field.one, field)
    _add_scaled(out, bracket2(spec, bracket2(spec, y, z), x), field.one, field)
    _add_scaled(out, bracket2(spec, bracket2(spec, z, x), y), field.one, field)
    return out


def _filippov_residual(spec: AlgebraSpec, xs: tuple[int, ...]) -> dict:
    # [[x1,x2,x3],x4,x5] - [[x1,x4,x5],x2,x3] - [x1,[x2,x4,x5],x3] - [x1,x2,[x3,x4,x5]]
    x1, x2, x3, x4, x5 = (_unit(spec, t) for t in xs)
    field = spec.field
    out: dict = {}
    _add_scaled(out, bracket3(spec, bracket3(spec, x1, x2, x3), x4, x5), field.one, field)
    minus_one = field.neg(field.one)
    _add_scaled(out, bracket3(spec, bracket3(spec, x1, x4, x5), x2, x3), minus_one, field)
    _add_scaled(out, bracket3(spec, x1, bracket3(spec, x2, x4, x5), x3), minus_one, field)
    _add_scaled(out, bracket3(spec, x1, x2, bracket3(spec, x3, x4, x5)), minus_one, field)
    return out


def validate_algebra(spec: AlgebraSpec) -> ValidationReport:
    """Exhaustive basis-tuple check of the defining identity.

    Arity 2: Jacobi over all d^3 triples.  Arity 3: the Filippov
    (fundamental) identity, in the derivation form
    [[x1,x2,x3],x4,x5] = [[x1,x4,x5],x2,x3] + [x1,[x2,x4,x5],x3]
    + [x1,x2,[x3,x4,x5]], over all d^5 tuples.  Antisymmetry is structural
    and reported as vacuously checked.
    """
    report = ValidationReport()
    skew_name = "antisymmetry" if spec.arity == 2 else "skew-symmetry"
    report.add(CheckResult(skew_name, True, "structural (sorted-tuple storage)"))
    d = spec.dim
    if spec.arity == 2:
        count = 0
        for i, j, k in product(range(1, d + 1), repeat=3):
            count += 1
            residual = _jacobi_residual(spec, i, j, k)
            if residual:
                report.add(CheckResult("jacobi", False, witness=(i, j, k), residual=residual))
                return report
        report.add(CheckResult("jacobi", True, f"{count} triples"))
    else:
        count = 0
        for xs in product(range(1, d + 1), repeat=5):
            count += 1
            residual = _filippov_residual(spec, xs)
            if residual:
                report.add(CheckResult("filippov", False, witness=xs, residual=residual))
                return report
        report.add(CheckResult("filippov", True, f"{count} 5-tuples"))
    return report


def ensure_validated(spec: AlgebraSpec) -> None:
    """Raise unless the spec satisfies its defining identity (memoized)."""
    flag = getattr(spec, "_validated", None)
    if flag is True:
        return
    report = validate_algebra(spec)
    if not report.passed:
        failure = report.failures[0]
        raise AlgebraError(
            f"algebra {spec.name!r} fails {failure.name} at {failure.witness}: residual {failure.residual}"
        )
    object.__setattr__(spec, "_validated", True)


# --------------------------------------------------------------------------
# Loading and builtins


def load_algebra(document: dict) -> AlgebraSpec:
    """Build an AlgebraSpec from a parsed JSON document.

    Schema: {"name": str, "field": {"kind": "rational"} | {"kind": "prime",
    "p": int}, "arity": 2|3, "dim": int, "basis": [str, ...], "brackets":
    [{"args": [i, j(, k)], "value": [{"idx": l, "coeff": "p/q"}, ...]}, ...]}
    with 1-based strictly increasing args; omitted tuples mean zero.
    Validation of the defining identity is NOT run here.
    """
    if not isinstance(document, dict):
        raise AlgebraError("algebra document must be a JSON object")
    try:
        name = document["name"]
        arity = document["arity"]
        dim = document["dim"]
        basis = document["basis"]
        brackets = document["brackets"]
        field = Field.from_descriptor(document["field"])
    except KeyError as e:
        raise AlgebraError(f"algebra document missing key {e.args[0]!r}") from None
    if arity not in (2, 3):
        raise AlgebraError(f"arity must be 2 or 3, got {arity!r}")
    if not isinstance(dim, int) or dim < 1:
        raise AlgebraError(f"dim must be a positive integer, got {dim!r}")
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise AlgebraError(f"basis must list {dim} labels")
    structure: dict[tuple[int, ...], dict[int, object]] = {}
    for entry in brackets:
        args = entry.get("args")
        if not isinstance(args, list) or len(args) != arity:
            raise AlgebraError(f"bracket args {args!r}: expected {arity} indices")
        if any(not isinstance(a, int) or not 1 <= a <= dim for a in args):
            raise AlgebraError(f"bracket args {args!r}: index out of range 1..{dim}")
        if any(args[i] >= args[i + 1] for i in range(arity - 1)):
            raise AlgebraError(
                f"bracket args {args!r} must be strictly increasing "
                "(repeats are a zero bracket; other orders follow by sign)"
            )
        key = tuple(args)
        if key in structure:
            raise AlgebraError(f"duplicate bracket tuple {args!r}")
        coeffs: dict[int, object] = {}
        for term in entry.get("value", []):
            idx = term.get("idx")
            if not isinstance(idx, int) or not 1 <= idx <= dim:
                raise AlgebraError(f"bracket value index {idx!r} out of range 1..{dim}")
            c = field.parse(str(term.get("coeff")))
            if c != field.zero:
                if idx in coeffs:
                    coeffs[idx] = field.add(coeffs[idx], c)
                    if coeffs[idx] == field.zero:
                        del coeffs[idx]
                else:
                    coeffs[idx] = c
        if coeffs:
            structure[key] = coeffs
    return AlgebraSpec(str(name), arity, dim, field, tuple(basis), structure)


def load_algebra_file(path) -> AlgebraSpec:
    text = Path(path).read_text()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraError(f"{path}: invalid JSON ({e})") from None
    return load_algebra(document)


def dump_algebra(spec: AlgebraSpec) -> dict:
    """Inverse of load_algebra (canonical document form)."""
    return {
        "name": spec.name,
        "field": spec.field.descriptor(),
        "arity": spec.arity,
        "dim": spec.dim,
        "basis": list(spec.basis),
        "brackets": [
            {
                "args": list(key),
                "value": [
                    {"idx": i, "coeff": spec.field.render(c).split(" mod ")[0]}
                    for i, c in sorted(coeffs.items())
                ],
            }
            for key, coeffs in sorted(spec.structure.items())
        ],
    }


def _epsilon_sign(perm: Iterable[int]) -> int:
    _, sign = _sort_with_sign(tuple(perm))
    return sign


def builtin_algebra(name: str, dim: int | None = None, arity: int = 2, field: Field | None = None) -> AlgebraSpec:
    """Named example algebras.

    abelian(dim, arity): zero bracket on k^dim.
    heisenberg3: [e1,e2] = e3.
    so3: [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2.
    sl2: basis (h, e, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    nambu4: [e_a,e_b,e_c] = epsilon_{abcd} e_d on k^4.
    """
    field = field or RATIONALS
    one = field.one
    neg = field.neg
    two = field.from_int(2)
    if name == "abelian":
        if dim is None or dim < 1 or arity not in (2, 3):
            raise AlgebraError("abelian needs dim >= 1 and arity in {2, 3}")
        return AlgebraSpec(f"abelian{dim}", arity, dim, field, tuple(f"e{i}" for i in range(1, dim + 1)), {})
    if dim is not None:
        raise AlgebraError(f"{name} does not take a dimension")
    if name == "heisenberg3":
        return AlgebraSpec("heisenberg3", 2, 3, field, ("e1", "e2", "e3"), {(1, 2): {3: one}})
    if name == "so3":
        return AlgebraSpec(
            "so3",
            2,
            3,
            field,
            ("e1", "e2", "e3"),
            {(1, 2): {3: one}, (2, 3): {1: one}, (1, 3): {2: neg(one)}},
        )
    if name == "sl2":
        return AlgebraSpec(
            "sl2",
            2,
            3,
            field,
            ("h", "e", "f"),
            {(1, 2): {2: two}, (1, 3): {3: neg(two)}, (2, 3): {1: one}},
        )
    if name == "nambu4":
        structure: dict[tuple[int, ...], dict[int, object]] = {}
        for key in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)):
            (l,) = set(range(1, 5)) - set(key)
            sign = _epsilon_sign(key + (l,))
            structure[key] = {l: one if sign == 1 else neg(one)}
        return AlgebraSpec("nambu4", 3, 4, field, ("e1", "e2", "e3", "e4"), structure)
    raise AlgebraError(f"unknown builtin algebra {name!r}; known: {', '.join(BUILTIN_NAMES)}")
