"""Sparse exact linear algebra on tensor powers of X = k (+) L.

The basis of X is indexed 0..d: index 0 is the distinguished basis vector
(1, 0) (grouplike for the comultiplication), and index i >= 1 is (0, e_i)
for the i-th basis vector of L.  A rank-m tensor is a map from m-tuples of
basis indices to nonzero scalars; rank 0 tensors (empty tuple key) hold a
bare scalar.  A vector of X is simply a rank-1 tensor.

Operators X^(in_rank) -> X^(out_rank) are stored column-sparsely: the
column of a basis multi-index is itself a sparse tensor.  Columns are
computed on first use and optionally cached, so composites and tensor
powers never materialize entries that nothing asks for; the trace streams
column by column.

Permutations act in the push convention: applying ``perm`` routes input
factor i to output slot perm[i] (0-based).  Every leg-routing table in the
higher layers is written in this one convention.

Tensors and operators are immutable by contract; column dicts returned by
``SparseOperator.column`` are shared and must not be mutated.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .fields import Field, require_same_field


class SparseTensor:
    """Element of X^(rank), as a sparse multi-index -> scalar map."""

    __slots__ = ("rank", "entries", "field")

    def __init__(self, rank: int, entries: dict, field: Field):
        self.rank = rank
        self.entries = entries
        self.field = field

    @classmethod
    def zero(cls, rank: int, field: Field) -> "SparseTensor":
        return cls(rank, {}, field)

    @classmethod
    def basis(cls, idx: tuple, field: Field) -> "SparseTensor":
        return cls(len(idx), {idx: field.one}, field)

    def is_zero(self) -> bool:
        return not self.entries

    def coefficient(self, idx: tuple):
        return self.entries.get(idx, self.field.zero)

    def scaled(self, c) -> "SparseTensor":
        if c == self.field.zero:
            return SparseTensor(self.rank, {}, self.field)
        mul = self.field.mul
        return SparseTensor(self.rank, {k: mul(c, v) for k, v in self.entries.items()}, self.field)

    def plus(self, other: "SparseTensor") -> "SparseTensor":
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
        out = dict(self.entries)
        _accumulate(out, other.entries, self.field)
        return SparseTensor(self.rank, out, self.field)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseTensor)
            and self.rank == other.rank
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rank, frozenset(self.entries.items())))

    def __repr__(self):
        terms = " + ".join(
            f"{self.field.render(v)}*b{''.join(map(str, k))}" for k, v in sorted(self.entries.items())
        )
        return f"<rank-{self.rank} tensor: {terms or '0'}>"


def vector(coeffs: dict, field: Field) -> SparseTensor:
    """Rank-1 tensor from a basis-index -> scalar map (zeros dropped)."""
    return SparseTensor(1, {(i,): c for i, c in coeffs.items() if c != field.zero}, field)


def _accumulate(target: dict, source: dict, field: Field, scale=None) -> None:
    """target += scale * source, dropping entries that cancel to zero."""
    add = field.add
    mul = field.mul
    zero = field.zero
    for idx, v in source.items():
        if scale is not None:
            v = mul(scale, v)
        cur = target.get(idx)
        if cur is None:
            if v != zero:
                target[idx] = v
        else:
            s = add(cur, v)
            if s == zero:
                del target[idx]
            else:
                target[idx] = s


def delta_n(x: SparseTensor, n: int) -> SparseTensor:
    """Iterated comultiplication of a vector of X, as a rank-n tensor.

    Linear extension of index 0 |-> (0,...,0) and index i |-> the sum of
    the n placements of i among zeros.  n = 1 is the identity.
    """
    if x.rank != 1:
        raise ValueError("delta_n takes a rank-1 tensor")
    if n < 1:
        raise ValueError(f"delta_n needs n >= 1, got {n}")
    out: dict = {}
    field = x.field
    for (i,), c in x.entries.items():
        if i == 0:
            _accumulate(out, {(0,) * n: c}, field)
        else:
            for pos in range(n):
                idx = (0,) * pos + (i,) + (0,) * (n - 1 - pos)
                _accumulate(out, {idx: c}, field)
    return SparseTensor(n, out, field)


def counit(x: SparseTensor):
    """Scalar-part projection (coefficient of the index-0 basis vector)."""
    if x.rank != 1:
        raise ValueError("counit takes a rank-1 tensor")
    return x.entries.get((0,), x.field.zero)


def permute(t: SparseTensor, perm: Sequence[int]) -> SparseTensor:
    """Push input factor i to output slot perm[i] (0-based bijection)."""
    if sorted(perm) != list(range(t.rank)):
        raise ValueError(f"perm {perm!r} is not a bijection on 0..{t.rank - 1}")
    out = {}
    for idx, v in t.entries.items():
        new = [0] * t.rank
        for i, slot in enumerate(perm):
            new[slot] = idx[i]
        out[tuple(new)] = v
    return SparseTensor(t.rank, out, t.field)


def iter_indices(dim: int, rank: int) -> Iterator[tuple]:
    return product(range(dim), repeat=rank)


class SparseOperator:
    """Linear map X^(in_rank) -> X^(out_rank), stored column-sparsely.

    ``dim`` is the number of basis indices of X (d + 1).  Absent columns
    are zero.  ``cache=False`` disables memoization for throwaway
    composites whose columns are only ever requested once.
    """

    __slots__ = ("in_rank", "out_rank", "dim", "field", "_fn", "_cols", "_cache")

    def __init__(
        self,
        in_rank: int,
        out_rank: int,
        dim: int,
        field: Field,
        fn: Callable[[tuple], dict],
        cache: bool = True,
    ):
        self.in_rank = in_rank
        self.out_rank = out_rank
        self.dim = dim
        self.field = field
        self._fn = fn
        self._cols: dict = {}
        self._cache = cache

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_columns(cls, in_rank: int, out_rank: int, dim: int, field: Field, columns: dict) -> "SparseOperator":
        op = cls(in_rank, out_rank, dim, field, lambda idx: columns.get(idx, {}))
        op._cols = columns
        return op

    @classmethod
    def identity(cls, rank: int, dim: int, field: Field) -> "SparseOperator":
        one = field.one
        return cls(rank, rank, dim, field, lambda idx: {idx: one})

    @classmethod
    def zero(cls, in_rank: int, out_rank: int, dim: int, field: Field) -> "SparseOperator":
        return cls(in_rank, out_rank, dim, field, lambda idx: {})

    @classmethod
    def permutation(cls, perm: Sequence[int], dim: int, field: Field) -> "SparseOperator":
        rank = len(perm)
        if sorted(perm) != list(range(rank)):
            raise ValueError(f"perm {perm!r} is not a bijection on 0..{rank - 1}")
        perm = tuple(perm)
        one = field.one

        def col(idx: tuple) -> dict:
            new = [0] * rank
            for i, slot in enumerate(perm):
                new[slot] = idx[i]
            return {tuple(new): one}

        return cls(rank, rank, dim, field, col)

    # -- column access and action ------------------------------------------

    def column(self, idx: tuple) -> dict:
        """Image of the basis vector at idx.  Shared dict: do not mutate."""
        col = self._cols.get(idx)
        if col is None:
            col = self._fn(idx)
            if self._cache:
                self._cols[idx] = col
        return col

    def apply_entries(self, entries: dict) -> dict:
        out: dict = {}
        field = self.field
        one = field.one
        for idx, c in entries.items():
            col = self.column(idx)
            if col:
                _accumulate(out, col, field, None if c == one else c)
        return out

    def apply(self, t: SparseTensor) -> SparseTensor:
        if t.rank != self.in_rank:
            raise ValueError(f"rank mismatch: operator takes rank {self.in_rank}, tensor has rank {t.rank}")
        require_same_field(self.field, t.field)
        return SparseTensor(self.out_rank, self.apply_entries(t.entries), self.field)

    # -- algebra -------------------------------------------------------------

    def compose(self, other: "SparseOperator", cache: bool = True) -> "SparseOperator":
        """self after other (self . other)."""
        if other.out_rank != self.in_rank:
            raise ValueError(
                f"rank mismatch in composition: inner produces rank {other.out_rank}, outer takes rank {self.in_rank}"
            )
        require_same_field(self.field, other.field)
        return SparseOperator(
            other.in_rank,
            self.out_rank,
            self.dim,
            self.field,
            lambda idx: self.apply_entries(other.column(idx)),
            cache=cache,
        )

    def tensor(self, other: "SparseOperator", cache: bool = True) -> "SparseOperator":
        """Tensor-factor Kronecker product; in/out ranks add."""
        require_same_field(self.field, other.field)
        if self.dim != other.dim:
            raise ValueError("operators act on different X")
        k = self.in_rank
        mul = self.field.mul

        def col(idx: tuple) -> dict:
            a = self.column(idx[:k])
            if not a:
                return {}
            b = other.column(idx[k:])
            if not b:
                return {}
            return {ia + ib: mul(va, vb) for ia, va in a.items() for ib, vb in b.items()}

        return SparseOperator(
            self.in_rank + other.in_rank,
            self.out_rank + other.out_rank,
            self.dim,
            self.field,
            col,
            cache=cache,
        )

    def trace(self):
        """Sum of diagonal entries, streamed column by column."""
        if self.in_rank != self.out_rank:
            raise ValueError("trace needs in_rank == out_rank")
        total = self.field.zero
        add = self.field.add
        for idx in iter_indices(self.dim, self.in_rank):
            v = self.column(idx).get(idx)
            if v is not None:
                total = add(total, v)
        return total

    def materialized(self) -> "SparseOperator":
        cols = {idx: self.column(idx) for idx in iter_indices(self.dim, self.in_rank)}
        cols = {idx: col for idx, col in cols.items() if col}
        return SparseOperator.from_columns(self.in_rank, self.out_rank, self.dim, self.field, cols)

    # -- comparison ----------------------------------------------------------

    def diff_witness(self, other: "SparseOperator"):
        """First basis column where the two operators differ, or None.

        Returns (idx, residual) with residual = self(idx) - other(idx).
        """
        if (self.in_rank, self.out_rank, self.dim) != (other.in_rank, other.out_rank, other.dim):
            raise ValueError("operators have different shapes")
        field = self.field
        for idx in iter_indices(self.dim, self.in_rank):
            a = self.column(idx)
            b = other.column(idx)
            if a != b:
                residual = dict(a)
                _accumulate(residual, {k: field.neg(v) for k, v in b.items()}, field)
                return idx, residual
        return None

    def equals(self, other: "SparseOperator") -> bool:
        return self.diff_witness(other) is None


# Spec-facing functional aliases.

def op_apply(op: SparseOperator, t: SparseTensor) -> SparseTensor:
    return op.apply(t)


def op_compose(outer: SparseOperator, inner: SparseOperator, cache: bool = True) -> SparseOperator:
    return outer.compose(inner, cache=cache)


def op_tensor(a: SparseOperator, b: SparseOperator, cache: bool = True) -> SparseOperator:
    return a.tensor(b, cache=cache)


def op_trace(op: SparseOperator):
    return op.trace()


def compose_chain(ops: Iterable[SparseOperator], cache: bool = False) -> SparseOperator:
    """Compose a left-to-right chain: [A, B, C] -> A . B . C (C applied first)."""
    ops = list(ops)
    if not ops:
        raise ValueError("empty composition")
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = op.compose(out, cache=cache)
    return out


def tensor_chain(ops: Iterable[SparseOperator], cache: bool = True) -> SparseOperator:
    ops = list(ops)
    if not ops:
        raise ValueError("empty tensor product")
    out = ops[0]
    for op in ops[1:]:
        out = out.tensor(op, cache=cache)
    return out


def delta_op(n: int, dim: int, field: Field) -> SparseOperator:
    """The iterated comultiplication X -> X^(n) as an operator."""
    if n < 1:
        raise ValueError(f"delta_op needs n >= 1, got {n}")

    def col(idx: tuple) -> dict:
        return delta_n(SparseTensor.basis(idx, field), n).entries

    return SparseOperator(1, n, dim, field, col)


def counit_op(dim: int, field: Field) -> SparseOperator:
    """The counit X -> X^(0) (rank-0 tensors are scalars)."""
    one = field.one

    def col(idx: tuple) -> dict:
        return {(): one} if idx == (0,) else {}

    return SparseOperator(1, 0, dim, field, col)
