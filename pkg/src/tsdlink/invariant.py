"""Framed braid group representation on X^(2n) and the trace invariant.

Each strand occupies a pair of tensor factors.  A crossing generator on
strands (i, i+1) acts by the braiding padded with identities (2(i-1)
factors on the left, 2(n-i-1) on the right); a framing twist on strand i
acts by the twist on that strand's pair.  A normalized word maps to the
left-to-right composition of its crossing letters, applied after the
framing block twist^(t_1) (x) ... (x) twist^(t_n); the trace of that
operator is the link invariant, streamed column by column.

Padded generators and twist powers are memoized per kit, so repeated
traces (the Markov harness) never rebuild them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .algebra import CheckResult, ValidationReport
from .braiding import BraidingKit
from .braids import FramedBraidWord, MarkovTrace, normalize, random_markov_equivalent
from .tensor import SparseOperator, compose_chain, tensor_chain


class DimensionCapError(RuntimeError):
    """Operator dimension exceeds the configured cap."""


@dataclass
class InvariantResult:
    value: object
    value_text: str
    algebra: str
    word: FramedBraidWord
    strands: int
    operator_dim: int
    timing_ms: int


def _padded(kit: BraidingKit, name: str, base: SparseOperator, strand: int, n: int) -> SparseOperator:
    """base acting on strand `strand` of n, identity elsewhere (memoized)."""
    key = ("pad", name, strand, n)
    op = kit.cache.get(key)
    if op is None:
        left = 2 * (strand - 1)
        right = 2 * n - left - base.in_rank
        factors = []
        if left:
            factors.append(SparseOperator.identity(left, kit.dim, kit.field))
        factors.append(base)
        if right:
            factors.append(SparseOperator.identity(right, kit.dim, kit.field))
        op = tensor_chain(factors) if len(factors) > 1 else factors[0]
        kit.cache[key] = op
    return op


def crossing_operator(kit: BraidingKit, index: int, sign: int, n: int) -> SparseOperator:
    base = kit.braiding if sign > 0 else kit.braiding_inv
    return _padded(kit, "braiding+" if sign > 0 else "braiding-", base, index, n)


def twist_power(kit: BraidingKit, exponent: int) -> SparseOperator:
    """twist^exponent on X^2, materialized and memoized."""
    key = ("twistpow", exponent)
    op = kit.cache.get(key)
    if op is None:
        if exponent == 0:
            op = SparseOperator.identity(2, kit.dim, kit.field)
        else:
            base = kit.twist if exponent > 0 else kit.twist_inv
            step = exponent - 1 if exponent > 0 else exponent + 1
            op = base.compose(twist_power(kit, step), cache=False).materialized() if step else base
        kit.cache[key] = op
    return op


def framing_block(kit: BraidingKit, framings: tuple[int, ...]) -> SparseOperator:
    key = ("framing-block", framings)
    op = kit.cache.get(key)
    if op is None:
        op = tensor_chain([twist_power(kit, f) for f in framings])
        kit.cache[key] = op
    return op


def representation(kit: BraidingKit, word: FramedBraidWord) -> SparseOperator:
    """The operator on X^(2n) represented by a normalized framed word."""
    if not word.is_normalized:
        raise ValueError("word is not normalized; call normalize() first")
    n = word.strands
    ops = []
    for kind, index, exp in word.letters:
        gen = crossing_operator(kit, index, 1 if exp > 0 else -1, n)
        ops.extend([gen] * abs(exp))
    if any(word.framings):
        ops.append(framing_block(kit, word.framings))
    if not ops:
        return SparseOperator.identity(2 * n, kit.dim, kit.field)
    return compose_chain(ops, cache=False)


def trace_invariant(kit: BraidingKit, word: FramedBraidWord, cap: int = 10**6) -> InvariantResult:
    """Exact trace of the represented operator (the link invariant)."""
    word = normalize(word)
    operator_dim = kit.dim ** (2 * word.strands)
    if operator_dim > cap:
        raise DimensionCapError(
            f"operator dimension {operator_dim} exceeds cap {cap}; "
            "consider a prime field, fewer strands, or a larger --cap"
        )
    start = time.monotonic()
    value = representation(kit, word).trace()
    elapsed = int((time.monotonic() - start) * 1000)
    return InvariantResult(
        value=value,
        value_text=kit.field.render(value),
        algebra=kit.algebra.name,
        word=word,
        strands=word.strands,
        operator_dim=operator_dim,
        timing_ms=elapsed,
    )


# --------------------------------------------------------------------------
# Defining relations of the framed braid group, as operator identities


def _compare(name: str, lhs: SparseOperator, rhs: SparseOperator) -> CheckResult:
    witness = lhs.diff_witness(rhs)
    if witness is None:
        return CheckResult(name, True, f"{lhs.dim ** lhs.in_rank} columns")
    idx, residual = witness
    return CheckResult(name, False, witness=idx, residual=residual)


def check_framed_braid_relations(kit: BraidingKit, n: int = 3) -> ValidationReport:
    """Braid relation, twist commutations and twist-crossing pushes on X^(2n)."""
    key = ("fb-relations", n)
    cached = kit.cache.get(key)
    if cached is not None:
        return cached
    report = ValidationReport()
    sigma = [crossing_operator(kit, i, 1, n) for i in range(1, n)]
    tw = [_padded(kit, "twist", kit.twist, i, n) for i in range(1, n + 1)]
    for i in range(len(sigma) - 1):
        report.add(
            _compare(
                f"braid-relation[s{i + 1},s{i + 2}]",
                compose_chain([sigma[i], sigma[i + 1], sigma[i]], cache=False),
                compose_chain([sigma[i + 1], sigma[i], sigma[i + 1]], cache=False),
            )
        )
    for i in range(n):
        for j in range(i + 1, n):
            report.add(
                _compare(
                    f"twist-commute[t{i + 1},t{j + 1}]",
                    tw[i].compose(tw[j], cache=False),
                    tw[j].compose(tw[i], cache=False),
                )
            )
    for i in range(1, n + 1):
        for j in range(1, n):
            image = j + 1 if i == j else j if i == j + 1 else i
            report.add(
                _compare(
                    f"twist-push[t{i},s{j}]",
                    tw[i - 1].compose(sigma[j - 1], cache=False),
                    sigma[j - 1].compose(tw[image - 1], cache=False),
                )
            )
    kit.cache[key] = report
    return report


# --------------------------------------------------------------------------
# Markov harness


@dataclass
class TrialResult:
    seed: int
    word: FramedBraidWord
    log: MarkovTrace
    value: object
    value_text: str
    equal: bool


@dataclass
class MarkovReport:
    algebra: str
    base: InvariantResult
    trials: list[TrialResult]
    relations: ValidationReport
    stabilize: str

    @property
    def all_equal(self) -> bool:
        return all(t.equal for t in self.trials)

    @property
    def passed(self) -> bool:
        # Stabilization equality is reported, never asserted.
        return self.relations.passed and (self.stabilize != "off" or self.all_equal)

    def verdict(self) -> str:
        equal = sum(t.equal for t in self.trials)
        kind = "stabilized " if self.stabilize != "off" else ""
        return f"{equal}/{len(self.trials)} {kind}trials matched the base trace"

    def lines(self) -> list[str]:
        out = [
            f"base trace ({self.algebra}, {self.base.word.word_text() or 'empty'} "
            f"| framings {self.base.word.framings}): {self.base.value_text}",
        ]
        for t in self.trials:
            status = "equal" if t.equal else "UNEQUAL"
            out.append(
                f"  trial seed={t.seed} moves={len(t.log.moves)} strands={t.word.strands}: "
                f"{t.value_text} [{status}]"
            )
        out.append(self.verdict())
        out.extend(self.relations.lines())
        return out


def markov_report(
    kit: BraidingKit,
    word: FramedBraidWord,
    trials: int,
    seed: int,
    moves: int = 6,
    stabilize: str = "off",
    cap: int = 10**6,
) -> MarkovReport:
    """Seeded rewriting trials with exact trace comparison.

    Also checks the framed-braid-group defining relations as operator
    identities on three strands (memoized per kit).  With stabilization
    requested, each trial gains a strand; those traces are reported but
    never asserted equal.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    base_word = normalize(word)
    base = trace_invariant(kit, base_word, cap=cap)
    master = random.Random(seed)
    results: list[TrialResult] = []
    for _ in range(trials):
        sub_seed = master.randrange(2**32)
        rewritten, log = random_markov_equivalent(base_word, sub_seed, moves, stabilize=stabilize)
        value = trace_invariant(kit, rewritten, cap=cap).value
        results.append(
            TrialResult(sub_seed, rewritten, log, value, kit.field.render(value), value == base.value)
        )
    relations = check_framed_braid_relations(kit, n=3)
    return MarkovReport(kit.algebra.name, base, results, relations, stabilize)


# --------------------------------------------------------------------------
# Regression fixture lines: name<TAB>word<TAB>framings<TAB>value


def fixture_line(name: str, word_text: str, framings: tuple[int, ...], value_text: str) -> str:
    return "\t".join([name, word_text, ",".join(map(str, framings)), value_text])


def parse_fixture_file(text: str) -> list[tuple[str, str, tuple[int, ...], str]]:
    records = []
    for line in text.splitlines():
        line = line.strip("\n")
        if not line or line.startswith("#"):
            continue
        name, word_text, framings, value_text = line.split("\t")
        framing_tuple = tuple(int(f) for f in framings.split(",")) if framings else ()
        records.append((name, word_text, framing_tuple, value_text))
    return records
