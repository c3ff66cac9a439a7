"""Exact classical simulation of the oracle-based knapsack quantum algorithm.

After the Fourier layer and the oracle the register holds the uniform
superposition over (a, x, y, z), each basis state tagged with
G(a, x, y, z) in its last register. Every later step is a projective
measurement, so the whole run is characterised by counting basis states.
Nothing here builds a state vector: the counts are assembled from the
residue classes of the subset sums W(v) = sum(v_i b_i) mod r.

    f(x, y) = 2 W(x ^ y) + S - W(x)   (mod r)
    g(z)    = 2 W(z)                  (mod r)
    h(u, v) = 2 W(u ^ v)              (mod r)
    G(a, x, y, z) = f(x, y) if a == 0 else h(x, z)
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional

import numpy as np

from .core import (
    BitVector,
    KnapsackInstance,
    brute_force_solutions,
    check_guard,
    count_extended_solutions,
    subset_sums,
)
from .errors import WidthMismatch

SIM_MAX_N = 12
VERIFY_T1_MAX_N = 10
VERIFY_C1_MAX_N = 6

_MASK64 = (1 << 64) - 1
_GOLDEN64 = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    z = (state + _GOLDEN64) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_seed(seed: int, index: int) -> int:
    """Sub-seed for trial ``index``: splitmix64 of the index-th golden-ratio step."""
    return splitmix64((seed + index * _GOLDEN64) & _MASK64)


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- oracles ---------------------------------------------------------------


def _require_width(inst: KnapsackInstance, *vectors: BitVector) -> None:
    for v in vectors:
        if v.n != inst.n:
            raise WidthMismatch(f"register width {v.n} does not match n={inst.n}")


def oracle_f(x: BitVector, y: BitVector, inst: KnapsackInstance) -> int:
    _require_width(inst, x, y)
    return (2 * inst.weighted_sum(x ^ y) + inst.s - inst.weighted_sum(x)) % inst.r


def oracle_g(z: BitVector, inst: KnapsackInstance) -> int:
    _require_width(inst, z)
    return (2 * inst.weighted_sum(z)) % inst.r


def oracle_h(u: BitVector, v: BitVector, inst: KnapsackInstance) -> int:
    _require_width(inst, u, v)
    return (2 * inst.weighted_sum(u ^ v)) % inst.r


def oracle_G(a: int, x: BitVector, y: BitVector, z: BitVector, inst: KnapsackInstance) -> int:
    if a not in (0, 1):
        raise ValueError(f"flag bit must be 0 or 1, got {a!r}")
    _require_width(inst, x, y, z)
    return oracle_f(x, y, inst) if a == 0 else oracle_h(x, z, inst)


@dataclass(frozen=True)
class OracleInputs:
    a: int
    x: BitVector
    y: BitVector
    z: BitVector

    def __post_init__(self):
        if not self.x.n == self.y.n == self.z.n:
            raise WidthMismatch("x, y and z registers must share one width")

    def evaluate(self, inst: KnapsackInstance) -> int:
        return oracle_G(self.a, self.x, self.y, self.z, inst)


def register_widths(inst: KnapsackInstance) -> tuple[int, int, int, int, int]:
    """Widths of the five registers; the last one holds a reduced residue."""
    n = inst.n
    return (1, n, n, n, max(1, math.ceil(math.log2(inst.r))))


# -- counting tables -------------------------------------------------------


@dataclass
class _Tables:
    n: int
    sums: np.ndarray
    members: dict[int, np.ndarray]  # residue W -> all v with W(v) = residue
    f_pairs: dict[int, tuple[list[tuple[int, int]], list[int]]]  # A -> (class pairs, cumulative weights)
    f_count: dict[int, int]  # t'(A) = |{(x, y): f = A}|
    f_solution_count: dict[int, int]  # |{(x, y): f = A, x a solution}|
    h_count: dict[int, int]  # t(A) = |{(x, z): h = A}|
    outcomes: list[int] = field(default_factory=list)  # reachable A, ascending
    cumulative: list[int] = field(default_factory=list)  # running N0 + N1 over outcomes


@lru_cache(maxsize=64)
def _tables(inst: KnapsackInstance) -> _Tables:
    n, r, s = inst.n, inst.r, inst.s
    sums = subset_sums(inst.b, r)
    residues, inverse = np.unique(sums, return_inverse=True)
    order = np.argsort(inverse, kind="stable")
    sizes = np.bincount(inverse, minlength=len(residues))
    splits = np.cumsum(sizes)[:-1]
    members = {int(res): grp for res, grp in zip(residues, np.split(order, splits))}
    size_of = {int(res): int(c) for res, c in zip(residues, sizes)}

    f_pairs: dict[int, tuple[list[tuple[int, int]], list[int]]] = {}
    f_count: dict[int, int] = {}
    f_solution_count: dict[int, int] = {}
    # (x, y) <-> (x, w = x ^ y) is a bijection, and f depends on W(x), W(w) only
    for wx, cx in size_of.items():
        for ww, cw in size_of.items():
            A = (2 * ww + s - wx) % r
            weight = cx * cw
            pairs, cum = f_pairs.setdefault(A, ([], []))
            pairs.append((wx, ww))
            cum.append((cum[-1] if cum else 0) + weight)
            f_count[A] = f_count.get(A, 0) + weight
            if wx == s:
                f_solution_count[A] = f_solution_count.get(A, 0) + weight

    size = 1 << n
    h_count: dict[int, int] = {}
    for ww, cw in size_of.items():
        A = (2 * ww) % r
        # every x pairs with exactly one z per w = x ^ z
        h_count[A] = h_count.get(A, 0) + size * cw

    tables = _Tables(n, sums, members, f_pairs, f_count, f_solution_count, h_count)
    running = 0
    for A in sorted(set(f_count) | set(h_count)):
        running += size * (f_count.get(A, 0) + h_count.get(A, 0))
        tables.outcomes.append(A)
        tables.cumulative.append(running)
    return tables


@dataclass(frozen=True)
class OutcomeDistribution:
    """Branch counts N0(A), N1(A) over the 2**(3n+1) basis states."""

    n: int
    counts: dict[int, tuple[int, int]]

    @property
    def total(self) -> int:
        return 1 << (3 * self.n + 1)

    def prob(self, A: int) -> Fraction:
        n0, n1 = self.counts.get(A, (0, 0))
        return Fraction(n0 + n1, self.total)

    def p_a0_given(self, A: int) -> Fraction:
        n0, n1 = self.counts[A]
        return Fraction(n0, n0 + n1)

    def outcomes(self) -> list[int]:
        return sorted(self.counts)

    def to_json(self) -> list[dict[str, Any]]:
        rows = []
        for A in self.outcomes():
            n0, n1 = self.counts[A]
            p1 = self.p_a0_given(A)
            pa = self.prob(A)
            rows.append({
                "A": A, "N0": n0, "N1": n1,
                "p_A": fraction_str(pa), "p_A_float": float(pa),
                "p1": fraction_str(p1), "p1_float": float(p1),
            })
        return rows


def exact_distribution(inst: KnapsackInstance) -> OutcomeDistribution:
    check_guard(inst.n, SIM_MAX_N, "exact_distribution")
    t = _tables(inst)
    size = 1 << inst.n
    counts = {
        A: (size * t.f_count.get(A, 0), size * t.h_count.get(A, 0)) for A in t.outcomes
    }
    return OutcomeDistribution(inst.n, counts)


# -- sampled runs ----------------------------------------------------------


@dataclass(frozen=True)
class RunOutcome:
    """One simulated run. ``status`` is Success, FailureAtStep4 or FailureAtStep6."""

    status: str
    A: int
    a: int
    x: Optional[BitVector] = None
    y: Optional[BitVector] = None

    SUCCESS = "Success"
    FAILURE_STEP4 = "FailureAtStep4"
    FAILURE_STEP6 = "FailureAtStep6"

    @property
    def success(self) -> bool:
        return self.status == self.SUCCESS

    @property
    def m(self) -> Optional[BitVector]:
        return self.x if self.success else None

    def transcript(self) -> tuple:
        return (self.status, self.A, self.a,
                None if self.x is None else self.x.value,
                None if self.y is None else self.y.value)


def _pick(rng: random.Random, cumulative: list[int]) -> int:
    return bisect.bisect_right(cumulative, rng.randrange(cumulative[-1]))


def run_once(inst: KnapsackInstance, seed: int) -> RunOutcome:
    """Measure the last register, then the flag, then (x, y), then check x."""
    check_guard(inst.n, SIM_MAX_N, "run_once")
    t = _tables(inst)
    rng = random.Random(seed)
    size = 1 << inst.n

    A = t.outcomes[_pick(rng, t.cumulative)]
    n0 = size * t.f_count.get(A, 0)
    n1 = size * t.h_count.get(A, 0)
    a = 0 if rng.randrange(n0 + n1) < n0 else 1
    if a == 1:
        return RunOutcome(RunOutcome.FAILURE_STEP4, A, a)

    pairs, cum = t.f_pairs[A]
    wx, ww = pairs[_pick(rng, cum)]
    xs, ws = t.members[wx], t.members[ww]
    x = int(xs[rng.randrange(len(xs))])
    w = int(ws[rng.randrange(len(ws))])
    xv, yv = BitVector(x, inst.n), BitVector(x ^ w, inst.n)
    status = RunOutcome.SUCCESS if inst.is_solution(xv) else RunOutcome.FAILURE_STEP6
    return RunOutcome(status, A, a, xv, yv)


def success_probability_exact(inst: KnapsackInstance) -> Fraction:
    """Sum over A of P(A) * P(a=0 | A) * P(x is a solution | A, a=0).

    Algebraically this collapses to k / 2**(n+1) for k solutions.
    """
    dist = exact_distribution(inst)
    t = _tables(inst)
    total = Fraction(0)
    for A in dist.outcomes():
        tp = t.f_count.get(A, 0)
        if tp == 0:
            continue
        total += dist.prob(A) * dist.p_a0_given(A) * Fraction(t.f_solution_count.get(A, 0), tp)
    return total


@dataclass(frozen=True)
class MonteCarloEstimate:
    successes: int
    trials: int
    seed: int
    z: float

    @property
    def frequency(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.frequency
        return math.sqrt(p * (1 - p) / self.trials)

    @property
    def interval(self) -> tuple[float, float]:
        """Wilson score interval at ``z`` standard deviations."""
        n, p, z = self.trials, self.frequency, self.z
        denom = 1 + z * z / n
        centre = (p + z * z / (2 * n)) / denom
        half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
        return max(0.0, centre - half), min(1.0, centre + half)

    def to_json(self) -> dict[str, Any]:
        lo, hi = self.interval
        return {"trials": self.trials, "successes": self.successes, "seed": self.seed,
                "frequency": self.frequency, "stderr": self.stderr, "z": self.z,
                "ci_low": lo, "ci_high": hi}


def estimate_success_probability(
    inst: KnapsackInstance, trials: int, seed: int, z: float = 3.0
) -> MonteCarloEstimate:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    check_guard(inst.n, SIM_MAX_N, "estimate_success_probability")
    hits = sum(run_once(inst, trial_seed(seed, i)).success for i in range(trials))
    return MonteCarloEstimate(hits, trials, seed, z)


# -- the published probability claims, checked rather than assumed ---------


@dataclass(frozen=True)
class BoundRow:
    A: int
    N0: int
    N1: int
    t: int  # |{(x, z): h(x, z) = A}|
    t_prime: int  # |{(x, y): f(x, y) = A}|
    t_ext: int  # extended-knapsack solutions of A - S
    solutions: int  # |{(x, y): f = A, x is a solution}|
    p1: Fraction
    p2: Optional[Fraction]
    p2_claimed: Optional[Fraction]  # k / t'
    bound: Optional[Fraction]  # k / (2 t')

    @property
    def p1_claim_holds(self) -> bool:
        return self.p1 > Fraction(1, 2)

    @property
    def conditional_success(self) -> Fraction:
        return self.p1 * (self.p2 or 0)

    @property
    def bound_holds(self) -> Optional[bool]:
        return None if self.bound is None else self.conditional_success >= self.bound

    @property
    def counts_within_extended(self) -> bool:
        return self.t <= self.t_ext and self.t_prime <= self.t_ext

    def to_json(self) -> dict[str, Any]:
        def q(v):
            return None if v is None else fraction_str(v)

        def fl(v):
            return None if v is None else float(v)

        return {
            "A": self.A, "N0": self.N0, "N1": self.N1,
            "t": self.t, "t_prime": self.t_prime, "t_ext": self.t_ext,
            "solutions": self.solutions,
            "p1": q(self.p1), "p1_float": fl(self.p1), "p1_claim_holds": self.p1_claim_holds,
            "p2": q(self.p2), "p2_float": fl(self.p2),
            "p2_claimed": q(self.p2_claimed),
            "bound": q(self.bound), "bound_holds": self.bound_holds,
            "counts_within_extended": self.counts_within_extended,
        }


@dataclass(frozen=True)
class BoundReport:
    k: int
    success_probability: Fraction
    rows: list[BoundRow]

    @property
    def p1_claim_violations(self) -> list[int]:
        return [row.A for row in self.rows if not row.p1_claim_holds]

    @property
    def bound_violations(self) -> list[int]:
        return [row.A for row in self.rows if row.bound_holds is False]

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "success_probability": fraction_str(self.success_probability),
            "success_probability_float": float(self.success_probability),
            "p1_claim_violations": self.p1_claim_violations,
            "bound_violations": self.bound_violations,
            "rows": [row.to_json() for row in self.rows],
        }


def paper_bound_report(inst: KnapsackInstance) -> BoundReport:
    """Per-outcome P1, P2 and the claimed inequalities, recorded but never enforced."""
    dist = exact_distribution(inst)
    t = _tables(inst)
    k = len(brute_force_solutions(inst))
    rows = []
    for A in dist.outcomes():
        n0, n1 = dist.counts[A]
        tp = t.f_count.get(A, 0)
        sol = t.f_solution_count.get(A, 0)
        rows.append(BoundRow(
            A=A, N0=n0, N1=n1,
            t=t.h_count.get(A, 0), t_prime=tp,
            t_ext=count_extended_solutions(inst.b, (A - inst.s) % inst.r, inst.r),
            solutions=sol,
            p1=dist.p_a0_given(A),
            p2=Fraction(sol, tp) if tp else None,
            p2_claimed=Fraction(k, tp) if tp else None,
            bound=Fraction(k, 2 * tp) if tp else None,
        ))
    return BoundReport(k, success_probability_exact(inst), rows)


# -- exhaustive checks of the collision characterisation --------------------


@dataclass(frozen=True)
class Verification:
    holds: bool
    checked: int
    counterexamples: list[tuple[int, ...]]


def _solution_mask(inst: KnapsackInstance) -> np.ndarray:
    mask = np.zeros(1 << inst.n, dtype=bool)
    mask[[m.value for m in brute_force_solutions(inst)]] = True
    return mask


def verify_theorem1(inst: KnapsackInstance, limit: int = 10) -> Verification:
    """f(x, y) == g(x ^ y)  <=>  x is a solution and y == (x ^ y) ^ x, over all (x, y)."""
    check_guard(inst.n, VERIFY_T1_MAX_N, "verify_theorem1")
    r, s = inst.r, inst.s
    w = subset_sums(inst.b, r)
    size = 1 << inst.n
    x, y = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    z = x ^ y
    f = (2 * w[z] + s - w[x]) % r
    g = (2 * w[z]) % r
    rhs = _solution_mask(inst)[x] & (y == (z ^ x))
    bad = np.argwhere((f == g) != rhs)
    examples = [(int(x[i, j]), int(y[i, j])) for i, j in bad[:limit]]
    return Verification(len(bad) == 0, size * size, examples)


def verify_corollary1(inst: KnapsackInstance, limit: int = 10) -> Verification:
    """Over all (x, y, u, v) with u ^ v == x ^ y:
    f(x, y) == h(u, v)  <=>  x is a solution and y == u ^ v ^ x."""
    check_guard(inst.n, VERIFY_C1_MAX_N, "verify_corollary1")
    r, s = inst.r, inst.s
    w = subset_sums(inst.b, r)
    size = 1 << inst.n
    x, y, u = np.meshgrid(np.arange(size), np.arange(size), np.arange(size), indexing="ij")
    v = u ^ x ^ y
    f = (2 * w[x ^ y] + s - w[x]) % r
    h = (2 * w[u ^ v]) % r
    rhs = _solution_mask(inst)[x] & (y == (u ^ v ^ x))
    bad = np.argwhere((f == h) != rhs)
    examples = [
        (int(x[idx]), int(y[idx]), int(u[idx]), int(v[idx])) for idx in map(tuple, bad[:limit])
    ]
    return Verification(len(bad) == 0, size ** 3, examples)


# -- resource accounting ---------------------------------------------------


@dataclass(frozen=True)
class ResourceEstimate:
    n: int
    qft_gate_count: int
    adder_count: int
    adder_width: int
    total_elementary_gates: int

    def to_json(self) -> dict[str, int]:
        return {
            "n": self.n, "qft_gate_count": self.qft_gate_count,
            "adder_count": self.adder_count, "adder_width": self.adder_width,
            "total_elementary_gates": self.total_elementary_gates,
        }


def resource_estimate(n: int) -> ResourceEstimate:
    """Unit-constant gate tally: QFTs cost width**2, each adder costs width**2.

    One 1-wide and three n-wide QFTs prepare the superposition; the oracle
    uses 2n + 1 adders of width n + ceil(log2 n) + 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    qft = 1 + 3 * n * n
    adders = 2 * n + 1
    width = n + math.ceil(math.log2(n)) + 1
    return ResourceEstimate(n, qft, adders, width, qft + adders * width * width)
