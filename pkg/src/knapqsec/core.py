"""Knapsack instances over Z_r, bit-vector conventions and reference solvers.

Bit convention used across the package: an n-bit vector (x_1, ..., x_n)
maps to the integer x = sum(2**(n - i) * x_i), so x_1 is the most
significant bit and is paired with b_1.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateVector,
    EmptyVector,
    InstanceTooLarge,
    MalformedInstance,
    ModulusTooSmall,
    ResidueOutOfRange,
)

GUARD_ENV = "KNAPQSEC_GUARD_N"

BRUTE_FORCE_MAX_N = 30
MITM_MAX_N = 40
EXTENDED_MAX_N = 12

# numpy int64 is safe while 4 * r stays below 2**63
_INT64_SAFE_MODULUS = 1 << 60
_CHUNK_BITS = 20


def guard(default: int) -> int:
    """Effective enumeration limit; ``KNAPQSEC_GUARD_N`` can only raise it."""
    raw = os.environ.get(GUARD_ENV)
    if not raw:
        return default
    try:
        override = int(raw)
    except ValueError:
        return default
    return max(default, override)


def check_guard(n: int, default: int, what: str) -> None:
    limit = guard(default)
    if n > limit:
        raise InstanceTooLarge(
            f"{what}: n={n} exceeds enumeration guard {limit} (set {GUARD_ENV} to raise it)"
        )


@dataclass(frozen=True)
class BitVector:
    value: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("bit vector width must be >= 1")
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        value = 0
        for bit in bits:
            if bit not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {bit!r}")
            value = (value << 1) | bit
        return cls(value, len(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.n - i)) & 1 for i in range(1, self.n + 1))

    def weight(self) -> int:
        return bin(self.value).count("1")

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError("width mismatch")
        return BitVector(self.value ^ other.value, self.n)

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")


@dataclass(frozen=True)
class ExtendedVector:
    coeffs: tuple[int, ...]

    ALPHABET = (-1, 0, 1, 2)

    def __post_init__(self):
        bad = [c for c in self.coeffs if c not in self.ALPHABET]
        if bad:
            raise ValueError(f"extended coefficients must lie in {{-1,0,1,2}}, got {bad}")


@dataclass(frozen=True)
class KnapsackInstance:
    """Residues ``b`` and target ``s`` modulo ``r``. Build with :func:`new_instance`."""

    b: tuple[int, ...]
    s: int
    r: int

    @property
    def n(self) -> int:
        return len(self.b)

    def weighted_sum(self, x: BitVector | int) -> int:
        """sum(x_i * b_i) mod r."""
        value = x.value if isinstance(x, BitVector) else x
        n = self.n
        return sum(bi for i, bi in enumerate(self.b) if (value >> (n - 1 - i)) & 1) % self.r

    def is_solution(self, x: BitVector | int) -> bool:
        return self.weighted_sum(x) == self.s

    def to_json(self) -> dict[str, Any]:
        return {"r": self.r, "s": self.s, "b": list(self.b)}


def new_instance(b: Iterable[int], s: int, r: int) -> KnapsackInstance:
    b = tuple(int(v) for v in b)
    if r < 2:
        raise ModulusTooSmall(f"modulus r={r} must be >= 2", field="r")
    if not b:
        raise EmptyVector("knapsack vector must have at least one entry", field="b")
    for i, bi in enumerate(b):
        if not 0 <= bi < r:
            raise ResidueOutOfRange(f"b[{i}]={bi} is not in [0, {r})", field="b")
    if not 0 <= s < r:
        raise ResidueOutOfRange(f"s={s} is not in [0, {r})", field="s")
    return KnapsackInstance(b, int(s), int(r))


def instance_from_json(doc: Any) -> KnapsackInstance:
    """Parse ``{"r": .., "s": .., "b": [..]}``; errors name the failing field."""
    if not isinstance(doc, dict):
        raise MalformedInstance("instance must be a JSON object", field=None)
    for key in ("r", "s", "b"):
        if key not in doc:
            raise MalformedInstance(f"missing field {key!r}", field=key)
    for key in ("r", "s"):
        if not _is_uint(doc[key]):
            raise MalformedInstance(f"field {key!r} must be a non-negative integer", field=key)
    if not isinstance(doc["b"], list) or not all(_is_uint(v) for v in doc["b"]):
        raise MalformedInstance("field 'b' must be a list of non-negative integers", field="b")
    return new_instance(doc["b"], doc["s"], doc["r"])


def _is_uint(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 0


def _dtype_for(r: int):
    return np.int64 if r < _INT64_SAFE_MODULUS else object


@lru_cache(maxsize=256)
def _subset_sums_cached(b: tuple[int, ...], r: int) -> np.ndarray:
    sums = np.zeros(1, dtype=_dtype_for(r))
    # last coordinate is the least significant bit, so it is doubled in first
    for bi in reversed(b):
        sums = np.concatenate([sums, (sums + bi) % r])
    sums.setflags(write=False)
    return sums


def subset_sums(b: Sequence[int], r: int) -> np.ndarray:
    """Array ``t`` with ``t[x] = sum(x_i b_i) mod r`` for every x in [0, 2**n)."""
    return _subset_sums_cached(tuple(b), r)


def brute_force_solutions(inst: KnapsackInstance) -> list[BitVector]:
    """Every x in {0,1}^n with sum(x_i b_i) = s (mod r), ascending by value."""
    n = inst.n
    check_guard(n, BRUTE_FORCE_MAX_N, "brute_force_solutions")
    low_bits = min(n, _CHUNK_BITS)
    high = inst.b[: n - low_bits]
    low_sums = subset_sums(inst.b[n - low_bits :], inst.r)
    high_sums = subset_sums(high, inst.r) if high else np.zeros(1, dtype=low_sums.dtype)
    found: list[BitVector] = []
    for hv, hs in enumerate(high_sums):
        hits = np.flatnonzero((low_sums + hs) % inst.r == inst.s)
        found.extend(BitVector((hv << low_bits) | int(lv), n) for lv in hits)
    return found


def meet_in_the_middle_solutions(inst: KnapsackInstance) -> list[BitVector]:
    """Same result as :func:`brute_force_solutions` in O(n 2^(n/2)) time.

    The leading half of ``b`` is tabulated and sorted; for every residue ``v``
    of the trailing half, all leading sums equal to ``(s - v) mod r`` are
    located by binary search, so duplicate sums keep their multiplicity.
    """
    n = inst.n
    check_guard(n, MITM_MAX_N, "meet_in_the_middle_solutions")
    r = inst.r
    split = n // 2
    tail_bits = n - split
    lead = subset_sums(inst.b[:split], r) if split else np.zeros(1, dtype=_dtype_for(r))
    tail = subset_sums(inst.b[split:], r)

    order = np.argsort(lead, kind="stable")
    lead_sorted = lead[order]
    targets = (inst.s - tail) % r
    lo = np.searchsorted(lead_sorted, targets, side="left")
    hi = np.searchsorted(lead_sorted, targets, side="right")

    values: list[int] = []
    for tv in np.flatnonzero(hi > lo):
        for li in order[lo[tv] : hi[tv]]:
            values.append((int(li) << tail_bits) | int(tv))
    values.sort()
    return [BitVector(v, n) for v in values]


@lru_cache(maxsize=256)
def _extended_table(b: tuple[int, ...], r: int) -> dict[int, int]:
    counts = {0: 1}
    for bi in b:
        nxt: dict[int, int] = {}
        for residue, c in counts.items():
            for coeff in ExtendedVector.ALPHABET:
                key = (residue + coeff * bi) % r
                nxt[key] = nxt.get(key, 0) + c
        counts = nxt
    return counts


def count_extended_solutions(b: Sequence[int], s_prime: int, r: int) -> int:
    """Number of x' in {-1,0,1,2}^n with sum(x'_i b_i) = s' (mod r).

    Counted by a residue-class convolution rather than listing all 4**n
    vectors; the guard still follows the enumeration cost model.
    """
    if r < 2:
        raise ModulusTooSmall(f"modulus r={r} must be >= 2", field="r")
    check_guard(len(b), EXTENDED_MAX_N, "count_extended_solutions")
    return _extended_table(tuple(int(v) % r for v in b), r).get(s_prime % r, 0)


def density(b: Sequence[int]) -> float:
    """n / log2(max b_i)."""
    top = max(b) if len(b) else 0
    if top < 2:
        raise DegenerateVector(f"max b_i = {top}; density needs max b_i >= 2")
    return len(b) / math.log2(top)
