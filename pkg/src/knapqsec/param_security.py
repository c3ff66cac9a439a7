"""Parameter audits for Chor-Rivest (p, h) and generic knapsacks over Z_r.

All comparisons are exact integer or ``Fraction`` arithmetic. The
asymptotic thresholds O(2^p) and O(2^n) are instantiated with constant 1
and a strict inequality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .errors import DegenerateModulus
from .ntheory import DEFAULT_RHO_BUDGET, factor_power_minus_one, is_prime

GPF_BOUND = 10**13
FC_SIZE_LOW = 10**44
FC_SIZE_HIGH = 10**60
THRESHOLD_CONSTANT = 1

SATISFIED = "satisfied"
VIOLATED = "violated"
UNKNOWN = "unknown"


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def round_decimal(q: Fraction, places: int = 1) -> str:
    """Exact half-even rounding of a rational to ``places`` decimals."""
    scale = 10**places
    scaled = round(q * scale)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), scale)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


@dataclass(frozen=True)
class FiveConditions:
    p_prime: bool
    h_prime: bool
    h_le_p: bool
    h_in_11_31: bool
    size_window: bool

    @property
    def all_pass(self) -> bool:
        return all(self.to_json().values())

    def to_json(self) -> dict[str, bool]:
        return {
            "p_prime": self.p_prime, "h_prime": self.h_prime, "h_le_p": self.h_le_p,
            "h_in_11_31": self.h_in_11_31, "size_window": self.size_window,
        }


def check_fc(p: int, h: int) -> FiveConditions:
    size = p**h - 1
    return FiveConditions(
        p_prime=is_prime(p),
        h_prime=is_prime(h),
        h_le_p=h <= p,
        h_in_11_31=11 <= h <= 31,
        size_window=FC_SIZE_LOW < size < FC_SIZE_HIGH,
    )


@dataclass(frozen=True)
class GpfStatus:
    status: str
    bound: int
    greatest_known: Optional[int]
    factors: dict[int, int] = field(default_factory=dict)
    unresolved: list[int] = field(default_factory=list)
    iterations: int = 0

    def to_json(self) -> dict[str, Any]:
        return {
            "status": self.status, "bound": str(self.bound),
            "greatest_known_prime_factor": None if self.greatest_known is None else str(self.greatest_known),
            "factors": {str(q): e for q, e in sorted(self.factors.items())},
            "unresolved": [str(c) for c in self.unresolved],
            "rho_iterations": self.iterations,
        }


def gpf_bound_check(p: int, h: int, bound: int = GPF_BOUND,
                    budget: int = DEFAULT_RHO_BUDGET) -> GpfStatus:
    """Is the greatest prime factor of p^h - 1 at most ``bound``?

    Undecided composite parts make the answer ``unknown``, unless a found
    prime already exceeds the bound or every leftover part is itself at
    most the bound.
    """
    n = p**h - 1
    if n < 1:
        raise DegenerateModulus(f"p^h - 1 = {n} has no prime factors")
    fac = factor_power_minus_one(p, h, budget)
    top = max(fac.primes, default=None)
    if top is not None and top > bound:
        status = VIOLATED
    elif all(c <= bound for c in fac.unresolved):
        status = SATISFIED
    else:
        status = UNKNOWN
    return GpfStatus(status, bound, top, dict(fac.primes), list(fac.unresolved), fac.iterations)


def quantum_ratio(p: int, h: int) -> Fraction:
    """4^p / (p^h - 1), the mean extended-knapsack solution count per residue."""
    denom = p**h - 1
    if denom <= 0:
        raise DegenerateModulus(f"p^h - 1 = {denom}; ratio undefined")
    return Fraction(4**p, denom)


@dataclass(frozen=True)
class SecurityReport:
    p: int
    h: int
    fc: FiveConditions
    gpf: GpfStatus
    quantum_ratio: Fraction
    quantum_threshold: int
    quantum_secure: bool
    break_probability_bound: Optional[Fraction]

    @property
    def verdict(self) -> str:
        """secure / insecure / unknown; a failed check outranks an undecided one."""
        if not self.quantum_secure or not self.fc.all_pass or self.gpf.status == VIOLATED:
            return "insecure"
        if self.gpf.status == UNKNOWN:
            return "unknown"
        return "secure"

    def to_json(self) -> dict[str, Any]:
        bpb = self.break_probability_bound
        return {
            "scheme": "chor-rivest", "p": self.p, "h": self.h,
            "fc": self.fc.to_json(), "fc_all_pass": self.fc.all_pass,
            "gpf": self.gpf.to_json(),
            "quantum_ratio": fraction_str(self.quantum_ratio),
            "quantum_ratio_decimal": round_decimal(self.quantum_ratio, 1),
            "quantum_threshold": str(self.quantum_threshold),
            "threshold_rule": f"secure iff 4^p/(p^h-1) > {THRESHOLD_CONSTANT}*2^p (strict)",
            "quantum_secure": self.quantum_secure,
            "break_probability_bound": None if bpb is None else fraction_str(bpb),
            "break_probability_display": None if bpb is None else f"1/{round_decimal(1 / bpb, 1)}",
            "verdict": self.verdict,
        }


def chor_rivest_quantum_audit(p: int, h: int, budget: int = DEFAULT_RHO_BUDGET) -> SecurityReport:
    ratio = quantum_ratio(p, h)
    threshold = THRESHOLD_CONSTANT * 2**p
    # ratio > threshold  <=>  4^p > threshold * (p^h - 1)
    secure = 4**p > threshold * (p**h - 1)
    bound = None if secure else 1 / (2 * ratio)
    return SecurityReport(
        p, h, check_fc(p, h), gpf_bound_check(p, h, budget=budget),
        ratio, threshold, secure, bound,
    )


@dataclass(frozen=True)
class ZrVerdict:
    n: int
    r: int
    ratio: Fraction  # 4^n / r
    threshold: int  # 2^n
    secure: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "scheme": "knapsack-zr", "n": self.n, "r": str(self.r),
            "ratio": fraction_str(self.ratio), "ratio_decimal": round_decimal(self.ratio, 1),
            "threshold": str(self.threshold),
            "threshold_rule": f"secure iff r < {THRESHOLD_CONSTANT}*2^n (strict)",
            "secure": self.secure, "verdict": "secure" if self.secure else "insecure",
        }


def knapsack_zr_audit(n: int, r: int) -> ZrVerdict:
    if n < 1 or r < 2:
        raise ValueError("need n >= 1 and r >= 2")
    threshold = THRESHOLD_CONSTANT * 2**n
    # 4^n / r > 2^n  <=>  4^n > r * 2^n  <=>  r < 2^n
    return ZrVerdict(n, r, Fraction(4**n, r), threshold, 4**n > r * threshold)
