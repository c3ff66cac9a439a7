"""Primality testing and budgeted integer factorisation."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# the first 13 prime bases make Miller-Rabin exact below this bound
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981

TRIAL_DIVISION_LIMIT = 10_000
DEFAULT_RHO_BUDGET = 2_000_000


def _miller_rabin(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Exact below ~3.3e24 (covers every 64-bit input); beyond that a
    Miller-Rabin test with 13 fixed and 24 seeded random bases."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if not all(_miller_rabin(n, a) for a in _SMALL_PRIMES):
        return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(24))


def _brent_rho(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One Pollard-Brent attempt. Returns (factor or None, iterations spent)."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g, q, r_len, spent = 1, 1, 1, 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r_len):
            y = (y * y + c) % n
        k = 0
        while k < r_len and g == 1:
            ys = y
            for _ in range(min(m, r_len - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            spent += min(m, r_len - k)
            g = math.gcd(q, n)
            k += m
            if spent >= budget and g == 1:
                return None, spent
        r_len *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), spent


@dataclass
class Factorization:
    """Prime factors found so far plus composite parts left unsplit."""

    n: int
    primes: dict[int, int] = field(default_factory=dict)
    unresolved: list[int] = field(default_factory=list)
    iterations: int = 0

    @property
    def complete(self) -> bool:
        return not self.unresolved

    def add_prime(self, p: int, e: int = 1) -> None:
        self.primes[p] = self.primes.get(p, 0) + e

    def distinct_primes(self) -> list[int]:
        return sorted(self.primes)


def factorize(n: int, budget: int = DEFAULT_RHO_BUDGET, seed: int = 0) -> Factorization:
    """Trial division up to ``TRIAL_DIVISION_LIMIT`` then Pollard-Brent rho.

    ``budget`` bounds the total number of rho iterations; composites that
    survive it are reported in ``unresolved`` instead of raising.
    """
    if n < 1:
        raise ValueError("can only factor positive integers")
    result = Factorization(n)
    rest = n
    for p in range(2, TRIAL_DIVISION_LIMIT):
        if p * p > rest:
            break
        while rest % p == 0:
            result.add_prime(p)
            rest //= p
    if rest == 1:
        return result

    rng = random.Random(seed)
    stack = [rest]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            result.add_prime(m)
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        factor = None
        while factor is None and result.iterations < budget:
            factor, spent = _brent_rho(m, budget - result.iterations, rng)
            result.iterations += spent
        if factor is None:
            result.unresolved.append(m)
            continue
        stack.extend([factor, m // factor])
    return result


def divisors_of(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def cyclotomic_values(p: int, h: int) -> dict[int, int]:
    """Phi_d(p) for each divisor d of h; their product is p**h - 1."""
    values: dict[int, int] = {}
    for d in divisors_of(h):
        v = p**d - 1
        for e in divisors_of(d)[:-1]:
            v //= values[e]
        values[d] = v
    return values


def factor_power_minus_one(p: int, h: int, budget: int = DEFAULT_RHO_BUDGET) -> Factorization:
    """Factor p**h - 1 by splitting into cyclotomic values first."""
    total = Factorization(p**h - 1)
    remaining = budget
    for value in cyclotomic_values(p, h).values():
        if value == 1:
            continue
        part = factorize(value, max(remaining, 0))
        remaining -= part.iterations
        total.iterations += part.iterations
        for q, e in part.primes.items():
            total.add_prime(q, e)
        total.unresolved.extend(part.unresolved)
    return total
