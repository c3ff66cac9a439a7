"""Arithmetic in F_{p^h} = Z_p[x] / (f(x)) and discrete logarithms there.

Polynomials are coefficient tuples, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..errors import (
    BadParameters,
    DegreeOverflow,
    FactoringBudgetExceeded,
    NotMonic,
    ZeroElement,
)
from ..ntheory import DEFAULT_RHO_BUDGET, Factorization, factor_power_minus_one, is_prime

Coeffs = tuple[int, ...]


def _trim(coeffs: Iterable[int], p: int) -> Coeffs:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PrimeFieldPoly:
    """A polynomial over Z_p; coefficients are reduced and trimmed on creation."""

    coeffs: Coeffs
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs, self.p))

    @classmethod
    def constant(cls, c: int, p: int) -> "PrimeFieldPoly":
        return cls((c,), p)

    @classmethod
    def monomial(cls, degree: int, p: int) -> "PrimeFieldPoly":
        return cls((0,) * degree + (1,), p)

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * t + c) % self.p
        return acc

    def __add__(self, other: "PrimeFieldPoly") -> "PrimeFieldPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PrimeFieldPoly(tuple(x + y for x, y in zip(a, b)), self.p)

    def __sub__(self, other: "PrimeFieldPoly") -> "PrimeFieldPoly":
        return self + PrimeFieldPoly(tuple(-c for c in other.coeffs), self.p)

    def __mul__(self, other: "PrimeFieldPoly") -> "PrimeFieldPoly":
        return PrimeFieldPoly(_mul(self.coeffs, other.coeffs, self.p), self.p)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            terms.append(f"{c}" if not mono else (mono if c == 1 else f"{c}{mono}"))
        return " + ".join(terms)


def _mul(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out, p)


def _divmod(a: Coeffs, b: Coeffs, p: int) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = rem[k + db] * inv_lead % p
        quot[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] = (rem[k + j] - c * bj) % p
    return _trim(quot, p), _trim(rem[:db], p)


def _mod(a: Coeffs, f: Coeffs, p: int) -> Coeffs:
    return a if len(a) < len(f) else _divmod(a, f, p)[1]


def _mulmod(a: Coeffs, b: Coeffs, f: Coeffs, p: int) -> Coeffs:
    return _mod(_mul(a, b, p), f, p)


def _powmod(a: Coeffs, e: int, f: Coeffs, p: int) -> Coeffs:
    result: Coeffs = (1,)
    base = _mod(a, f, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _mulmod(base, base, f, p)
    return _mod(result, f, p)


def _gcd(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    while b:
        a, b = b, _divmod(a, b, p)[1]
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return _trim((c * inv for c in a), p)


def poly_divmod(a: PrimeFieldPoly, b: PrimeFieldPoly) -> tuple[PrimeFieldPoly, PrimeFieldPoly]:
    q, r = _divmod(a.coeffs, b.coeffs, a.p)
    return PrimeFieldPoly(q, a.p), PrimeFieldPoly(r, a.p)


def poly_gcd(a: PrimeFieldPoly, b: PrimeFieldPoly) -> PrimeFieldPoly:
    """Monic gcd (zero only when both inputs are zero)."""
    return PrimeFieldPoly(_gcd(a.coeffs, b.coeffs, a.p), a.p)


def poly_mul_mod(a: PrimeFieldPoly, b: PrimeFieldPoly, f: PrimeFieldPoly, p: int) -> PrimeFieldPoly:
    """(a * b) mod f over Z_p for reduced operands of degree < deg f."""
    if not f.is_monic:
        raise NotMonic(f"modulus {f} is not monic")
    h = f.degree
    if a.degree >= h or b.degree >= h:
        raise DegreeOverflow(f"operands must have degree < {h}")
    return PrimeFieldPoly(_mulmod(a.coeffs, b.coeffs, f.coeffs, p), p)


def poly_pow_mod(a: PrimeFieldPoly, e: int, f: PrimeFieldPoly) -> PrimeFieldPoly:
    if e < 0:
        raise ValueError("negative exponent")
    return PrimeFieldPoly(_powmod(a.coeffs, e, f.coeffs, f.p), f.p)


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: PrimeFieldPoly, p: int) -> bool:
    """Rabin's test: x^(p^h) = x mod f and gcd(x^(p^(h/q)) - x, f) = 1 for primes q | h."""
    if not f.is_monic:
        raise NotMonic(f"{f} is not monic")
    h = f.degree
    if h < 1:
        raise BadParameters("irreducibility needs degree >= 1")
    if h == 1:
        return True
    fc = f.coeffs
    x: Coeffs = (0, 1)

    def frobenius_power(k: int) -> Coeffs:
        # x^(p^k) mod f by k successive p-th powers
        acc = _mod(x, fc, p)
        for _ in range(k):
            acc = _powmod(acc, p, fc, p)
        return acc

    if frobenius_power(h) != _mod(x, fc, p):
        return False
    for q in _prime_divisors(h):
        diff = PrimeFieldPoly(frobenius_power(h // q), p) - PrimeFieldPoly(x, p)
        if _gcd(fc, diff.coeffs, p) != (1,):
            return False
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise BadParameters(f"characteristic p={p} is not prime")


def random_irreducible(p: int, h: int, seed: int) -> PrimeFieldPoly:
    """Rejection-sample a random monic irreducible polynomial of degree h."""
    _require_prime(p)
    if h < 1:
        raise BadParameters("degree h must be >= 1")
    rng = random.Random(seed)
    while True:
        f = PrimeFieldPoly(tuple(rng.randrange(p) for _ in range(h)) + (1,), p)
        if is_irreducible(f, p):
            return f


class ExtensionField:
    """F_{p^h} with elements as :class:`PrimeFieldPoly` of degree < h."""

    def __init__(self, p: int, f: PrimeFieldPoly, budget: int = DEFAULT_RHO_BUDGET):
        _require_prime(p)
        if f.p != p:
            raise BadParameters("modulus polynomial lives over a different prime")
        if not f.is_monic:
            raise NotMonic(f"{f} is not monic")
        self.p = p
        self.f = f
        self.h = f.degree
        self.order = p**self.h  # field size q
        self.budget = budget
        self._factors: Optional[Factorization] = None

    @property
    def group_order(self) -> int:
        return self.order - 1

    @property
    def group_factors(self) -> Factorization:
        """Factorisation of q - 1; raises when the budget cannot complete it."""
        if self._factors is None:
            fac = factor_power_minus_one(self.p, self.h, self.budget)
            if not fac.complete:
                raise FactoringBudgetExceeded(
                    f"{self.p}^{self.h} - 1 not fully factored within budget {self.budget}"
                )
            self._factors = fac
        return self._factors

    def element(self, coeffs: Sequence[int]) -> PrimeFieldPoly:
        return PrimeFieldPoly(_mod(_trim(coeffs, self.p), self.f.coeffs, self.p), self.p)

    def one(self) -> PrimeFieldPoly:
        return PrimeFieldPoly((1,), self.p)

    def mul(self, a: PrimeFieldPoly, b: PrimeFieldPoly) -> PrimeFieldPoly:
        return PrimeFieldPoly(_mulmod(a.coeffs, b.coeffs, self.f.coeffs, self.p), self.p)

    def pow(self, a: PrimeFieldPoly, e: int) -> PrimeFieldPoly:
        if a.is_zero:
            return a if e else self.one()
        return PrimeFieldPoly(_powmod(a.coeffs, e % self.group_order, self.f.coeffs, self.p), self.p)

    def nonzero_elements(self) -> Iterable[PrimeFieldPoly]:
        for idx in range(1, self.order):
            digits = []
            for _ in range(self.h):
                idx, d = divmod(idx, self.p)
                digits.append(d)
            yield PrimeFieldPoly(tuple(digits), self.p)

    def random_nonzero(self, rng: random.Random) -> PrimeFieldPoly:
        while True:
            e = PrimeFieldPoly(tuple(rng.randrange(self.p) for _ in range(self.h)), self.p)
            if not e.is_zero:
                return e

    def is_primitive(self, g: PrimeFieldPoly) -> bool:
        if g.is_zero:
            return False
        n = self.group_order
        one = self.one()
        return all(self.pow(g, n // q) != one for q in self.group_factors.primes)

    def multiplicative_order(self, a: PrimeFieldPoly) -> int:
        if a.is_zero:
            raise ZeroElement("zero has no multiplicative order")
        order = self.group_order
        one = self.one()
        for q, e in self.group_factors.primes.items():
            for _ in range(e):
                if self.pow(a, order // q) == one:
                    order //= q
                else:
                    break
        return order


def find_primitive(p: int, h: int, f: PrimeFieldPoly, seed: int,
                   budget: int = DEFAULT_RHO_BUDGET) -> PrimeFieldPoly:
    """A random generator of F_{p^h}^*, found by sampling and order testing."""
    field = ExtensionField(p, f, budget)
    if field.h != h:
        raise BadParameters(f"f has degree {field.h}, expected {h}")
    field.group_factors
    rng = random.Random(seed)
    while True:
        g = field.random_nonzero(rng)
        if field.is_primitive(g):
            return g


def _bsgs(field: ExtensionField, base: PrimeFieldPoly, target: PrimeFieldPoly, order: int) -> int:
    m = math.isqrt(order - 1) + 1
    table: dict[Coeffs, int] = {}
    cur = field.one()
    for j in range(m):
        table.setdefault(cur.coeffs, j)
        cur = field.mul(cur, base)
    giant = field.pow(base, (-m) % order) if order > 1 else field.one()
    y = target
    for i in range(m + 1):
        j = table.get(y.coeffs)
        if j is not None:
            return (i * m + j) % order
        y = field.mul(y, giant)
    raise ValueError("target is not in the subgroup generated by the base")


def discrete_log(g: PrimeFieldPoly, e: PrimeFieldPoly, p: int, h: int, f: PrimeFieldPoly,
                 field: Optional[ExtensionField] = None) -> int:
    """Exponent a in [0, p^h - 1) with g^a = e (Pohlig-Hellman, BSGS per prime)."""
    field = field or ExtensionField(p, f)
    if field.h != h:
        raise BadParameters(f"f has degree {field.h}, expected {h}")
    e = field.element(e.coeffs)
    if e.is_zero:
        raise ZeroElement("logarithm of zero is undefined")
    n = field.group_order
    residues, moduli = [], []
    for q, k in field.group_factors.primes.items():
        qk = q**k
        cofactor = n // qk
        g_q = field.pow(g, cofactor)
        e_q = field.pow(e, cofactor)
        gamma = field.pow(g_q, qk // q)  # order q when g is primitive
        x = 0
        for step in range(k):
            shifted = field.mul(field.pow(g_q, (-x) % qk), e_q)
            digit = _bsgs(field, gamma, field.pow(shifted, q ** (k - 1 - step)), q)
            x += digit * q**step
        residues.append(x)
        moduli.append(qk)
    a = _crt(residues, moduli)
    if field.pow(g, a) != e:
        raise ValueError("g is not a primitive element; logarithm does not exist")
    return a


def discrete_log_naive(g: PrimeFieldPoly, e: PrimeFieldPoly, field: ExtensionField) -> int:
    """Exhaustive search; reference for small fields only."""
    e = field.element(e.coeffs)
    if e.is_zero:
        raise ZeroElement("logarithm of zero is undefined")
    cur = field.one()
    for a in range(field.group_order):
        if cur == e:
            return a
        cur = field.mul(cur, g)
    raise ValueError("element not reached; g is not primitive")


def _crt(residues: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        t = (r - x) * pow(m, -1, n) % n
        x += m * t
        m *= n
    return x % m
