"""Chor-Rivest key generation, encryption and decryption."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any

from ..errors import BadParameters, MalformedCiphertext, MalformedKey
from ..ntheory import DEFAULT_RHO_BUDGET, is_prime
from .encoding import ConstantWeightVector, decode_message, encode_message
from .field import (
    ExtensionField,
    PrimeFieldPoly,
    discrete_log,
    find_primitive,
    random_irreducible,
)


@dataclass(frozen=True)
class ChorRivestPublicKey:
    p: int
    h: int
    b: tuple[int, ...]

    @property
    def modulus(self) -> int:
        """p^h - 1, the knapsack modulus."""
        return self.p**self.h - 1

    def to_json(self) -> dict[str, Any]:
        return {"p": self.p, "h": self.h, "b": list(self.b)}

    @classmethod
    def from_json(cls, doc: Any) -> "ChorRivestPublicKey":
        p, h = _read_ph(doc)
        b = _read_int_list(doc, "b")
        if len(b) != p:
            raise MalformedKey(f"public key needs {p} knapsack entries, got {len(b)}", field="b")
        if any(not 0 <= v < p**h - 1 for v in b):
            raise MalformedKey("knapsack entries must lie in [0, p^h - 1)", field="b")
        return cls(p, h, tuple(b))


@dataclass(frozen=True)
class ChorRivestPrivateKey:
    p: int
    h: int
    f: PrimeFieldPoly
    g: PrimeFieldPoly
    pi: tuple[int, ...]
    d: int

    def field(self) -> ExtensionField:
        return ExtensionField(self.p, self.f)

    def to_json(self) -> dict[str, Any]:
        return {
            "p": self.p, "h": self.h,
            "f": list(self.f.coeffs), "g": list(self.g.coeffs),
            "pi": list(self.pi), "d": self.d,
        }

    @classmethod
    def from_json(cls, doc: Any) -> "ChorRivestPrivateKey":
        p, h = _read_ph(doc)
        f = PrimeFieldPoly(tuple(_read_int_list(doc, "f")), p)
        if f.degree != h or not f.is_monic:
            raise MalformedKey(f"f must be monic of degree {h}", field="f")
        g_coeffs = _read_int_list(doc, "g")
        if len(g_coeffs) > h or any(not 0 <= c < p for c in g_coeffs):
            raise MalformedKey(f"g must have at most {h} coefficients in [0, {p})", field="g")
        g = PrimeFieldPoly(tuple(g_coeffs), p)
        if g.is_zero:
            raise MalformedKey("g must be nonzero", field="g")
        pi = _read_int_list(doc, "pi")
        if sorted(pi) != list(range(p)):
            raise MalformedKey(f"pi must be a permutation of 0..{p - 1}", field="pi")
        if "d" not in doc or not _is_uint(doc["d"]) or doc["d"] > p**h - 2:
            raise MalformedKey("d must be an integer in [0, p^h - 2]", field="d")
        return cls(p, h, f, g, tuple(pi), doc["d"])


def _is_uint(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 0


def _read_ph(doc: Any) -> tuple[int, int]:
    if not isinstance(doc, dict):
        raise MalformedKey("key must be a JSON object")
    for name in ("p", "h"):
        if name not in doc or not _is_uint(doc[name]):
            raise MalformedKey(f"missing or invalid field {name!r}", field=name)
    p, h = doc["p"], doc["h"]
    if not is_prime(p) or not 2 <= h <= p:
        raise MalformedKey(f"(p, h) = ({p}, {h}) are not valid parameters", field="p")
    return p, h


def _read_int_list(doc: dict, name: str) -> list[int]:
    value = doc.get(name)
    if not isinstance(value, list) or not all(_is_uint(v) for v in value):
        raise MalformedKey(f"field {name!r} must be a list of non-negative integers", field=name)
    return value


def check_parameters(p: int, h: int) -> None:
    if not is_prime(p):
        raise BadParameters(f"p={p} is not prime")
    if h < 2:
        # with h = 1 some x + i is zero in F_p and has no logarithm
        raise BadParameters(f"h={h} must be at least 2")
    if h > p:
        raise BadParameters(f"h={h} exceeds p={p}")


def keygen(p: int, h: int, seed: int, budget: int = DEFAULT_RHO_BUDGET
           ) -> tuple[ChorRivestPublicKey, ChorRivestPrivateKey]:
    check_parameters(p, h)
    rng = random.Random(seed)
    f = random_irreducible(p, h, rng.getrandbits(64))
    field = ExtensionField(p, f, budget)
    g = find_primitive(p, h, f, rng.getrandbits(64), budget)
    logs = [discrete_log(g, PrimeFieldPoly((i, 1), p), p, h, f, field=field) for i in range(p)]
    pi = list(range(p))
    rng.shuffle(pi)
    q1 = field.group_order
    d = rng.randint(0, q1 - 1)
    b = tuple((logs[pi[i]] + d) % q1 for i in range(p))
    return ChorRivestPublicKey(p, h, b), ChorRivestPrivateKey(p, h, f, g, tuple(pi), d)


def recover_logs(pub: ChorRivestPublicKey, priv: ChorRivestPrivateKey) -> list[int]:
    """a_i = log_g(x + i) for every i, read back from b and the trapdoor."""
    q1 = pub.modulus
    logs = [0] * pub.p
    for i, bi in enumerate(pub.b):
        logs[priv.pi[i]] = (bi - priv.d) % q1
    return logs


def encrypt(pub: ChorRivestPublicKey, m: int) -> int:
    M = encode_message(m, pub.p, pub.h)
    return sum(bi for bi, bit in zip(pub.b, M.bits) if bit) % pub.modulus


def decrypt(priv: ChorRivestPrivateKey, pub: ChorRivestPublicKey, c: int) -> int:
    if (priv.p, priv.h) != (pub.p, pub.h):
        raise BadParameters("public and private keys disagree on (p, h)")
    p, h = priv.p, priv.h
    q1 = pub.modulus
    if not 0 <= c < q1:
        raise MalformedCiphertext(f"ciphertext must lie in [0, {q1})")
    field = priv.field()
    exponent = (c - h * priv.d) % q1
    u = field.pow(priv.g, exponent)
    s = u + priv.f
    roots = [t for t in range(p) if s(t) == 0]
    if len(roots) != h:
        raise MalformedCiphertext(
            f"s(x) = {s} has {len(roots)} distinct roots in Z_{p}, expected {h}"
        )
    pi_inv = [0] * p
    for i, v in enumerate(priv.pi):
        pi_inv[v] = i
    bits = [0] * p
    for root in roots:
        bits[pi_inv[(-root) % p]] = 1
    return decode_message(ConstantWeightVector(tuple(bits)), p, h)

