"""Messages in [0, C(p, h)) <-> binary vectors of length p and weight h."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import MessageOutOfRange, WrongWeight


def binomial(nn: int, kk: int) -> int:
    """C(nn, kk), taken as 0 when kk > nn."""
    if nn < 0 or kk < 0:
        raise ValueError("binomial arguments must be non-negative")
    return math.comb(nn, kk)


@dataclass(frozen=True)
class ConstantWeightVector:
    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("constant-weight vector entries must be 0 or 1")

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def support(self) -> list[int]:
        return [i for i, b in enumerate(self.bits) if b]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def encode_message(m: int, p: int, h: int) -> ConstantWeightVector:
    if not 0 <= m < binomial(p, h):
        raise MessageOutOfRange(f"message must lie in [0, C({p}, {h}))")
    bits = []
    remaining = h
    for i in range(1, p + 1):
        c = binomial(p - i, remaining)
        if m >= c:
            bits.append(1)
            m -= c
            remaining -= 1
        else:
            bits.append(0)
    return ConstantWeightVector(tuple(bits))


def decode_message(M: ConstantWeightVector | Sequence[int], p: int, h: int) -> int:
    bits = tuple(M.bits if isinstance(M, ConstantWeightVector) else M)
    if len(bits) != p:
        raise WrongWeight(f"vector has length {len(bits)}, expected {p}")
    if sum(bits) != h:
        raise WrongWeight(f"vector has weight {sum(bits)}, expected {h}")
    m, remaining = 0, h
    for i in range(1, p + 1):
        if bits[i - 1]:
            m += binomial(p - i, remaining)
            remaining -= 1
    return m
