"""Two-user linear deterministic interference channel over GF(2).

Receiver k observes

    y_k = S^(q - m_k1) x_1  xor  S^(q - m_k2) x_2

where S is the q x q lower shift matrix and q is the largest link strength.
Bit position 1 is the most significant level of a word, so a link of strength
m delivers the top m bits of the transmitted word to the bottom m levels of
the received word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_WIDTH = 64


class WidthMismatch(ValueError):
    """Raised when bit words of different widths are combined."""


@dataclass(frozen=True)
class DetChannelParams:
    """Link strengths m_kl (bits per channel use from transmitter l to receiver k)."""

    m11: int
    m12: int
    m21: int
    m22: int
    q: int = field(init=False)

    def __post_init__(self) -> None:
        for name in ("m11", "m12", "m21", "m22"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v:
                raise TypeError(f"{name} must be an integer, got {v!r}")
            if v < 0:
                raise ValueError(f"{name} must be nonnegative, got {v}")
            object.__setattr__(self, name, int(v))
        q = max(self.m11, self.m12, self.m21, self.m22)
        if q > MAX_WIDTH:
            raise ValueError(f"q={q} exceeds the supported width {MAX_WIDTH}")
        object.__setattr__(self, "q", q)

    @classmethod
    def symmetric(cls, md: int, mc: int) -> "DetChannelParams":
        return cls(md, mc, mc, md)

    @property
    def is_symmetric(self) -> bool:
        return self.m11 == self.m22 and self.m12 == self.m21

    def strengths(self, receiver: int) -> tuple[int, int]:
        """(direct-or-cross strength from tx1, strength from tx2) seen by `receiver`."""
        if receiver == 1:
            return self.m11, self.m12
        if receiver == 2:
            return self.m21, self.m22
        raise ValueError(f"receiver must be 1 or 2, got {receiver!r}")

    def swapped(self) -> "DetChannelParams":
        """Relabel users 1 <-> 2."""
        return DetChannelParams(self.m22, self.m21, self.m12, self.m11)

    def as_dict(self) -> dict:
        return {"m11": self.m11, "m12": self.m12, "m21": self.m21, "m22": self.m22, "q": self.q}


@dataclass(frozen=True)
class BitWord:
    """A width-q column over GF(2) stored as an integer; position 1 is the MSB."""

    width: int
    value: int = 0

    def __post_init__(self) -> None:
        if self.width < 0 or self.width > MAX_WIDTH:
            raise ValueError(f"width must be in [0, {MAX_WIDTH}], got {self.width}")
        if self.value < 0 or self.value >> self.width:
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitWord":
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b!r}")
            value = (value << 1) | int(b)
        return cls(len(bits), value)

    @classmethod
    def zeros(cls, width: int) -> "BitWord":
        return cls(width, 0)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - i)) & 1 for i in range(1, self.width + 1))

    def bit(self, position: int) -> int:
        """Bit at 1-based `position` (1 = most significant)."""
        if not 1 <= position <= self.width:
            raise IndexError(f"position {position} outside 1..{self.width}")
        return (self.value >> (self.width - position)) & 1

    def __xor__(self, other: "BitWord") -> "BitWord":
        if self.width != other.width:
            raise WidthMismatch(f"cannot add words of width {self.width} and {other.width}")
        return BitWord(self.width, self.value ^ other.value)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.bits)) + ")"


def shift_down(x: BitWord, s: int) -> BitWord:
    """Apply the lower shift S^s: position i of the result is position i - s of x."""
    if s < 0:
        raise ValueError(f"shift must be nonnegative, got {s}")
    if s >= x.width:
        return BitWord(x.width, 0)
    return BitWord(x.width, x.value >> s)


def channel_output(p: DetChannelParams, x1: BitWord, x2: BitWord, receiver: int) -> BitWord:
    """Noise-free output at `receiver` for inputs x1, x2 of width q."""
    for name, x in (("x1", x1), ("x2", x2)):
        if x.width != p.q:
            raise WidthMismatch(f"{name} has width {x.width}, channel has q={p.q}")
    a, b = p.strengths(receiver)
    return shift_down(x1, p.q - a) ^ shift_down(x2, p.q - b)


# Vectorised counterparts used by exhaustive enumeration. Words are uint64 arrays.

def shift_down_many(x: np.ndarray, s: int, width: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.uint64)
    if s >= width:
        return np.zeros_like(x)
    return x >> np.uint64(s)


def channel_output_many(p: DetChannelParams, x1: np.ndarray, x2: np.ndarray, receiver: int) -> np.ndarray:
    a, b = p.strengths(receiver)
    return shift_down_many(x1, p.q - a, p.q) ^ shift_down_many(x2, p.q - b, p.q)


def all_words(width: int) -> Iterable[BitWord]:
    for v in range(1 << width):
        yield BitWord(width, v)
