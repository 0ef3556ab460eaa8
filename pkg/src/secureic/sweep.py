"""Normalized symmetric sum-capacity sweep over the interference ratio alpha."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from fractions import Fraction
from typing import Iterable, TextIO

from .bounds import nonsecure_sum_normalized, secure_sum_normalized, wocj_sum_normalized

HEADER = ("alpha", "secure_sum_norm", "nonsecure_sum_norm", "wocj_sum_norm")
ORDER_TOL = 1e-12


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    secure_sum_norm: float
    nonsecure_sum_norm: float
    wocj_sum_norm: float

    def __post_init__(self) -> None:
        if self.secure_sum_norm > self.nonsecure_sum_norm + ORDER_TOL:
            raise ValueError(f"secure exceeds nonsecure at alpha={self.alpha}")
        if self.wocj_sum_norm > self.secure_sum_norm + ORDER_TOL:
            raise ValueError(f"WoCJ exceeds secure capacity at alpha={self.alpha}")


def sweep_row(alpha: Fraction | float) -> SweepRow:
    return SweepRow(
        alpha=float(alpha),
        secure_sum_norm=float(secure_sum_normalized(alpha)),
        nonsecure_sum_norm=float(nonsecure_sum_normalized(alpha)),
        wocj_sum_norm=float(wocj_sum_normalized(alpha)),
    )


def alpha_grid(alpha_min, alpha_max, steps: int) -> list[Fraction]:
    """`steps` equally spaced points from alpha_min to alpha_max inclusive.

    Endpoints are converted through their decimal strings so that e.g. 0.5
    and 2/3-boundaries hit the exact rationals rather than binary neighbours.
    """
    lo = Fraction(str(alpha_min)) if isinstance(alpha_min, float) else Fraction(alpha_min)
    hi = Fraction(str(alpha_max)) if isinstance(alpha_max, float) else Fraction(alpha_max)
    if lo < 0 or not lo < hi:
        raise ValueError(f"need 0 <= alpha_min < alpha_max, got {lo}, {hi}")
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def sweep_rows(alpha_min, alpha_max, steps: int) -> list[SweepRow]:
    return [sweep_row(a) for a in alpha_grid(alpha_min, alpha_max, steps)]


def write_csv(rows: Iterable[SweepRow], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        # repr gives the shortest decimal that round-trips
        writer.writerow([repr(v) for v in astuple(row)])


def to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def read_csv(src: TextIO) -> list[SweepRow]:
    reader = csv.DictReader(src)
    if tuple(reader.fieldnames or ()) != HEADER:
        raise ValueError(f"unexpected header {reader.fieldnames}")
    names = [f.name for f in fields(SweepRow)]
    return [SweepRow(*(float(rec[n]) for n in names)) for rec in reader]
