"""Exact, enumeration-based secrecy and reliability audit of one-shot schemes.

Every input bit (messages and jamming) is uniform and independent, so all
probabilities are dyadic. Distributions are held as integer counts over a
power-of-two denominator; floats appear only in the final log reduction.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from operator import itemgetter
from typing import Iterable, Mapping, Sequence

import numpy as np

from .schemes import OneShotScheme, run_many

ZERO_TOL = 1e-9
MAX_AUDIT_BITS = 30
CHUNK_BITS = 18

VARIABLES = ("w1", "w2", "x1", "x2", "y1", "y2", "w1_hat", "w2_hat")


class UnknownVariable(KeyError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ExactPmf:
    """Joint pmf of labeled variables as integer counts over `denominator`."""

    variables: tuple[str, ...]
    counts: Mapping[tuple, int]
    denominator: int

    def __post_init__(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        total = 0
        for outcome, c in self.counts.items():
            if len(outcome) != len(self.variables):
                raise ValueError(f"outcome {outcome} does not match variables {self.variables}")
            if c < 0:
                raise ValueError("counts must be nonnegative")
            total += c
        if total != self.denominator:
            raise ValueError(f"counts sum to {total}, denominator is {self.denominator}")
        # canonical ordering keeps everything downstream order-independent
        object.__setattr__(self, "counts", dict(sorted((k, v) for k, v in self.counts.items() if v)))

    @classmethod
    def from_counts(cls, variables: Sequence[str], counts: Mapping[tuple, int]) -> "ExactPmf":
        return cls(tuple(variables), dict(counts), sum(counts.values()))

    def probability(self, outcome: tuple) -> Fraction:
        return Fraction(self.counts.get(tuple(outcome), 0), self.denominator)

    def _indices(self, names: Iterable[str]) -> list[int]:
        out = []
        for n in names:
            if n not in self.variables:
                raise UnknownVariable(n)
            out.append(self.variables.index(n))
        return out

    def marginal(self, names: Sequence[str]) -> "ExactPmf":
        idx = self._indices(names)
        acc: Counter = Counter()
        if len(idx) == 1:
            i = idx[0]
            for outcome, c in self.counts.items():
                acc[(outcome[i],)] += c
        else:
            key = itemgetter(*idx)
            for outcome, c in self.counts.items():
                acc[key(outcome)] += c
        return ExactPmf(tuple(names), acc, self.denominator)


def entropy(p: ExactPmf) -> float:
    """Shannon entropy in bits."""
    d = p.denominator
    log_d = math.log2(d)
    # sum of -(c/d) log2(c/d) = log2 d - (1/d) sum c log2 c, summed in sorted order
    s = math.fsum(c * math.log2(c) for c in sorted(p.counts.values()) if c > 1)
    return max(log_d - s / d, 0.0)


def conditional_entropy(joint: ExactPmf, a: Sequence[str], given: Sequence[str]) -> float:
    return entropy(joint.marginal(list(a) + list(given))) - entropy(joint.marginal(given))


def mutual_information(joint: ExactPmf, group_a: Sequence[str], group_b: Sequence[str]) -> float:
    """I(A;B) = H(A) + H(B) - H(A,B) in bits."""
    group_a, group_b = list(group_a), list(group_b)
    joint._indices(group_a + group_b)
    if set(group_a) & set(group_b):
        raise ValueError(f"groups overlap: {set(group_a) & set(group_b)}")
    return entropy(joint.marginal(group_a)) + entropy(joint.marginal(group_b)) - entropy(
        joint.marginal(group_a + group_b)
    )


# ------------------------------------------------------------------ enumeration

def _split(n: np.ndarray, widths: Sequence[int]) -> list[np.ndarray]:
    """Unpack the packed enumeration index into fields, first field in the MSBs."""
    out = []
    shift = sum(widths)
    for w in widths:
        shift -= w
        out.append((n >> np.uint64(shift)) & np.uint64((1 << w) - 1))
    return out


def _chunk_counts(s: OneShotScheme, variables: Sequence[str], start: int, stop: int) -> Counter:
    n = np.arange(start, stop, dtype=np.uint64)
    w1, w2, r1, r2 = _split(n, (s.msg_bits1, s.msg_bits2, s.jam_bits1, s.jam_bits2))
    words = run_many(s, w1, w2, r1, r2)
    table = np.stack([words[v] for v in variables], axis=1)
    rows, counts = np.unique(table, axis=0, return_counts=True)
    return Counter(dict(zip(map(tuple, rows.tolist()), counts.tolist())))


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    step = max(1, -(-total // parts))
    return [(a, min(a + step, total)) for a in range(0, total, step)]


def enumerate_joint(
    s: OneShotScheme,
    variables: Sequence[str] = VARIABLES,
    workers: int = 1,
    partitions: int | None = None,
) -> ExactPmf:
    """Exact joint pmf of the requested words over all (w1, w2, r1, r2).

    The input space is cut into `partitions` contiguous ranges (optionally
    processed by a thread pool); partial counts are merged by addition.
    """
    bad = [v for v in variables if v not in VARIABLES]
    if bad:
        raise UnknownVariable(bad[0])
    m = s.total_input_bits
    if m > MAX_AUDIT_BITS:
        raise TooLarge(f"{m} input bits exceeds the enumeration budget of {MAX_AUDIT_BITS}")
    total = 1 << m
    if partitions is None:
        partitions = max(workers, -(-total // (1 << CHUNK_BITS)))
    ranges = _ranges(total, partitions)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: _chunk_counts(s, variables, *r), ranges))
    else:
        parts = [_chunk_counts(s, variables, *r) for r in ranges]
    merged: Counter = Counter()
    for c in parts:
        merged.update(c)
    return ExactPmf(tuple(variables), merged, total)


@dataclass(frozen=True)
class AuditReport:
    leakage_1to2: float  # I(w1; y2)
    leakage_2to1: float  # I(w2; y1)
    error_1: Fraction
    error_2: Fraction
    rate_1: int
    rate_2: int
    outcomes: int

    def __post_init__(self) -> None:
        for name in ("leakage_1to2", "leakage_2to1"):
            if getattr(self, name) < -ZERO_TOL:
                raise ValueError(f"{name} is negative")
        for name in ("error_1", "error_2"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} outside [0, 1]")

    @property
    def sum_rate(self) -> int:
        return self.rate_1 + self.rate_2

    @property
    def secure(self) -> bool:
        return self.leakage_1to2 <= ZERO_TOL and self.leakage_2to1 <= ZERO_TOL

    @property
    def reliable(self) -> bool:
        return self.error_1 == 0 and self.error_2 == 0

    @property
    def passed(self) -> bool:
        return self.secure and self.reliable

    def to_dict(self) -> dict:
        return {
            "rate_1": self.rate_1,
            "rate_2": self.rate_2,
            "sum_rate": self.sum_rate,
            "leakage_1to2": self.leakage_1to2,
            "leakage_2to1": self.leakage_2to1,
            "error_1": float(self.error_1),
            "error_2": float(self.error_2),
            "error_1_exact": str(self.error_1),
            "error_2_exact": str(self.error_2),
            "outcomes": self.outcomes,
            "passed": self.passed,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _clean(x: float) -> float:
    # dyadic cancellations leave ~1e-16 residue; report those as exact zeros
    return 0.0 if abs(x) < 1e-12 else x


def audit_scheme(s: OneShotScheme, workers: int = 1, partitions: int | None = None) -> AuditReport:
    """Enumerate every (w1, w2, r1, r2) and report leakage, error and rates."""
    joint = enumerate_joint(s, ("w1", "w2", "y1", "y2", "w1_hat", "w2_hat"), workers, partitions)
    errors = {}
    for k in (1, 2):
        pair = joint.marginal((f"w{k}", f"w{k}_hat"))
        wrong = sum(c for (w, w_hat), c in pair.counts.items() if w != w_hat)
        errors[k] = Fraction(wrong, joint.denominator)
    return AuditReport(
        leakage_1to2=_clean(mutual_information(joint, ["w1"], ["y2"])),
        leakage_2to1=_clean(mutual_information(joint, ["w2"], ["y1"])),
        error_1=errors[1],
        error_2=errors[2],
        rate_1=s.msg_bits1,
        rate_2=s.msg_bits2,
        outcomes=joint.denominator,
    )
