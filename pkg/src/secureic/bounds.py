"""Closed-form rates, outer bounds, capacities and GDoF.

Deterministic model: the five-inequality outer region, its tightest sum-rate
implication, the WoCJ optimality test and the symmetric secure sum capacity
curve (with the classical no-secrecy W-curve as reference).

Gaussian model: GWC-TIN secure rates, the sum-capacity upper bounds, the
constant gap between them and the secure sum GDoF. All logarithms are base 2
and every quantity is in bits per channel use.
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .detchannel import DetChannelParams

Number = Union[int, float, Fraction]

GAP_CONSTANT = 10.0


class ConditionsNotMet(ValueError):
    """Raised when a result needs the Gaussian optimality conditions to hold."""


def pos(x):
    """(x)^+ = max{0, x}."""
    return x if x > 0 else x - x


# ----------------------------------------------------------------- deterministic

@dataclass(frozen=True)
class DetRegion:
    b_R1: int
    b_R2: int
    b_sum: int
    b_2R1_R2: int
    b_2R2_R1: int

    def as_dict(self) -> dict:
        return asdict(self)


def det_outer_region(p: DetChannelParams) -> DetRegion:
    m11, m12, m21, m22 = p.m11, p.m12, p.m21, p.m22
    return DetRegion(
        b_R1=max(0, m11 - pos(m21 - m22)),
        b_R2=max(0, m22 - pos(m12 - m11)),
        b_sum=max(m21 - pos(m11 - m12), m22 - m12, 0) + max(m12 - pos(m22 - m21), m11 - m21, 0),
        b_2R1_R2=max(m11, m12) + pos(m11 - m21) + pos(m22 - m12),
        b_2R2_R1=max(m22, m21) + pos(m11 - m21) + pos(m22 - m12),
    )


def det_sum_upper(p: DetChannelParams) -> Fraction:
    """Tightest sum-rate bound implied by the outer region (exact rational)."""
    r = det_outer_region(p)
    return min(
        Fraction(r.b_R1 + r.b_R2),
        Fraction(r.b_sum),
        Fraction(r.b_2R1_R2 + r.b_2R2_R1, 3),
    )


def wocj_rates(p: DetChannelParams) -> tuple[int, int]:
    return pos(p.m11 - p.m21), pos(p.m22 - p.m12)


def wocj_sum(p: DetChannelParams) -> int:
    return sum(wocj_rates(p))


def det_conditions(p: DetChannelParams) -> bool:
    """Both sufficient conditions for WoCJ to be sum-capacity optimal."""
    lhs1 = p.m22 + pos(p.m11 - p.m12)
    lhs2 = p.m11 + pos(p.m22 - p.m21)
    rhs = p.m21 + p.m12
    return lhs1 >= rhs and lhs2 >= rhs


class Verdict(enum.Enum):
    OPTIMAL_POSITIVE = "OptimalPositive"
    OPTIMAL_ZERO = "OptimalZero"
    SUBOPTIMAL = "Suboptimal"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class OptimalityVerdict:
    kind: Verdict
    c_sum: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind is Verdict.OPTIMAL_POSITIVE and not (self.c_sum and self.c_sum > 0):
            raise ValueError("OptimalPositive must carry a positive sum capacity")

    def __str__(self) -> str:
        if self.kind is Verdict.OPTIMAL_POSITIVE:
            return f"{self.kind.value}({_num(self.c_sum)})"
        return self.kind.value

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "c_sum": None if self.c_sum is None else _num(self.c_sum)}


def wocj_optimality(p: DetChannelParams) -> OptimalityVerdict:
    """Is WoCJ sum-capacity optimal at p?

    Sufficient conditions settle the general case, as does WoCJ meeting the
    outer bound; the symmetric case is settled in both directions by the exact
    symmetric capacity. Elsewhere the question is open and Unknown is returned.
    """
    achieved = wocj_sum(p)
    if det_conditions(p):
        if achieved > 0:
            return OptimalityVerdict(Verdict.OPTIMAL_POSITIVE, Fraction(achieved))
        return OptimalityVerdict(Verdict.OPTIMAL_ZERO)
    upper = det_sum_upper(p)
    if achieved == upper:
        if achieved > 0:
            return OptimalityVerdict(Verdict.OPTIMAL_POSITIVE, upper)
        return OptimalityVerdict(Verdict.OPTIMAL_ZERO)
    if p.is_symmetric and p.m11 > 0:
        capacity = sym_secure_sum_exact(p.m11, p.m12)
        if capacity == 0:
            return OptimalityVerdict(Verdict.OPTIMAL_ZERO)
        if achieved == capacity:
            return OptimalityVerdict(Verdict.OPTIMAL_POSITIVE, capacity)
        return OptimalityVerdict(Verdict.SUBOPTIMAL)
    return OptimalityVerdict(Verdict.UNKNOWN)


# -------------------------------------------------------- symmetric curves

def _ratio(md: Number, mc: Number):
    if md <= 0:
        raise ValueError(f"md must be positive, got {md}")
    if mc < 0:
        raise ValueError(f"mc must be nonnegative, got {mc}")
    if isinstance(md, numbers.Rational) and isinstance(mc, numbers.Rational):
        return Fraction(mc) / Fraction(md)
    return mc / md


_HALF, _TWO_THIRDS, _THREE_QUARTERS, _THREE_HALVES = Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(3, 2)


def secure_sum_normalized(alpha: Number):
    """C_sum / md as a function of alpha = mc / md (first matching branch wins)."""
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if isinstance(alpha, numbers.Rational):
        alpha = alpha if isinstance(alpha, Fraction) else Fraction(alpha)
        two_thirds, three_quarters, three_halves = _TWO_THIRDS, _THREE_QUARTERS, _THREE_HALVES
    else:
        two_thirds, three_quarters, three_halves = 2 / 3, 3 / 4, 3 / 2
    if alpha <= two_thirds:
        return 2 * (1 - alpha)
    if alpha <= three_quarters:
        return 2 * (2 * alpha - 1)
    if alpha < 1:
        return 2 * (1 - 2 * alpha / 3)
    if alpha == 1:
        return 0 * alpha
    if alpha <= three_halves:
        return 2 * alpha / 3
    if alpha <= 2:
        return 2 * (2 - alpha)
    return 0 * alpha


def nonsecure_sum_normalized(alpha: Number):
    """Symmetric sum capacity without secrecy (W-curve), normalized by md."""
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if isinstance(alpha, numbers.Rational):
        alpha = alpha if isinstance(alpha, Fraction) else Fraction(alpha)
        half, two_thirds = _HALF, _TWO_THIRDS
    else:
        half, two_thirds = 0.5, 2 / 3
    if alpha <= half:
        return 2 * (1 - alpha)
    if alpha <= two_thirds:
        return 2 * alpha
    if alpha <= 1:
        return 2 - alpha
    if alpha <= 2:
        return alpha
    return 2 + 0 * alpha


def wocj_sum_normalized(alpha: Number):
    return 2 * pos(1 - alpha)


def sym_secure_sum_exact(md: Number, mc: Number):
    return md * secure_sum_normalized(_ratio(md, mc))


def sym_secure_sum(md: Number, mc: Number) -> float:
    """Secure sum capacity of the symmetric deterministic channel."""
    return float(sym_secure_sum_exact(md, mc))


def sym_nonsecure_sum(md: Number, mc: Number) -> float:
    return float(md * nonsecure_sum_normalized(_ratio(md, mc)))


# ----------------------------------------------------------------------- Gaussian

@dataclass(frozen=True)
class GaussianParams:
    """Channel-strength exponents a_kl (tx l -> rx k) and nominal power P.

    Phases are kept for completeness only: none of the formulas use them,
    the transmitters need no phase knowledge.
    """

    a11: float
    a12: float
    a21: float
    a22: float
    P: float = 1.0
    phases: Optional[tuple[float, float, float, float]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for name in ("a11", "a12", "a21", "a22"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be a finite nonnegative number, got {v}")
        if not math.isfinite(self.P) or self.P < 1:
            raise ValueError(f"P must be a finite number >= 1, got {self.P}")

    @property
    def log2P(self) -> float:
        return math.log2(self.P)

    def with_power(self, P: float) -> "GaussianParams":
        return GaussianParams(self.a11, self.a12, self.a21, self.a22, P, self.phases)

    def as_dict(self) -> dict:
        return {"a11": self.a11, "a12": self.a12, "a21": self.a21, "a22": self.a22, "P": self.P}


def log2_sum_exp2(*exponents: float) -> float:
    """log2(sum_i 2^e_i) without overflow."""
    top = max(exponents)
    return top + math.log2(math.fsum(2.0 ** (e - top) for e in exponents))


def gaussian_conditions(g: GaussianParams, tol: float = 1e-12) -> bool:
    rhs = g.a21 + g.a12
    return (
        g.a22 + pos(g.a11 - g.a12) >= rhs - tol
        and g.a11 + pos(g.a22 - g.a21) >= rhs - tol
    )


@dataclass(frozen=True)
class GwcTinDesign:
    beta1: float
    beta2: float
    R1: float
    R2: float
    Rp1: float
    Rp2: float

    def as_dict(self) -> dict:
        return asdict(self)


def _gwc_rate_raw(lp, a_direct, a_int_rx, a_leak, beta_own, beta_other):
    """Unclamped secure rate: I(v;y) - I(v;y_eve | v_other)."""
    # log2(1 + S/(1+I)) = log2(1 + I + S) - log2(1 + I)
    s = (a_direct - beta_own) * lp
    i = (a_int_rx - beta_other) * lp
    legit = log2_sum_exp2(0.0, i, s) - log2_sum_exp2(0.0, i)
    leak = log2_sum_exp2(0.0, (a_leak - beta_own) * lp)
    return legit, leak


def gwc_tin_design(g: GaussianParams, beta1: float, beta2: float) -> GwcTinDesign:
    """Secure and confusion rates of the wiretap-codebook scheme for power exponents beta."""
    if beta1 < 0 or beta2 < 0:
        raise ValueError("beta1 and beta2 must be nonnegative")
    lp = g.log2P
    legit1, leak1 = _gwc_rate_raw(lp, g.a11, g.a12, g.a21, beta1, beta2)
    legit2, leak2 = _gwc_rate_raw(lp, g.a22, g.a21, g.a12, beta2, beta1)
    return GwcTinDesign(
        beta1=beta1,
        beta2=beta2,
        R1=max(0.0, legit1 - leak1),
        R2=max(0.0, legit2 - leak2),
        Rp1=leak1,
        Rp2=leak2,
    )


def gwc_tin_rates_unclamped(g: GaussianParams) -> tuple[float, float]:
    """log2(1 + P^(a11-a21)/2) - 1 and its user-2 counterpart, possibly negative."""
    lp = g.log2P
    r1 = log2_sum_exp2(0.0, (g.a11 - g.a21) * lp - 1.0) - 1.0
    r2 = log2_sum_exp2(0.0, (g.a22 - g.a12) * lp - 1.0) - 1.0
    return r1, r2


def gwc_tin_rates(g: GaussianParams) -> tuple[float, float]:
    """GWC-TIN secure rates with interference scaled to the noise level, clamped at 0."""
    r1, r2 = gwc_tin_rates_unclamped(g)
    return max(0.0, r1), max(0.0, r2)


def gwc_tin_sum(g: GaussianParams) -> float:
    return sum(gwc_tin_rates(g))


def gaussian_sum_upper(g: GaussianParams) -> float:
    """General secure sum-capacity upper bound, evaluated exactly as published."""
    lp = g.log2P
    t1 = log2_sum_exp2(0.0, (g.a22 - g.a12) * lp, (g.a22 - pos(g.a11 - g.a12)) * lp)
    t2 = log2_sum_exp2(0.0, (g.a11 - g.a21) * lp, (g.a11 - pos(g.a22 - g.a21)) * lp)
    return t1 + t2 + 4.0


def gaussian_sum_upper_refined(g: GaussianParams) -> float:
    """Upper bound log2(1+2P^(a22-a12)) + log2(1+2P^(a11-a21)) + 4 valid under the conditions."""
    lp = g.log2P
    t1 = log2_sum_exp2(0.0, 1.0 + (g.a22 - g.a12) * lp)
    t2 = log2_sum_exp2(0.0, 1.0 + (g.a11 - g.a21) * lp)
    return t1 + t2 + 4.0


def gaussian_gap(g: GaussianParams) -> float:
    """Refined upper bound minus the (unclamped) GWC-TIN sum rate; at most 10 bits."""
    if not gaussian_conditions(g):
        raise ConditionsNotMet(f"optimality conditions fail for {g.as_dict()}")
    return gaussian_sum_upper_refined(g) - sum(gwc_tin_rates_unclamped(g))


class GDoF(NamedTuple):
    value: float
    optimal: bool  # False: the value is only an achievable GDoF


def gdof_sum(g: GaussianParams) -> GDoF:
    value = pos(g.a22 - g.a12) + pos(g.a11 - g.a21)
    return GDoF(float(value), gaussian_conditions(g))


def _num(x):
    """JSON-friendly number: ints stay ints, other rationals become floats."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    return x


def det_report(p: DetChannelParams) -> dict:
    verdict = wocj_optimality(p)
    r1, r2 = wocj_rates(p)
    return {
        "params": p.as_dict(),
        "region": det_outer_region(p).as_dict(),
        "sum_upper": _num(det_sum_upper(p)),
        "wocj_rates": [r1, r2],
        "wocj_sum": r1 + r2,
        "conditions": det_conditions(p),
        "verdict": str(verdict),
        "verdict_kind": verdict.kind.value,
        "c_sum": verdict.as_dict()["c_sum"],
    }


def sym_report(md: Number, mc: Number) -> dict:
    alpha = _ratio(md, mc)
    return {
        "md": _num(md),
        "mc": _num(mc),
        "alpha": _num(alpha),
        "secure_sum": _num(sym_secure_sum_exact(md, mc)),
        "nonsecure_sum": _num(md * nonsecure_sum_normalized(alpha)),
        "wocj_sum": _num(md * wocj_sum_normalized(alpha)),
        "secure_sum_norm": _num(secure_sum_normalized(alpha)),
        "wocj_optimal": bool(secure_sum_normalized(alpha) > 0 and wocj_sum_normalized(alpha) == secure_sum_normalized(alpha)),
    }


def gauss_report(g: GaussianParams) -> dict:
    ok = gaussian_conditions(g)
    r1, r2 = gwc_tin_rates(g)
    gd = gdof_sum(g)
    return {
        "params": g.as_dict(),
        "conditions": ok,
        "R1": r1,
        "R2": r2,
        "sum_rate": r1 + r2,
        "upper_bound": gaussian_sum_upper(g),
        "upper_bound_refined": gaussian_sum_upper_refined(g),
        "gap": gaussian_gap(g) if ok else None,
        "gdof_sum": gd.value,
        "gdof_optimal": gd.optimal,
    }
