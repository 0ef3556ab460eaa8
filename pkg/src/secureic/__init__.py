"""Secure communication over the two-user interference channel.

Bit-exact deterministic-channel schemes with exhaustive leakage auditing, and
closed-form Gaussian rates, bounds and GDoF.
"""

from .audit import AuditReport, ExactPmf, audit_scheme, entropy, mutual_information
from .bounds import (
    DetRegion,
    GaussianParams,
    OptimalityVerdict,
    Verdict,
    det_outer_region,
    det_sum_upper,
    gaussian_conditions,
    gaussian_gap,
    gaussian_sum_upper,
    gaussian_sum_upper_refined,
    gdof_sum,
    gwc_tin_design,
    gwc_tin_rates,
    sym_nonsecure_sum,
    sym_secure_sum,
    wocj_optimality,
)
from .detchannel import BitWord, DetChannelParams, channel_output, shift_down
from .schemes import BitRole, OneShotScheme, cj_scheme, decode, encode, wocj_scheme

__version__ = "0.1.0"
