"""Numerical toolkit for the ergodic phase-fading Z-interference channel with a relay.

The package evaluates and cross-verifies sum-rate capacity formulas, the
weak-interference feasibility certificate, genie-aided and cut-set upper
bounds, GDoF bounds and sweeps, the brute-force optimization oracles behind
the converse arguments, and relay-placement region maps under two-ray
pathloss.  All logarithms are base 2; all SNRs are linear power ratios.
"""

from .model import (
    ChannelRealization,
    GdofExponents,
    GenieParams,
    HermitianCov,
    InputConfig,
    SnrSextet,
    WiCertificate,
    sample_channel,
    snr_from_exponents,
)
from .capacity import (
    CapacityValue,
    CutsetBounds,
    RatePair,
    achievable_rates,
    cutset_bounds,
    genie_sum_upper_bound,
    relay_condition_holds,
    sum_capacity_zic,
    sum_capacity_zicr,
    wi_feasible,
)
from .gdof import (
    GdofReport,
    gdof_lower,
    gdof_max,
    gdof_report,
    gdof_upper,
    gdof_zic_upper,
    sweep_alpha,
)
from .gaussian import (
    JointGaussian,
    build_joint,
    conditional_mi,
    logdet_entropy,
    make_genie,
    sum_rate_via_logdet,
)
from .oracle import (
    KktProblem,
    Prop1Setup,
    kkt_closed_form,
    kkt_solve,
    maxp_gdof_monotonicity,
    phase_average_check,
    phase_average_exact,
    prop1_bruteforce,
)
from .geometry import (
    DEFAULT_LAYOUT,
    NodeLayout,
    RegionGrid,
    relay_region,
    snr_from_layout,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelRealization",
    "GdofExponents",
    "GenieParams",
    "HermitianCov",
    "InputConfig",
    "SnrSextet",
    "WiCertificate",
    "sample_channel",
    "snr_from_exponents",
    "CapacityValue",
    "CutsetBounds",
    "RatePair",
    "achievable_rates",
    "cutset_bounds",
    "genie_sum_upper_bound",
    "relay_condition_holds",
    "sum_capacity_zic",
    "sum_capacity_zicr",
    "wi_feasible",
    "GdofReport",
    "gdof_lower",
    "gdof_max",
    "gdof_report",
    "gdof_upper",
    "gdof_zic_upper",
    "sweep_alpha",
    "JointGaussian",
    "build_joint",
    "conditional_mi",
    "logdet_entropy",
    "make_genie",
    "sum_rate_via_logdet",
    "KktProblem",
    "Prop1Setup",
    "kkt_closed_form",
    "kkt_solve",
    "maxp_gdof_monotonicity",
    "phase_average_check",
    "phase_average_exact",
    "prop1_bruteforce",
    "DEFAULT_LAYOUT",
    "NodeLayout",
    "RegionGrid",
    "relay_region",
    "snr_from_layout",
]
