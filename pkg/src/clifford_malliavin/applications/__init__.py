"""Applications: fourth moments, concentration, two-point calculus and log-Sobolev."""
from .concentration import ConcentrationReport, HFunction, concentration_tail, lambert_bounds, lambert_w
from .fourth_moment import (
    Claim1Report,
    Claim2Report,
    FourthMomentReport,
    VarianceReport,
    claim1_report,
    claim2_witness,
    fourth_moment,
    kernel_parity,
    norm_lemma_factor,
    self_contraction_norm_sq,
    slice_integral,
    variance_carre,
)
from .functional import (
    CharacteristicReport,
    LogSobolevReport,
    characteristic_distance,
    entropy_integral,
    log_sobolev_check,
    two_point,
    two_point_fn,
)

__all__ = [
    "CharacteristicReport", "Claim1Report", "Claim2Report", "ConcentrationReport", "FourthMomentReport",
    "HFunction", "LogSobolevReport", "VarianceReport", "characteristic_distance", "claim1_report",
    "claim2_witness", "concentration_tail", "entropy_integral", "fourth_moment", "kernel_parity",
    "lambert_bounds", "lambert_w", "log_sobolev_check", "norm_lemma_factor", "self_contraction_norm_sq",
    "slice_integral", "two_point", "two_point_fn", "variance_carre",
]
