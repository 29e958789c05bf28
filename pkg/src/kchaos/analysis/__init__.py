from .dichotomy import DichotomyReport, dichotomy_report
from .limitsets import limit_set_finite, prolongation_set_finite
from .pairs import classify_pair, distance_profile, scrambled_set_check
from .topology import (
    equicontinuity_point_check,
    gl_membership,
    li_yorke_sensitivity_check,
    periodic_density_check,
    periodic_point_check,
    sensitivity_check,
    transitivity_check,
)
from .verdict import AnalysisConfig, InvariantViolation, Outcome, PairClass, Verdict

__all__ = [
    "AnalysisConfig",
    "DichotomyReport",
    "InvariantViolation",
    "Outcome",
    "PairClass",
    "Verdict",
    "classify_pair",
    "dichotomy_report",
    "distance_profile",
    "equicontinuity_point_check",
    "gl_membership",
    "li_yorke_sensitivity_check",
    "limit_set_finite",
    "periodic_density_check",
    "periodic_point_check",
    "prolongation_set_finite",
    "scrambled_set_check",
    "sensitivity_check",
    "transitivity_check",
]
