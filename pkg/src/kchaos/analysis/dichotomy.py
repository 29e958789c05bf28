"""Sensitivity versus equicontinuity on one system, with the mutual
exclusion of exact verdicts enforced."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..lattice import ConeIndex, as_cone
from ..systems import System
from .pairs import DEFAULT_CONFIG
from .topology import equicontinuity_point_check, sensitivity_check, transitivity_check
from .verdict import AnalysisConfig, Verdict


@dataclass(frozen=True)
class DichotomyReport:
    transitivity: Verdict
    sensitivity: Verdict
    equicontinuity: tuple
    violations: tuple = field(default=())

    @property
    def classification(self) -> str:
        if self.sensitivity.exact_yes:
            return "sensitive"
        if self.equicontinuity and all(v.exact_yes for v in self.equicontinuity):
            return "equicontinuous"
        return "undetermined"

    @property
    def equicontinuity_points(self) -> int:
        return sum(1 for v in self.equicontinuity if v.is_yes)


def dichotomy_report(sys: System, k: ConeIndex | int,
                     cfg: AnalysisConfig | None = None) -> DichotomyReport:
    cfg = cfg or DEFAULT_CONFIG
    cone = as_cone(k, sys.d)
    trans = transitivity_check(sys, cone, cfg)
    sens = sensitivity_check(sys, cone, cfg)
    pts = sys.sample_points(random.Random(cfg.seed), cfg.sample_count)
    eq = tuple(equicontinuity_point_check(sys, x, cfg) for x in pts)
    violations = []
    for i, v in enumerate(eq):
        if sens.exact_yes and v.exact_yes:
            violations.append(f"sample {i} is an equicontinuity point of a sensitive system")
    return DichotomyReport(trans, sens, eq, tuple(violations))
