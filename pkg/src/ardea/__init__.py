"""Slacks-based DEA efficiency measures with assurance regions.

Classic ratio and product measures, their closest-target variants with
closed-form scores from per-coordinate least-distance probes, zero-data
handling, a property harness, and a CLI.  The scikit-learn style wrapper
lives in :mod:`ardea.estimator` (imported separately to keep the core
light).
"""

from .ar import (
    AssumptionReport,
    AssuranceRegion,
    RatioBounds,
    build_input_tradeoffs,
    build_output_tradeoffs,
    check_assumptions,
    ratio_tradeoff_matrix,
)
from .axioms import PropertyReport, SuiteResult, run_axiom_suite
from .classic import (
    brwz_ar,
    input_retention,
    inverse_mean_output_growth,
    mean_inverse_output_growth,
    sbm_ar,
    verify_profile,
)
from .closest import (
    ContinuityRecord,
    DistanceProfile,
    UnboundedDistance,
    continuity_probe,
    distance_profile,
    max_brwz_ar,
    max_sbm_ar,
    support,
)
from .lp import (
    LinearProgram,
    LpSolution,
    LpStatus,
    NumericalBreakdown,
    solve,
)
from .report import DualWeights, EfficiencyReport, ProfileCheck, SlackProfile
from .technology import (
    Dataset,
    FrontierClass,
    FrontierLabel,
    NotInTechnology,
    Technology,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionReport",
    "AssuranceRegion",
    "ContinuityRecord",
    "Dataset",
    "DistanceProfile",
    "DualWeights",
    "EfficiencyReport",
    "FrontierClass",
    "FrontierLabel",
    "LinearProgram",
    "LpSolution",
    "LpStatus",
    "NotInTechnology",
    "NumericalBreakdown",
    "ProfileCheck",
    "PropertyReport",
    "RatioBounds",
    "SlackProfile",
    "SuiteResult",
    "Technology",
    "UnboundedDistance",
    "brwz_ar",
    "build_input_tradeoffs",
    "build_output_tradeoffs",
    "check_assumptions",
    "continuity_probe",
    "distance_profile",
    "input_retention",
    "inverse_mean_output_growth",
    "max_brwz_ar",
    "max_sbm_ar",
    "mean_inverse_output_growth",
    "ratio_tradeoff_matrix",
    "run_axiom_suite",
    "sbm_ar",
    "solve",
    "support",
    "verify_profile",
]
