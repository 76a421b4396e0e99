"""Studies built on the integrators: references, convergence, comparison and self-checks."""

from polysymplectic_spe.flows.comparison import compare_schemes
from polysymplectic_spe.flows.convergence import (
    StudyConfig,
    StudyLevel,
    StudyOrchestrator,
    convergence_study,
    decreases_to_floor,
    dt_sweep,
    richardson_levels,
)
from polysymplectic_spe.flows.reference import (
    InitialCondition,
    ReferenceField,
    ReferenceSource,
    fallback_self_convergence,
    initial_field,
    reference_snapshot,
    spectral_fallback,
)
from polysymplectic_spe.flows.verification import CheckResult, VerificationReport, verify


__all__ = [
    "CheckResult",
    "InitialCondition",
    "ReferenceField",
    "ReferenceSource",
    "StudyConfig",
    "StudyLevel",
    "StudyOrchestrator",
    "VerificationReport",
    "compare_schemes",
    "convergence_study",
    "decreases_to_floor",
    "dt_sweep",
    "fallback_self_convergence",
    "initial_field",
    "reference_snapshot",
    "richardson_levels",
    "spectral_fallback",
    "verify",
]
