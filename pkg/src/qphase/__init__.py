"""Qubit phase estimation toolkit.

Seedable Monte Carlo for comparing phase-estimation strategies on a qubit:
locally optimal two-outcome measurements, covariant measurements, adaptive
maximum-likelihood estimation, a covariant-then-adaptive two-step scheme
with confidence intervals, and the analytic joint-measurement benchmark.
"""

from . import errors
from .bloch import (
    ProbeConfig,
    circular_distance,
    make_probe,
    quantum_fisher_information,
    rotate_bloch,
    wrap,
)
from .entangled import SpectralWeights, eigen_weights, ent_holevo_variance
from .estimators import (
    CircularInterval,
    EstimationTrace,
    TraceFlags,
    aqse_run,
    confidence_interval,
    count_local_maxima,
    covariant_log_likelihood,
    critical_value,
    min_sample_size,
    mle_circular,
    mle_two_outcome,
    two_outcome_log_likelihood,
    two_step_plan,
    two_step_run,
)
from .harness import (
    BootstrapResult,
    ScenarioConfig,
    count_bad_cis,
    emit_bad_ci_csv,
    emit_csv,
    emit_reference_curves,
    run_scenario,
)
from .measurements import (
    CovariantPovm,
    TwoOutcomePovm,
    covariant_density,
    covariant_fisher_closed,
    covariant_score,
    fisher_by_quadrature,
    general_covariant_density,
    general_covariant_score,
    two_outcome_fisher,
    two_outcome_prob,
)
from .metrics import (
    CircularSummary,
    bad_ci_type1_prob,
    circular_first_moment,
    circular_summary,
    delta1_bound,
    holevo_variance,
    qcrb,
    two_step_lower_bound,
)
from .sampling import (
    RngStream,
    rejection_sample_circular,
    sample_covariant,
    sample_general_covariant,
    sample_two_outcome,
    split,
)

__version__ = "0.1.0"

__all__ = [
    "ProbeConfig",
    "wrap",
    "circular_distance",
    "make_probe",
    "rotate_bloch",
    "quantum_fisher_information",
    "TwoOutcomePovm",
    "CovariantPovm",
    "two_outcome_prob",
    "two_outcome_fisher",
    "covariant_density",
    "covariant_score",
    "covariant_fisher_closed",
    "general_covariant_density",
    "general_covariant_score",
    "fisher_by_quadrature",
    "RngStream",
    "split",
    "rejection_sample_circular",
    "sample_two_outcome",
    "sample_covariant",
    "sample_general_covariant",
    "CircularInterval",
    "EstimationTrace",
    "TraceFlags",
    "critical_value",
    "min_sample_size",
    "confidence_interval",
    "mle_two_outcome",
    "mle_circular",
    "count_local_maxima",
    "two_outcome_log_likelihood",
    "covariant_log_likelihood",
    "aqse_run",
    "two_step_plan",
    "two_step_run",
    "SpectralWeights",
    "eigen_weights",
    "ent_holevo_variance",
    "CircularSummary",
    "circular_first_moment",
    "circular_summary",
    "holevo_variance",
    "qcrb",
    "delta1_bound",
    "two_step_lower_bound",
    "bad_ci_type1_prob",
    "ScenarioConfig",
    "BootstrapResult",
    "run_scenario",
    "count_bad_cis",
    "emit_csv",
    "emit_bad_ci_csv",
    "emit_reference_curves",
    "errors",
]
