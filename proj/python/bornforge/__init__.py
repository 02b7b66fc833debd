"""Bayes-optimal observer simulations of the Born rule.

Outcome indices are zero-based throughout the Python API.
"""

from ._bornforge import (
    AlphaDiagnostic,
    AlphaSweepReport,
    BornforgeError,
    ContextualityReport,
    Decision,
    ExperimentResult,
    InvarianceReport,
    LinearityReport,
    MatchReport,
    TracePoint,
    UniformityReport,
    VolumeEstimate,
    alpha_diagnostic,
    born_probabilities,
    complex_state,
    contextuality,
    convergence_slope,
    decide,
    eigenset_measure_analytic,
    eigenset_measure_mc,
    likelihood_ratios,
    omega,
    real_state,
    run_alpha_sweep,
    run_complex,
    run_invariance_suite,
    run_mixture,
    run_mixture_violation,
    run_real,
    simplex_volume_ratio,
    swap_components,
    uniform_complex_sphere,
    uniform_simplex,
    verify_omega_pushforward,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
