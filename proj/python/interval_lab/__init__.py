"""Credible intervals under slab-and-spike priors and prior-informed spline confidence intervals."""

from ._interval_lab import (
    DesignConfig,
    DesignError,
    DesignResult,
    FormatError,
    PosteriorMixture,
    PriorFamily,
    PriorSpec,
    RealInterval,
    ScaledSummary,
    SimConfig,
    SimResult,
    SolverError,
    SplinePair,
    SufficientStats,
    __version__,
    build_posterior,
    coverage_probability,
    design,
    equi_tailed,
    factorial_2x2,
    figure_table,
    hpd,
    kg_interval,
    objective,
    reduce,
    scaled_expected_length,
    scaled_summary,
    shortest,
    simulate_kg,
    t_cdf,
    t_pdf,
    t_quantile,
    two_sided_t,
)

__all__ = [name for name in dir() if not name.startswith("_")]
