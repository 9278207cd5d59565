"""Moments of random multiplicative functions and truncated characteristic polynomials.

Exact integers come back as Python ints and exact rationals as fractions.Fraction.
Monte Carlo results are dicts with mean, std_error, trials, seed and upper_bound.
"""

from ._core import (
    DEFAULT_SEED,
    I1_two_ways,
    InternalError,
    InvalidArgument,
    OutOfRange,
    ResourceError,
    Unsupported,
    __version__,
    a_constant,
    acceptance_ids,
    agm,
    alpha_constant,
    b_constant,
    beta_constant,
    char_local_factor,
    char_moment_average,
    comparison_constant,
    conjectured_moment,
    cs_bound,
    ehrhart_polynomial,
    estimate_abs_moment,
    gamma_constant,
    hyper_2F1,
    hyper_Fk,
    lattice_count,
    magic_count,
    mc_truncated_moment,
    rademacher_moment,
    run_criterion,
    set_thread_count,
    so_asymptotic_rhs,
    steinhaus_energy,
    thread_count,
    truncated_moment_exact,
    unitary_asymptotic_rhs,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
