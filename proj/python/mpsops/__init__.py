"""Voronoi-based particle operators, their truncation-error bounds and verification sweeps."""

from ._mpsops import (
    AssumptionViolation,
    ConfigError,
    Context,
    Decomposition,
    DegenerateConfiguration,
    Error,
    InvalidArgument,
    QuadratureError,
    WeightFunction,
    cell_annulus_area,
    corollary71,
    corollary71_preset,
    generate_sites,
    multinomial_inverse_sum,
    polygon_disk_area,
    run_study,
    study_preset,
    test_functions,
)

__all__ = [
    "AssumptionViolation",
    "ConfigError",
    "Context",
    "Decomposition",
    "DegenerateConfiguration",
    "Error",
    "InvalidArgument",
    "QuadratureError",
    "WeightFunction",
    "cell_annulus_area",
    "corollary71",
    "corollary71_preset",
    "generate_sites",
    "multinomial_inverse_sum",
    "polygon_disk_area",
    "run_study",
    "study_preset",
    "test_functions",
]
