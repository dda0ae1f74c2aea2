"""Quantum distance on uniform spin rings and its constant-curvature embeddings."""

from ._core import (
    DimensionTooLarge,
    FactorizationFailure,
    IndexOutOfRange,
    InvalidArgs,
    InvalidSpec,
    NoConvergence,
    NotEmbeddable,
    QuotientOnOddRing,
    SpinringError,
    asymptotic_distance,
    check_metric,
    classify,
    distance_matrix,
    embeddable_spherical,
    feasibility_threshold,
    full_hamiltonian,
    kappa_max,
    p_max_closed_form,
    realize,
    single_excitation_hamiltonian,
    spectrum,
    variance_sweep,
    verify,
)

__version__ = "0.1.0"
