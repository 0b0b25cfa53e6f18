"""Exact analysis of s-distance sets: integrality invariants, thresholds and rank certificates."""

__version__ = "0.1.0"

from .field import QuadExt, is_integer, sign_of
from .geometry import (
    DistanceSpectrum,
    PointSet,
    SquaredDistanceMatrix,
    distance_spectrum,
    embedding_dimension,
    gram_from_sdm,
    is_realizable,
    sdm_from_points,
)
from .invariants import (
    InvariantReport,
    analyze,
    finiteness_threshold,
    k_cap,
    k_invariants,
    lrs_k,
    recover_distances,
    threshold_N,
)

__all__ = [
    "DistanceSpectrum",
    "InvariantReport",
    "PointSet",
    "QuadExt",
    "SquaredDistanceMatrix",
    "analyze",
    "distance_spectrum",
    "embedding_dimension",
    "finiteness_threshold",
    "gram_from_sdm",
    "is_integer",
    "is_realizable",
    "k_cap",
    "k_invariants",
    "lrs_k",
    "recover_distances",
    "sdm_from_points",
    "sign_of",
    "threshold_N",
]
