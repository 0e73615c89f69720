"""Csiszar f-divergences, their E/A/B bounds and divergence inequality checks."""

__version__ = "0.1.0"

from .catalog import Measure, closed_bounds, evaluate, generator, identities, parallelogram
from .errors import DivergenceError
from .fdiv import (
    DragomirBounds,
    Generator,
    RatioExtrema,
    a_bound,
    b_bound,
    compare,
    csiszar,
    dragomir_bounds,
    e_bound,
    log1pmx,
    log_mean_inverse,
    ratio_extrema,
)
from .relations import Relation, certificates, coefficients, cross_check, known_chains, verify_relation
from .simplex import Distribution, DistributionPair, load, pair, sample_pair, validate

__all__ = [
    "Distribution", "DistributionPair", "DivergenceError", "DragomirBounds", "Generator",
    "Measure", "RatioExtrema", "Relation", "a_bound", "b_bound", "certificates",
    "closed_bounds", "coefficients", "compare", "cross_check", "csiszar", "dragomir_bounds",
    "e_bound", "evaluate", "generator", "identities", "known_chains", "load",
    "log1pmx", "log_mean_inverse", "pair", "parallelogram", "ratio_extrema", "sample_pair", "validate",
    "verify_relation",
]
