"""Initial-coefficient bounds for bi-univalent classes and their numerical checks."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    ClassSpec,
    bi_starlike_bounds,
    compare_with_prior,
    fekete_szego_bound,
    r_sigma_bounds,
    specialize,
)
from .infimum import PiecewiseProblem, closed_form, oracle_infimum
from .phi import PhiProfile, custom, janowski, order_beta, parse_profile, power, sqrt_lemniscate
from .series import TruncatedSeries, compose, derivative, invert, multiply
