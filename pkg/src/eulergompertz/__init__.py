"""Exact rational approximants to gamma + ln x and exp(x) E1(x)."""

__version__ = "0.1.0"

from .euler_family import (  # noqa: E402
    ApproximantPair,
    Family,
    euler_mixed,
    euler_p_family,
    laguerre1_typeI,
    pilehrood_baseline,
)
from .exact_core import ConsistencyError, Polynomial  # noqa: E402
from .gompertz_family import gompertz_denominator, gompertz_numerator, gompertz_pair  # noqa: E402

__all__ = [
    "ApproximantPair",
    "ConsistencyError",
    "Family",
    "Polynomial",
    "euler_mixed",
    "euler_p_family",
    "gompertz_denominator",
    "gompertz_numerator",
    "gompertz_pair",
    "laguerre1_typeI",
    "pilehrood_baseline",
]
