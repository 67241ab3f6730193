"""Coset codes, single-letter bounds and desk-scale Monte Carlo for the
doubly-dirty multiple access channel (binary and Gaussian)."""
from .errors import (
    ConfigurationError,
    DegenerateConfigurationError,
    DimensionError,
    DomainError,
    InvalidCodeError,
    PrecisionError,
    ResourceError,
)
from .gf2 import BitVector, Gf2Matrix
from .coset_code import LinearCode, build_code, golay_code, hamming_code, load_code, resolve_code

__version__ = "0.1.0"

__all__ = [
    "BitVector",
    "ConfigurationError",
    "DegenerateConfigurationError",
    "DimensionError",
    "DomainError",
    "Gf2Matrix",
    "InvalidCodeError",
    "LinearCode",
    "PrecisionError",
    "ResourceError",
    "__version__",
    "build_code",
    "golay_code",
    "hamming_code",
    "load_code",
    "resolve_code",
]
