"""Pre-transformed polar/RM codes: exact weight spectra and
minimum-weight-count-reducing upper-triangular pre-transformations."""

from .bitlinalg import BitVector, GeneratorMatrix, kronecker_power, row_support
from .code import CodeSpec, place_message, polar_construct, rm_construct
from .design import (
    DesignResult,
    PatternCount,
    combination_support,
    count_pattern,
    theorem2_design,
    theorem3_search,
)
from .pretransform import PreTransform, apply, crc, custom, encode, identity, pac, pc
from .spectrum import (
    MinWeightCodebook,
    WeightSpectrum,
    enumerate_spectrum,
    min_weight_codebook,
    verify_dmin_preserved,
)

__all__ = [
    "BitVector",
    "CodeSpec",
    "DesignResult",
    "GeneratorMatrix",
    "MinWeightCodebook",
    "PatternCount",
    "PreTransform",
    "WeightSpectrum",
    "apply",
    "combination_support",
    "count_pattern",
    "crc",
    "custom",
    "encode",
    "enumerate_spectrum",
    "identity",
    "kronecker_power",
    "min_weight_codebook",
    "pac",
    "pc",
    "place_message",
    "polar_construct",
    "rm_construct",
    "row_support",
    "theorem2_design",
    "theorem3_search",
    "verify_dmin_preserved",
]

__version__ = "0.1.0"
