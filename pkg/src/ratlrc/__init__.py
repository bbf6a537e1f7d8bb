"""Optimal locally recoverable codes from rational functions over finite fields.

Exact GF(p^m) arithmetic, projective-line transforms and orbits, rational
maps with their fiber structure, explicit families of maps that are
constant on many disjoint subsets, and the resulting optimal (n, k, r)
codes with single-symbol local repair.  Hot loops run on a compiled
kernel when available (see `kernel_backend`).
"""

from ._kernels import BACKEND as _BACKEND
from .errors import (AffineGenerator, CapExceeded, DegreeZero, EvenCharacteristic,
                     FieldMismatch, Inseparable, MultipleErasures, NoErasure,
                     OrderOne, TheoremViolation, ZeroDenominator)
from .gf import Field, FieldElement, Polynomial, field
from .projline import MoebiusTransform, OrbitCensus, PPoint, all_points, elements_of_order, orbits
from .ratfun import FiberMap, InfSplitData, RationalMap, rational_map, wronskian_in_xq
from .goodfun import (BoundReport, GoodnessCertificate, certify, estimate_bounds,
                      from_moebius, gal1, gal2, genus_upper_bound, predicted_split_count,
                      search, split_count_lower_bound, tamo_barg_additive,
                      tamo_barg_multiplicative, zero_fiber_map)
from .lrc import (Codeword, DistanceReport, LrcCode, build_code, code_from_json,
                  degree_bound_check, dimension_check, encode, erase, generator_matrix,
                  is_codeword, min_distance, repair, repair_with_trace)

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Which kernel implementation is active: 'compiled' or 'pure'."""
    return _BACKEND


__all__ = [
    "AffineGenerator", "BoundReport", "CapExceeded", "Codeword", "DegreeZero",
    "DistanceReport", "EvenCharacteristic", "FiberMap", "Field", "FieldElement",
    "FieldMismatch", "GoodnessCertificate", "InfSplitData", "Inseparable", "LrcCode",
    "MoebiusTransform", "MultipleErasures", "NoErasure", "OrbitCensus", "OrderOne",
    "PPoint", "Polynomial", "RationalMap", "TheoremViolation", "ZeroDenominator",
    "all_points", "build_code", "certify", "code_from_json", "degree_bound_check",
    "dimension_check", "elements_of_order", "encode", "erase", "estimate_bounds",
    "field", "from_moebius", "gal1", "gal2", "generator_matrix", "genus_upper_bound",
    "is_codeword", "kernel_backend", "min_distance", "orbits", "predicted_split_count",
    "rational_map", "repair", "repair_with_trace", "search", "split_count_lower_bound",
    "tamo_barg_additive", "tamo_barg_multiplicative", "wronskian_in_xq", "zero_fiber_map",
]
