"""Nets indexed by eps in (0, 1) and the calculus of generalized numbers."""

from .calculus import (
    Negligibility,
    absolute,
    arith,
    gen_eq,
    indicator,
    is_moderate,
    is_negligible,
    max_of,
    maximum,
    min_of,
    minimum,
    partition_indicators,
    sharp_norm,
    valuation,
)
from .grammar import parse_net, parse_sum
from .pattern import CombPattern
from .piecewise import PiecewiseNet, as_piecewise
from .powersum import ONE, ZERO, PowerSum, compare
from .sampled import SampledNet, deep_ks, default_ks, estimate_valuation, sample
from .vec import ALPHA, GenNumber, VecNet, as_net, as_vec

__all__ = [
    "ALPHA", "CombPattern", "GenNumber", "Negligibility", "ONE", "PiecewiseNet",
    "PowerSum", "SampledNet", "VecNet", "ZERO", "absolute", "arith", "as_net",
    "as_piecewise", "as_vec", "compare", "deep_ks", "default_ks",
    "estimate_valuation", "gen_eq", "indicator", "is_moderate", "is_negligible",
    "max_of", "maximum", "min_of", "minimum", "parse_net", "parse_sum",
    "partition_indicators", "sample", "sharp_norm", "valuation",
]
