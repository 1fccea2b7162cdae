"""Colombeau generalized numbers, internal sets and saturation.

Subpackages:

* :mod:`colombeau.nets` - nets, valuation, sharp norm, symbolic and sampled backends
* :mod:`colombeau.isets` - internal subsets of the d-dimensional generalized space
* :mod:`colombeau.ifuncs` - internal functions given by expressions
* :mod:`colombeau.saturation` - diagonal witnesses, nested balls, Cauchy limits
* :mod:`colombeau.mollifier` - vanishing-moment mollifiers and the generalized mollifier
"""

from .config import DEFAULT, Config, load_config, parse_config
from .errors import ColombeauError

__version__ = "0.1.0"

__all__ = ["DEFAULT", "ColombeauError", "Config", "__version__", "load_config", "parse_config"]
