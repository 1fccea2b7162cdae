"""Private arbitrary-precision context used by every sampled evaluation.

A dedicated :class:`mpmath.MPContext` keeps the working precision independent
of whatever the caller does with the global ``mpmath.mp``.  Exponents of mpf
values are unbounded Python ints, so nets like ``eps**(1/eps)`` never underflow.
"""

import math
from fractions import Fraction

import mpmath

PREC_BITS = 3072

mp = mpmath.MPContext()
mp.prec = PREC_BITS

LN2 = mp.ln2

# Differences of O(1) quantities that agree to working precision leave
# residues near 2**-PREC_BITS; samples below this floor count as zero when
# deciding negligibility.
ROUNDING_FLOOR = mp.ldexp(mp.one, -(PREC_BITS - 128))


def eps_at(k: int):
    """Grid point ``2**-k`` as an exact mpf."""
    return mp.ldexp(mp.one, -int(k))


def to_mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def logabs(v) -> float:
    """``ln|v|`` as a Python float; ``-inf`` for an exact zero."""
    if not v:
        return -math.inf
    return float(mp.log(abs(v)))


def sign(v) -> int:
    return (v > 0) - (v < 0)


def eps_power(eps, e):
    """``eps**e``; exact and cheap when ``eps`` is a power of two and the result is too."""
    e = Fraction(e)
    man, ex = eps.man_exp
    if man == 1:
        t = ex * e
        if t.denominator == 1:
            return mp.ldexp(mp.one, int(t))
    return mp.exp(to_mpf(e) * mp.log(eps))
