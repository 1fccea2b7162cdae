"""Finite real-exponent power sums ``sum c_i eps**e_i`` plus one negligible atom."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

from .._mp import eps_power, mp, to_mpf

# threshold on 1/eps above which the atom eps**(1/eps) is sampled as an exact zero
_NEGL_CUTOFF = 2 ** 62


def as_fraction(x) -> Fraction:
    """Convert *x* to a Fraction, snapping floats that are decimal in disguise.

    ``0.1`` becomes ``1/10`` and ``math.log(math.exp(-3))`` becomes ``-3``;
    genuinely irrational floats (``5 * ln 2``) are kept exactly as stored.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, Real):
        xf = float(x)
        if not math.isfinite(xf):
            raise ValueError(f"non-finite value {x!r}")
        exact = Fraction(xf)
        snapped = exact.limit_denominator(1_000_000)
        if abs(float(snapped) - xf) <= 1e-15 * max(1.0, abs(xf)):
            return snapped
        return exact
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a real number")


def _fmt(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    f = float(q)
    if Fraction(repr(f)) == q:
        return repr(f)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PowerSum:
    """Canonical power sum: terms sorted by strictly increasing exponent.

    ``negl`` adds one formal term of infinite valuation, sampled as
    ``eps**(1/eps)``.  It stands for *some* negligible net; contributions of
    several operands collapse into the single flag.
    """

    terms: tuple = ()
    negl: bool = False

    @classmethod
    def make(cls, terms=(), negl=False) -> "PowerSum":
        acc: dict[Fraction, Fraction] = {}
        for c, e in terms:
            c, e = as_fraction(c), as_fraction(e)
            acc[e] = acc.get(e, Fraction(0)) + c
        clean = tuple((c, e) for e, c in sorted(acc.items()) if c != 0)
        return cls(clean, bool(negl))

    @classmethod
    def const(cls, c) -> "PowerSum":
        return cls.make([(c, 0)])

    @classmethod
    def monomial(cls, c, e) -> "PowerSum":
        return cls.make([(c, e)])

    # -- predicates -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms and not self.negl

    @property
    def is_negligible(self) -> bool:
        return not self.terms

    def valuation(self) -> float:
        return float(self.terms[0][1]) if self.terms else math.inf

    def exact_valuation(self):
        return self.terms[0][1] if self.terms else None

    def eventual_sign(self) -> int:
        if self.terms:
            return 1 if self.terms[0][0] > 0 else -1
        return 1 if self.negl else 0

    # -- ring operations --------------------------------------------------
    def __add__(self, other: "PowerSum") -> "PowerSum":
        return PowerSum.make(self.terms + other.terms, self.negl or other.negl)

    def __neg__(self) -> "PowerSum":
        return PowerSum(tuple((-c, e) for c, e in self.terms), self.negl)

    def __sub__(self, other: "PowerSum") -> "PowerSum":
        return self + (-other)

    def __mul__(self, other: "PowerSum") -> "PowerSum":
        prod = [(c1 * c2, e1 + e2) for c1, e1 in self.terms for c2, e2 in other.terms]
        negl = (self.negl and not other.is_zero) or (other.negl and not self.is_zero)
        return PowerSum.make(prod, negl)

    def scale(self, s) -> "PowerSum":
        s = as_fraction(s)
        if s == 0:
            return PowerSum()
        return PowerSum(tuple((c * s, e) for c, e in self.terms), self.negl)

    def shift(self, e) -> "PowerSum":
        """Multiply by ``eps**e``."""
        e = as_fraction(e)
        return PowerSum(tuple((c, x + e) for c, x in self.terms), self.negl)

    # -- evaluation -------------------------------------------------------
    def evaluate(self, eps):
        """Value at one mpf ``eps`` (the atom contributes ``eps**(1/eps)``)."""
        total = mp.zero
        for c, e in self.terms:
            total += to_mpf(c) * eps_power(eps, e)
        if self.negl:
            inv = 1 / eps
            if inv < _NEGL_CUTOFF:
                total += mp.exp(inv * mp.log(eps))
        return total

    def __str__(self) -> str:
        parts = []
        for c, e in self.terms:
            mag = _fmt(abs(c))
            body = mag if e == 0 else f"{mag}*eps^{_fmt(e)}"
            parts.append(("- " if c < 0 else "+ ") + body)
        if self.negl:
            parts.append("+ NEGL")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


ZERO = PowerSum()
ONE = PowerSum.const(1)


def compare(a: PowerSum, b: PowerSum) -> int:
    """Eventual sign of ``a - b``.

    Identical sums compare equal.  When the polynomial parts agree, the sum
    carrying the positive negligible atom is the larger one.  Both carrying it
    would make the sums identical, so a single collapsed flag never leaves the
    order undetermined.
    """
    if a == b:
        return 0
    d = PowerSum.make(a.terms + tuple((-c, e) for c, e in b.terms))
    if d.terms:
        return d.eventual_sign()
    return 1 if a.negl else -1
