"""Exact nets: power sums assigned to the residue classes of one geometric comb."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .._mp import mp
from ..errors import OverlapError, UnsupportedPattern
from .pattern import CombPattern, comb_index, same_base
from .powersum import ONE, ZERO, PowerSum, as_fraction, compare


def _minimal_period(vals: tuple) -> tuple:
    n = len(vals)
    for p in range(1, n + 1):
        if n % p == 0 and all(vals[i] == vals[i % p] for i in range(n)):
            return vals[:p]
    return vals


@dataclass(frozen=True, eq=True)
class PiecewiseNet:
    """A finitely described net ``eps -> x_eps``.

    With ``base = None`` the net is the single power sum ``tail``.  Otherwise
    ``base = (c, q)`` with ``c`` in ``(q, 1]`` and the net equals
    ``residues[k % L]`` on the comb interval ``(c q**(k+1), c q**k]``, and
    ``tail`` above ``c``.  Only the residue values matter near 0.
    """

    base: tuple | None
    residues: tuple
    tail: PowerSum

    # -- construction -----------------------------------------------------
    @classmethod
    def build(cls, base, residues, tail) -> "PiecewiseNet":
        if base is None:
            return cls(None, (), tail)
        residues = _minimal_period(tuple(residues))
        if len(residues) == 1 and residues[0] == tail:
            return cls(None, (), tail)
        return cls((float(base[0]), float(base[1])), residues, tail)

    @classmethod
    def constant(cls, value) -> "PiecewiseNet":
        if isinstance(value, PiecewiseNet):
            return value
        if not isinstance(value, PowerSum):
            value = PowerSum.const(value)
        return cls(None, (), value)

    @classmethod
    def monomial(cls, c, e) -> "PiecewiseNet":
        return cls(None, (), PowerSum.monomial(c, e))

    @classmethod
    def from_pieces(cls, pieces) -> "PiecewiseNet":
        """Assemble from ``(CombPattern, PowerSum)`` pairs with exactly one tail."""
        tails = [v for p, v in pieces if p.is_tail]
        if len(tails) != 1:
            raise ValueError(f"a net needs exactly one tail piece, got {len(tails)}")
        combs = [(p.normalized(), v) for p, v in pieces if not p.is_tail]
        if not combs:
            return cls(None, (), tails[0])
        base = combs[0][0][:2]
        for (c, q, _, _), _ in combs:
            if not same_base(base, (c, q)):
                raise UnsupportedPattern(
                    "comb pieces of one net must share the base (c, q) up to a power of q")
        period = reduce(math.lcm, (m for (_, _, m, _), _ in combs), 1)
        slots: list = [None] * period
        for (_, _, m, r), value in combs:
            for i in range(r, period, m):
                if slots[i] is not None:
                    raise OverlapError(f"comb pieces overlap near 0 (residue {i} mod {period})")
                slots[i] = value
        residues = tuple(tails[0] if v is None else v for v in slots)
        return cls.build(base, residues, tails[0])

    # -- views ------------------------------------------------------------
    @property
    def period(self) -> int:
        return len(self.residues) if self.base else 1

    def recurring(self) -> tuple:
        """Power sums that occur on index sets accumulating at 0."""
        return self.residues if self.base else (self.tail,)

    def pieces(self):
        if self.base is None:
            return [(CombPattern.tail(), self.tail)]
        c, q = self.base
        L = len(self.residues)
        out = [(CombPattern.comb(c, q, L, r), v)
               for r, v in enumerate(self.residues) if v != self.tail]
        out.append((CombPattern.tail(), self.tail))
        return out

    def __str__(self) -> str:
        return " ; ".join(f"[{p}] {v}" for p, v in self.pieces())

    def __repr__(self) -> str:
        return f"PiecewiseNet({str(self)!r})"

    # -- evaluation -------------------------------------------------------
    def value_at(self, eps) -> PowerSum:
        if self.base is None:
            return self.tail
        k = comb_index(self.base[0], self.base[1], eps)
        if k is None:
            return self.tail
        return self.residues[k % len(self.residues)]

    def evaluate(self, eps):
        return self.value_at(eps).evaluate(mp.mpf(eps))

    # -- calculus ---------------------------------------------------------
    def valuation(self) -> float:
        return min(v.valuation() for v in self.recurring())

    def exact_valuation(self):
        """Valuation as a Fraction, or ``None`` for +infinity."""
        vals = [v.exact_valuation() for v in self.recurring()]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    @property
    def is_negligible(self) -> bool:
        return all(v.is_negligible for v in self.recurring())

    @property
    def is_zero(self) -> bool:
        return self.base is None and self.tail.is_zero

    def eventual_signs(self) -> set:
        return {v.eventual_sign() for v in self.recurring()}

    # -- arithmetic -------------------------------------------------------
    def combine(self, other, fn) -> "PiecewiseNet":
        other = as_piecewise(other)
        base, ra, rb = _align(self, other)
        if base is None:
            return PiecewiseNet(None, (), fn(self.tail, other.tail))
        return PiecewiseNet.build(base, tuple(fn(x, y) for x, y in zip(ra, rb)),
                                  fn(self.tail, other.tail))

    def map(self, fn) -> "PiecewiseNet":
        if self.base is None:
            return PiecewiseNet(None, (), fn(self.tail))
        return PiecewiseNet.build(self.base, tuple(fn(v) for v in self.residues), fn(self.tail))

    def __add__(self, other):
        if not _symbolic_operand(other):
            return NotImplemented
        return self.combine(other, PowerSum.__add__)

    __radd__ = __add__

    def __sub__(self, other):
        if not _symbolic_operand(other):
            return NotImplemented
        return self.combine(other, PowerSum.__sub__)

    def __rsub__(self, other):
        if not _symbolic_operand(other):
            return NotImplemented
        return as_piecewise(other).combine(self, PowerSum.__sub__)

    def __mul__(self, other):
        if not _symbolic_operand(other):
            return NotImplemented
        return self.combine(other, PowerSum.__mul__)

    __rmul__ = __mul__

    def __neg__(self):
        return self.map(PowerSum.__neg__)

    def __abs__(self):
        return self.map(lambda v: -v if compare(v, ZERO) < 0 else v)

    def scale(self, s) -> "PiecewiseNet":
        s = as_fraction(s)
        return self.map(lambda v: v.scale(s))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = PiecewiseNet.constant(ONE)
        for _ in range(n):
            out = out * self
        return out


def _symbolic_operand(x) -> bool:
    return isinstance(x, (PiecewiseNet, PowerSum, int, float, Fraction))


def as_piecewise(x) -> PiecewiseNet:
    if isinstance(x, PiecewiseNet):
        return x
    if isinstance(x, PowerSum):
        return PiecewiseNet(None, (), x)
    if isinstance(x, (int, float, Fraction)):
        return PiecewiseNet(None, (), PowerSum.const(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as a symbolic net")


def _align(a: PiecewiseNet, b: PiecewiseNet):
    if a.base is None and b.base is None:
        return None, (), ()
    if a.base is None:
        return b.base, (a.tail,) * len(b.residues), b.residues
    if b.base is None:
        return a.base, a.residues, (b.tail,) * len(a.residues)
    if not same_base(a.base, b.base):
        raise UnsupportedPattern(f"nets on different comb bases {a.base} and {b.base}")
    L = math.lcm(len(a.residues), len(b.residues))
    ra = a.residues * (L // len(a.residues))
    rb = b.residues * (L // len(b.residues))
    return a.base, ra, rb


def align_many(nets):
    """Common base and per-residue value lists for several nets."""
    nets = [as_piecewise(n) for n in nets]
    bases = [n.base for n in nets if n.base is not None]
    if not bases:
        return None, [(n.tail,) for n in nets], [n.tail for n in nets]
    base = bases[0]
    for b in bases[1:]:
        if not same_base(base, b):
            raise UnsupportedPattern(f"nets on different comb bases {base} and {b}")
    L = reduce(math.lcm, (len(n.residues) for n in nets if n.base is not None), 1)
    rows = []
    for n in nets:
        res = n.residues if n.base is not None else (n.tail,)
        rows.append(res * (L // len(res)))
    return base, rows, [n.tail for n in nets]


def zip_residues(nets, fn):
    """Apply ``fn(list_of_powersums) -> PowerSum`` residue-wise."""
    base, rows, tails = align_many(nets)
    if base is None:
        return PiecewiseNet(None, (), fn([r[0] for r in rows]))
    L = len(rows[0])
    return PiecewiseNet.build(base, tuple(fn([row[i] for row in rows]) for i in range(L)),
                              fn(tails))
