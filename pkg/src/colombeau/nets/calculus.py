"""Moderateness, negligibility, valuation and the sharp norm on both backends."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .._mp import ROUNDING_FLOOR
from ..config import DEFAULT
from ..errors import NotAPartition, OverlapError
from .pattern import CombPattern
from .piecewise import PiecewiseNet, align_many, as_piecewise
from .powersum import ONE, ZERO, PowerSum, compare
from .sampled import SampledNet, sample


def is_symbolic(x) -> bool:
    return isinstance(x, (PiecewiseNet, PowerSum, int, Fraction))


def _pair(a, b):
    """Bring two nets to a common backend (symbolic unless one is sampled)."""
    if isinstance(a, SampledNet) or isinstance(b, SampledNet):
        ks = a.ks if isinstance(a, SampledNet) else b.ks
        return sample(a, ks) if not isinstance(a, SampledNet) else a, \
            sample(b, ks) if not isinstance(b, SampledNet) else b
    return as_piecewise(a), as_piecewise(b)


def _pick(a: PowerSum, b: PowerSum, larger: bool) -> PowerSum:
    if a == b:
        return a
    c = compare(a, b)
    return a if (c >= 0) == larger else b


def maximum(a, b):
    """Eventual maximum (symbolic, decided per comb residue) or pointwise (sampled)."""
    a, b = _pair(a, b)
    if isinstance(a, SampledNet):
        return a._zip(b, lambda x, y: x if x >= y else y)
    return a.combine(b, lambda x, y: _pick(x, y, True))


def minimum(a, b):
    a, b = _pair(a, b)
    if isinstance(a, SampledNet):
        return a._zip(b, lambda x, y: x if x <= y else y)
    return a.combine(b, lambda x, y: _pick(x, y, False))


def absolute(a):
    return abs(a if isinstance(a, SampledNet) else as_piecewise(a))


def max_of(nets):
    nets = list(nets)
    out = nets[0]
    for n in nets[1:]:
        out = maximum(out, n)
    return out


def min_of(nets):
    nets = list(nets)
    out = nets[0]
    for n in nets[1:]:
        out = minimum(out, n)
    return out


def arith(op: str, a, b=None):
    """Ring and lattice operations on nets: add, sub, mul, neg, abs, max, min, scale."""
    if op == "neg":
        return -(a if isinstance(a, SampledNet) else as_piecewise(a))
    if op == "abs":
        return absolute(a)
    if op == "scale":
        return (a if isinstance(a, SampledNet) else as_piecewise(a)).scale(b)
    a, b = _pair(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "max":
        return maximum(a, b)
    if op == "min":
        return minimum(a, b)
    raise ValueError(f"unknown operation {op!r}")


def valuation(x, config=DEFAULT) -> float:
    """``sup{b : |x_eps| = O(eps**b)}``; exact for symbolic nets, a slope estimate for sampled ones."""
    if isinstance(x, SampledNet):
        return x.valuation(config.window)
    return as_piecewise(x).valuation()


def sharp_norm(x, config=DEFAULT) -> float:
    v = valuation(x, config)
    if v == math.inf:
        return 0.0
    return math.exp(-v)


@dataclass(frozen=True)
class Negligibility:
    negligible: bool
    exact: bool
    valuation: float

    def __bool__(self) -> bool:
        return self.negligible

    @property
    def backend(self) -> str:
        return "exact" if self.exact else "heuristic"


def is_negligible(x, config=DEFAULT) -> Negligibility:
    if isinstance(x, SampledNet):
        tail = x.values[-config.window:]
        v = x.valuation(config.window)
        flat = all(abs(t) <= ROUNDING_FLOOR for t in tail)
        return Negligibility(flat or v >= config.m_max, False, v)
    x = as_piecewise(x)
    return Negligibility(x.is_negligible, True, x.valuation())


def is_moderate(x, config=DEFAULT) -> bool:
    if isinstance(x, SampledNet):
        return x.valuation(config.window) > -config.M_max
    return True


def gen_eq(a, b, config=DEFAULT) -> bool:
    """Equality in the quotient: the difference of representatives is negligible."""
    a, b = _pair(a, b)
    return is_negligible(a - b, config).negligible


def indicator(patterns) -> PiecewiseNet:
    """The idempotent ``e_S`` equal to 1 on the union of *patterns*, 0 elsewhere."""
    patterns = list(patterns)
    if not patterns:
        return PiecewiseNet.constant(ZERO)
    if any(p.is_tail for p in patterns):
        if len(patterns) > 1:
            raise OverlapError("the tail pattern already covers every other pattern")
        return PiecewiseNet.constant(ONE)
    return PiecewiseNet.from_pieces([(p, ONE) for p in patterns] + [(CombPattern.tail(), ZERO)])


def partition_indicators(patterns) -> list:
    """Indicators of patterns that must partition (0, eta_0); ``tail`` takes the rest."""
    combs = [p for p in patterns if not p.is_tail]
    n_tail = sum(p.is_tail for p in patterns)
    if n_tail > 1:
        raise NotAPartition("more than one tail pattern")
    try:
        covered = indicator(combs) if combs else PiecewiseNet.constant(ZERO)
    except OverlapError as exc:
        raise NotAPartition(str(exc)) from exc
    rest = PiecewiseNet.constant(ONE) - covered
    out = []
    for p in patterns:
        out.append(rest if p.is_tail else indicator([p]))
    if n_tail == 0 and not (rest.is_zero or all(v.is_zero for v in rest.recurring())):
        raise NotAPartition("patterns do not cover a neighbourhood of 0")
    return out


def _ps_order(a: PowerSum, b: PowerSum) -> int:
    return compare(a, b)


def select_extreme(keys, payloads, largest: bool = False):
    """Eventual argmin (or argmax) of ``keys`` carrying witness ``payloads``.

    ``payloads[i]`` is a tuple of nets attached to ``keys[i]``.  The choice is
    made per comb residue (symbolic) or per grid point (sampled); ties go to
    the lowest index.  Returns ``(extreme_key, payload_tuple)``.
    """
    keys = list(keys)
    payloads = [tuple(p) for p in payloads]
    if len(keys) != len(payloads) or not keys:
        raise ValueError("need one payload tuple per key")
    width = len(payloads[0])
    flat = keys + [x for p in payloads for x in p]
    if any(isinstance(x, SampledNet) for x in flat):
        ks = next(x.ks for x in flat if isinstance(x, SampledNet))
        flat = [x if isinstance(x, SampledNet) else sample(x, ks) for x in flat]
        K = len(keys)
        kv = [x.values for x in flat[:K]]
        pv = [[flat[K + i * width + j].values for j in range(width)] for i in range(K)]
        best = []
        for g in range(len(ks)):
            b = 0
            for i in range(1, K):
                if (kv[i][g] > kv[b][g]) if largest else (kv[i][g] < kv[b][g]):
                    b = i
            best.append(b)
        key = SampledNet(ks, tuple(kv[b][g] for g, b in enumerate(best)))
        pay = tuple(SampledNet(ks, tuple(pv[b][j][g] for g, b in enumerate(best)))
                    for j in range(width))
        return key, pay
    base, rows, tails = align_many(flat)
    K = len(keys)

    def choose(vals):
        b = 0
        for i in range(1, K):
            c = _ps_order(vals[i], vals[b])
            if (c > 0) if largest else (c < 0):
                b = i
        return b

    def assemble(columns):
        picks = [choose([col[i] for i in range(K)]) for col in columns]
        key_vals = [col[p] for col, p in zip(columns, picks)]
        pay_vals = [[col[K + p * width + j] for col, p in zip(columns, picks)] for j in range(width)]
        return key_vals, pay_vals

    if base is None:
        kv, pv = assemble([[r[0] for r in rows]])
        return (PiecewiseNet(None, (), kv[0]),
                tuple(PiecewiseNet(None, (), v[0]) for v in pv))
    L = len(rows[0])
    columns = [[row[i] for row in rows] for i in range(L)] + [tails]
    kv, pv = assemble(columns)
    key = PiecewiseNet.build(base, tuple(kv[:L]), kv[L])
    pay = tuple(PiecewiseNet.build(base, tuple(v[:L]), v[L]) for v in pv)
    return key, pay


def eventual_sign_set(x, config=DEFAULT) -> set:
    """Signs the net takes eventually: per comb residue, or on the last grid window."""
    if isinstance(x, SampledNet):
        return {int(s) for s in x.sign[-config.window:]}
    return as_piecewise(x).eventual_signs()


def eventually_nonneg(x, config=DEFAULT):
    """True / False when decided uniformly, None when it depends on the comb residue."""
    signs = eventual_sign_set(x, config)
    if min(signs) >= 0:
        return True
    if max(signs) < 0:
        return False
    return None
