"""Numeric nets sampled on the geometric grid ``eps_k = 2**-k``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .._mp import eps_at, logabs, mp, sign, to_mpf
from ..config import DEFAULT
from ..errors import BackendMismatch
from .piecewise import PiecewiseNet
from .powersum import PowerSum

_MAX_STRIDE = 4


def default_ks(config=DEFAULT) -> tuple:
    return tuple(range(config.k_min, config.k_max + 1))


def deep_ks(j_min: int = 1, j_max: int = 60) -> tuple:
    """Doubly geometric grid ``k = 2**j``, for nets whose decay is only visible
    at ``|log eps|`` far beyond the default grid."""
    return tuple(2 ** j for j in range(j_min, j_max + 1))


@dataclass(frozen=True, eq=False)
class SampledNet:
    """Values of a net at ``eps = 2**-k`` for the grid indices ``ks``.

    Values are arbitrary-precision floats; ``sign`` and ``logmag`` are the
    overflow-free views written to CSV.
    """

    ks: tuple
    values: tuple

    def __post_init__(self):
        if len(self.ks) != len(self.values):
            raise ValueError("ks and values differ in length")
        if len(self.ks) < 9 or self.ks[0] < 1:
            raise ValueError("a sampled net needs k_min >= 1 and at least 9 grid points")
        if any(b <= a for a, b in zip(self.ks, self.ks[1:])):
            raise ValueError("grid indices must increase strictly")

    @classmethod
    def from_function(cls, fn, ks) -> "SampledNet":
        ks = tuple(int(k) for k in ks)
        return cls(ks, tuple(mp.mpf(fn(eps_at(k))) for k in ks))

    @classmethod
    def from_logs(cls, ks, signs, logmags) -> "SampledNet":
        vals = tuple(mp.zero if s == 0 else s * mp.exp(mp.mpf(l)) for s, l in zip(signs, logmags))
        return cls(tuple(int(k) for k in ks), vals)

    @classmethod
    def constant(cls, c, ks) -> "SampledNet":
        c = to_mpf(c)
        return cls(tuple(ks), (c,) * len(ks))

    # -- views ------------------------------------------------------------
    @property
    def eps(self) -> list:
        return [eps_at(k) for k in self.ks]

    @property
    def sign(self) -> np.ndarray:
        return np.array([sign(v) for v in self.values], dtype=int)

    @property
    def logmag(self) -> np.ndarray:
        return np.array([logabs(v) for v in self.values], dtype=float)

    def __repr__(self) -> str:
        return f"SampledNet(k={self.ks[0]}..{self.ks[-1]}, n={len(self.ks)})"

    # -- arithmetic -------------------------------------------------------
    def _other(self, other) -> tuple:
        if isinstance(other, SampledNet):
            if other.ks != self.ks:
                raise BackendMismatch("sampled nets live on different grids")
            return other.values
        if isinstance(other, (PiecewiseNet, PowerSum)):
            return sample(other, self.ks).values
        if isinstance(other, (int, float, Fraction)):
            c = to_mpf(other)
            return (c,) * len(self.ks)
        if type(other).__module__.startswith("mpmath"):
            return (mp.mpf(other),) * len(self.ks)
        raise TypeError(f"cannot combine SampledNet with {type(other).__name__}")

    def _zip(self, other, fn) -> "SampledNet":
        return SampledNet(self.ks, tuple(fn(a, b) for a, b in zip(self.values, self._other(other))))

    def map(self, fn) -> "SampledNet":
        return SampledNet(self.ks, tuple(fn(v) for v in self.values))

    def __add__(self, o):
        return self._zip(o, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, o):
        return self._zip(o, lambda a, b: a - b)

    def __rsub__(self, o):
        return self._zip(o, lambda a, b: b - a)

    def __mul__(self, o):
        return self._zip(o, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._zip(o, lambda a, b: a / b)

    def __neg__(self):
        return self.map(lambda v: -v)

    def __abs__(self):
        return self.map(abs)

    def scale(self, s) -> "SampledNet":
        s = to_mpf(s)
        return self.map(lambda v: v * s)

    # -- asymptotics ------------------------------------------------------
    def valuation(self, window: int = DEFAULT.window) -> float:
        return estimate_valuation(self.ks, self.logmag, window)


def sample(x, ks=None, k_min=None, k_max=None) -> SampledNet:
    """Evaluate a symbolic net on the grid; the atom is sampled as ``eps**(1/eps)``."""
    if ks is None:
        lo = DEFAULT.k_min if k_min is None else k_min
        hi = DEFAULT.k_max if k_max is None else k_max
        ks = range(lo, hi + 1)
    if isinstance(x, SampledNet):
        if tuple(ks) != x.ks:
            raise BackendMismatch("cannot resample a sampled net on another grid")
        return x
    if isinstance(x, PowerSum):
        return SampledNet.from_function(x.evaluate, ks)
    if isinstance(x, PiecewiseNet):
        return SampledNet.from_function(x.evaluate, ks)
    return SampledNet.constant(x, tuple(ks))


def _fit(t: np.ndarray, y: np.ndarray):
    tm, ym = t.mean(), y.mean()
    dt = t - tm
    slope = float(np.dot(dt, y - ym) / np.dot(dt, dt))
    resid = y - ym - slope * dt
    return slope, float(np.dot(resid, resid))


def estimate_valuation(ks, logmag, window: int = DEFAULT.window) -> float:
    """Least-squares slope of ``ln|x|`` against ``ln eps`` over the last points.

    Nets that switch between branches along a comb are not linear in
    ``ln eps``; the fit is therefore repeated on every stride ``s <= 4``
    (``s`` interleaved subsequences).  The valuation is the smallest recurring
    branch slope, so each stride is judged by the residual of that branch
    alone; the smallest stride whose residual is within a factor of the best
    is kept.  A fast-decaying branch (``eps**(1/eps)``) then cannot mask a
    clean one.
    """
    ks = np.asarray(ks[-window:], dtype=float)
    y = np.asarray(logmag[-window:], dtype=float)
    t = -ks * math.log(2.0)
    pos = np.arange(len(ks))
    live = np.isfinite(y)
    if not live.any():
        return math.inf
    if live.sum() < 3:
        i = np.flatnonzero(live)[-1]
        return float(y[i] / t[i])
    results = []
    for s in range(1, _MAX_STRIDE + 1):
        fits = []
        ok = True
        for o in range(s):
            sel = live & (pos % s == o)
            n = int(sel.sum())
            if n == 0:
                continue
            if n < 3 and s > 1:
                ok = False
                break
            if n < 2:
                continue
            slope, r = _fit(t[sel], y[sel])
            tol = 1e-22 * (1.0 + float(np.max(y[sel] ** 2)))
            fits.append((slope, r / max(n - 2, 1), tol))
        if ok and fits:
            results.append(min(fits))
    best = min(r for _, r, _ in results)
    for slope, r, tol in results:
        if r <= 4 * best + tol:
            return slope
    return results[0][0]
