"""Two independent quadratures for vector-valued integrands on panels.

``f`` maps a 1-D array of nodes to an array of shape ``(K, len(nodes))`` so
that all moments share one set of function evaluations.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import QuadratureFailure


@lru_cache(maxsize=8)
def _legendre(order: int):
    return np.polynomial.legendre.leggauss(order)


def gauss_legendre(f, breakpoints, order: int = 64, sub: int = 16) -> np.ndarray:
    """Composite Gauss-Legendre: every panel between breakpoints is cut into ``sub`` pieces."""
    t, w = _legendre(order)
    bps = np.unique(np.asarray(breakpoints, dtype=float))
    edges = []
    for a, b in zip(bps[:-1], bps[1:]):
        edges.append(np.linspace(a, b, sub + 1)[:-1])
    lo = np.concatenate(edges)
    hi = np.concatenate([lo[1:], bps[-1:]])
    half = (hi - lo) / 2
    nodes = (lo[:, None] + half[:, None] * (t[None, :] + 1)).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    vals = np.atleast_2d(f(nodes))
    # fixed summation order: panel by panel, left to right
    return (vals * weights).reshape(vals.shape[0], len(lo), order).sum(axis=2).sum(axis=1)


def adaptive_simpson(f, a: float, b: float, tol: float, start: int = 64, max_depth: int = 60):
    """Vectorized adaptive Simpson with Richardson correction.

    Returns ``(integral, error_estimate)`` arrays.  An interval is accepted when
    ``max_k |S_left + S_right - S_whole| <= 15 * tol * width / (b - a)``.
    """
    if b <= a:
        raise QuadratureFailure("empty integration interval")
    x = np.linspace(a, b, 2 * start + 1)
    fx = np.atleast_2d(f(x))
    lo, mid, hi = x[:-1:2], x[1::2], x[2::2]
    flo, fmid, fhi = fx[:, :-1:2], fx[:, 1::2], fx[:, 2::2]
    whole = (hi - lo) / 6 * (flo + 4 * fmid + fhi)
    total = np.zeros(fx.shape[0])
    err = np.zeros(fx.shape[0])
    span = b - a
    for _ in range(max_depth):
        if lo.size == 0:
            return total, err
        lm, rm = (lo + mid) / 2, (mid + hi) / 2
        fl = np.atleast_2d(f(lm))
        fr = np.atleast_2d(f(rm))
        left = (mid - lo) / 6 * (flo + 4 * fl + fmid)
        right = (hi - mid) / 6 * (fmid + 4 * fr + fhi)
        diff = left + right - whole
        bound = 15 * tol * (hi - lo) / span
        done = np.max(np.abs(diff), axis=0) <= bound
        done |= (mid - lo) <= 4 * np.finfo(float).eps * np.maximum(np.abs(mid), 1e-300)
        if done.any():
            total += (left + right + diff / 15)[:, done].sum(axis=1)
            err += np.abs(diff[:, done]).sum(axis=1) / 15
        keep = ~done
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        flo, fmid, fhi = flo[:, keep], fmid[:, keep], fhi[:, keep]
        lm, rm, fl, fr = lm[keep], rm[keep], fl[:, keep], fr[:, keep]
        left, right = left[:, keep], right[:, keep]
        # children: [lo, lm, mid] and [mid, rm, hi]
        lo, mid, hi = np.concatenate([lo, mid]), np.concatenate([lm, rm]), np.concatenate([mid, hi])
        flo, fhi, fmid_new = (np.concatenate([flo, fmid], axis=1),
                              np.concatenate([fmid, fhi], axis=1),
                              np.concatenate([fl, fr], axis=1))
        fmid = fmid_new
        whole = np.concatenate([left, right], axis=1)
    raise QuadratureFailure(f"adaptive Simpson did not reach tolerance {tol:g} on [{a:g}, {b:g}]")


def adaptive_simpson_panels(f, breakpoints, tol: float):
    """Adaptive Simpson on each panel; ``tol`` is split evenly across panels."""
    bps = np.unique(np.asarray(breakpoints, dtype=float))
    n = len(bps) - 1
    total, err = None, None
    for a, b in zip(bps[:-1], bps[1:]):
        v, e = adaptive_simpson(f, a, b, tol / n)
        total = v if total is None else total + v
        err = e if err is None else err + e
    return total, err


def sign_changes(f, breakpoints, per_panel: int = 256, iters: int = 80) -> np.ndarray:
    """Roots of a scalar function located by dense sampling and vectorized bisection."""
    bps = np.unique(np.asarray(breakpoints, dtype=float))
    xs = np.unique(np.concatenate([np.linspace(a, b, per_panel + 1)
                                   for a, b in zip(bps[:-1], bps[1:])]))
    v = f(xs)
    idx = np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0]
    lo, hi = xs[idx], xs[idx + 1]
    flo = v[idx]
    for _ in range(iters):
        mid = (lo + hi) / 2
        fm = f(mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return (lo + hi) / 2
