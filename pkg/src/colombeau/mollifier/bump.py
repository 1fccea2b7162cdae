"""The normalized bump ``psi0(x) = C exp(-1/(1 - x^2))`` and its derivatives."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .quadrature import adaptive_simpson


def _raw(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1
    xi = x[inside]
    out[inside] = np.exp(-1.0 / (1.0 - xi * xi))
    return out


@lru_cache(maxsize=1)
def _mass(tol: float = 1e-12) -> float:
    # the mass is about 0.444, so a relative tolerance of tol is an absolute one of 0.4 tol
    val, _ = adaptive_simpson(lambda x: _raw(x)[None, :], -1.0, 1.0, 0.4 * tol)
    return float(val[0])


@lru_cache(maxsize=16)
def derivative_poly(j: int) -> tuple:
    """Coefficients of ``P_j`` with ``(exp(-u))^{(j)} = P_j(x, u) exp(-u)``, ``u = 1/(1-x^2)``.

    Returned as a tuple of ``(i, l, coeff)`` for the monomials ``x^i u^l``.
    Uses ``du/dx = 2 x u^2``.
    """
    P = {(0, 0): 1.0}
    for _ in range(j):
        Q: dict = {}
        for (i, l), c in P.items():
            if i:
                Q[(i - 1, l)] = Q.get((i - 1, l), 0.0) + c * i
            if l:
                Q[(i + 1, l + 1)] = Q.get((i + 1, l + 1), 0.0) + 2 * c * l
            Q[(i + 1, l + 2)] = Q.get((i + 1, l + 2), 0.0) - 2 * c
        P = {k: v for k, v in Q.items() if v != 0}
    return tuple((i, l, c) for (i, l), c in sorted(P.items()))


@dataclass(frozen=True)
class BumpBase:
    """``psi0 = C exp(-1/(1-x^2))`` on (-1, 1) with ``C`` making the mass 1."""

    C: float

    def __call__(self, x) -> np.ndarray:
        return self.C * _raw(x)

    def derivative(self, x, j: int) -> np.ndarray:
        """``psi0^{(j)}`` evaluated monomial by monomial in the log domain (no overflow near ±1)."""
        x = np.asarray(x, dtype=float)
        if j == 0:
            return self(x)
        out = np.zeros_like(x)
        inside = np.abs(x) < 1
        xi = x[inside]
        u = 1.0 / (1.0 - xi * xi)
        lnu = np.log(u)
        acc = np.zeros_like(xi)
        for i, l, c in derivative_poly(j):
            acc += c * xi ** i * np.exp(l * lnu - u)
        out[inside] = self.C * acc
        return out


def build_base(tol: float = 1e-12) -> BumpBase:
    """Normalize the bump by adaptive Simpson quadrature to relative tolerance ``tol``."""
    return BumpBase(1.0 / _mass(tol))
