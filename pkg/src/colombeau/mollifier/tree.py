"""Vanishing-moment mollifiers ``phi_n = a phi_{n-1} + b phi_{n-1}(./eta)`` and their diagonal."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..config import DEFAULT
from ..errors import BudgetInfeasible, DerivativeOverflow, PreconditionMomentFailure
from .bump import BumpBase, build_base
from .quadrature import adaptive_simpson_panels, gauss_legendre, sign_changes

MOMENT_TOL = 1e-8
MAX_ORDER = 12
ETA_GRID = tuple(2.0 ** -j for j in range(1, 60))


def lift_coefficients(eta: float, n: int) -> tuple:
    """``a = -eta^n/(1-eta^n)``, ``b = 1/(eta - eta^(n+1))``: solve ``a + b eta = 1``, ``a + b eta^(n+1) = 0``."""
    en = eta ** n
    return -en / (1 - en), 1 / (eta - eta ** (n + 1))


def l1_factor(eta: float, n: int) -> float:
    en = eta ** n
    return (1 + en) / (1 - en)


@dataclass(frozen=True)
class Level:
    n: int
    eta: float
    a: float
    b: float
    delta: float        # budget: L1 of phi_n must stay below 1 + delta
    l1: float           # measured L1 norm of phi_n


@dataclass(frozen=True, eq=False)
class MollifierTree:
    """``phi_N`` as a binary tree over ``psi0``; evaluated through its distinct scales."""

    base: BumpBase
    levels: tuple = ()

    @property
    def order(self) -> int:
        return len(self.levels)

    def prefix(self, n: int) -> "MollifierTree":
        return MollifierTree(self.base, self.levels[:n])

    def terms(self) -> tuple:
        """``phi = sum_s c_s psi0(x / s)``: distinct scales ``s`` (descending) and weights ``c_s``.

        Expanding the tree gives ``2^N`` leaves; leaves with equal scale are merged.
        """
        acc = {0.0: (1.0, 1.0)}  # log2(scale) -> (scale, coeff)
        for lv in self.levels:
            nxt: dict = {}
            for key, (s, c) in acc.items():
                for s2, c2 in ((s, c * lv.a), (s * lv.eta, c * lv.b)):
                    k2 = round(math.log2(s2), 9)
                    old = nxt.get(k2, (s2, 0.0))
                    nxt[k2] = (old[0], old[1] + c2)
            acc = nxt
        items = sorted(acc.values(), key=lambda sc: -sc[0])
        return tuple(s for s, _ in items), tuple(c for _, c in items)

    def scales(self) -> np.ndarray:
        return np.array(self.terms()[0])

    def __call__(self, x) -> np.ndarray:
        return self.derivative(x, 0)

    def evaluate_recursive(self, x, n: int | None = None) -> np.ndarray:
        """Literal recursion ``a phi(x) + b phi(x/eta)`` (2^n bump evaluations)."""
        n = self.order if n is None else n
        x = np.asarray(x, dtype=float)
        if n == 0:
            return self.base(x)
        lv = self.levels[n - 1]
        return lv.a * self.evaluate_recursive(x, n - 1) + lv.b * self.evaluate_recursive(x / lv.eta, n - 1)

    def derivative(self, x, j: int) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for s, c in zip(*self.terms()):
            out += c * s ** (-j) * self.base.derivative(x / s, j)
        return out

    def breakpoints(self) -> np.ndarray:
        s = self.scales()
        return np.unique(np.concatenate([-s, [0.0], s]))

    # -- quadrature --------------------------------------------------------
    def _moment_integrand(self, kmax: int):
        ks = np.arange(kmax + 1)[:, None]

        def f(x):
            return x[None, :] ** ks * self(x)[None, :]
        return f

    def moments_gl(self, kmax: int) -> np.ndarray:
        return gauss_legendre(self._moment_integrand(kmax), self.breakpoints())

    def moments_simpson(self, kmax: int, tol: float = 1e-14):
        return adaptive_simpson_panels(self._moment_integrand(kmax), self.breakpoints(), tol)

    def moments_exact(self, kmax: int, base_moments) -> np.ndarray:
        """``sum_s c_s s^(k+1) mu_k`` from the bump moments ``mu_k``."""
        s, c = map(np.array, self.terms())
        return np.array([np.sum(c * s ** (k + 1)) * base_moments[k] for k in range(kmax + 1)])

    def l1_norm(self) -> float:
        """``int |phi|``: integrate between sign changes, where ``phi`` is smooth."""
        bps = self.breakpoints()
        roots = sign_changes(lambda x: self(x), bps)
        cuts = np.unique(np.concatenate([bps, roots]))
        t, w = np.polynomial.legendre.leggauss(64)
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            sub = np.linspace(a, b, 5)
            part = 0.0
            for lo, hi in zip(sub[:-1], sub[1:]):
                h = (hi - lo) / 2
                part += h * np.dot(w, self(lo + h * (t + 1)))
            total += abs(part)
        return total

    def l1_norm_simpson(self, tol: float = 1e-11) -> float:
        v, _ = adaptive_simpson_panels(lambda x: np.abs(self(x))[None, :], self.breakpoints(), tol)
        return float(v[0])

    def seminorm(self, n: int, points_per_scale: int = 513) -> float:
        """``p_n(phi) = max_{j<=n} sup_{|x|<=1} |phi^(j)(x)|`` on meshes adapted to every scale."""
        s = self.scales()
        xs = np.unique(np.concatenate([np.linspace(0, si, points_per_scale) for si in s]))
        best = 0.0
        for j in range(n + 1):
            v = np.abs(self.derivative(xs, j))
            if not np.all(np.isfinite(v)):
                raise DerivativeOverflow(f"derivative of order {j} overflows")
            best = max(best, float(v.max()))
        return best


def lift_order(tree: MollifierTree, delta_target: float, eta: float | None = None,
               check: bool = True) -> MollifierTree:
    """Add one level: kill moment ``n`` while keeping the L1 norm within ``1 + delta_target``."""
    n = tree.order + 1
    if check and n > 1:
        m = tree.moments_gl(n - 1)
        if abs(m[0] - 1) > MOMENT_TOL or np.any(np.abs(m[1:]) > MOMENT_TOL):
            raise PreconditionMomentFailure(f"phi_{n - 1} does not have moments 1..{n - 1} vanishing")
    prev_l1 = tree.levels[-1].l1 if tree.levels else 1.0
    if eta is None:
        # compare excesses over 1 so tiny budgets do not round away
        room = (delta_target / 2) / (1 + delta_target / 2)
        eta = next((e for e in ETA_GRID if 2 * e ** n / (1 - e ** n) <= room), None)
        if eta is None:
            raise BudgetInfeasible(f"no eta on the grid meets the budget {delta_target:g}")
    a, b = lift_coefficients(eta, n)
    staged = MollifierTree(tree.base, tree.levels + (Level(n, eta, a, b, delta_target, math.nan),))
    l1 = staged.l1_norm() if check else l1_factor(eta, n) * prev_l1
    return MollifierTree(tree.base, tree.levels + (Level(n, eta, a, b, delta_target, l1),))


def build_vanishing(N: int, delta: float, base: BumpBase | None = None) -> MollifierTree:
    """Order-``N`` mollifier with budgets ``delta_n = delta * 2^(n-N)``."""
    if N < 0 or delta <= 0:
        raise ValueError("need N >= 0 and delta > 0")
    if N > MAX_ORDER:
        raise ValueError(f"order {N} exceeds the cap {MAX_ORDER}")
    tree = MollifierTree(base or build_base())
    for n in range(1, N + 1):
        tree = lift_order(tree, delta * 2.0 ** (n - N))
    return tree


@dataclass(frozen=True)
class MomentRow:
    k: int
    moment: float
    error: float


def moment_report(tree: MollifierTree, k_max: int) -> list:
    """Moments by composite Gauss-Legendre; the error column is the distance to adaptive Simpson."""
    gl = tree.moments_gl(k_max)
    simpson, est = tree.moments_simpson(k_max)
    return [MomentRow(k, float(gl[k]), float(max(abs(gl[k] - simpson[k]), est[k])))
            for k in range(k_max + 1)]


@dataclass(frozen=True)
class DiagonalRow:
    n: int
    M: float
    eps: float


@dataclass(frozen=True)
class DiagonalTable:
    """``psi_eps = phi_n`` for ``eps_{n+1} < eps <= eps_n`` (and ``phi_N`` below ``eps_N``)."""

    tree: MollifierTree
    rows: tuple
    checks: tuple = ()   # (m, k, |moment_m(psi_eps)|) for grid eps = 2^-k <= eps_m

    def level_at(self, eps: float) -> int:
        n = 0
        for r in self.rows:
            if eps <= r.eps:
                n = r.n
        return n

    def member(self, eps: float) -> MollifierTree:
        return self.tree.prefix(self.level_at(eps))

    @property
    def ok(self) -> bool:
        eps = [r.eps for r in self.rows]
        decreasing = all(b < a for a, b in zip(eps, eps[1:]))
        return decreasing and all(v <= MOMENT_TOL for _, _, v in self.checks)


def assemble_generalized(tree: MollifierTree, k_max: int | None = None, config=DEFAULT) -> DiagonalTable:
    """Diagonal over the levels of ``tree``: ``eps_n = min(eps_{n-1}/2, 1/M_n)`` with ``M_n = p_n(phi_n)``."""
    rows, prev = [], 1.0
    for n in range(tree.order + 1):
        try:
            M = tree.prefix(n).seminorm(n)
        except DerivativeOverflow:
            M = math.inf
        eps = min(prev / 2, 1 / M)
        rows.append(DiagonalRow(n, M, eps))
        prev = eps
    table = DiagonalTable(tree, tuple(rows))
    moments = [np.abs(tree.prefix(n).moments_gl(max(n, 1))) for n in range(tree.order + 1)]
    k_max = k_max or config.k_max
    checks = []
    for m in range(1, tree.order + 1):
        for k in range(1, k_max + 1):
            eps = 2.0 ** -k
            if eps > rows[m].eps:
                continue
            n = table.level_at(eps)
            checks.append((m, k, float(moments[n][m])))
    return DiagonalTable(tree, tuple(rows), tuple(checks))


@dataclass(frozen=True, eq=False)
class Tensorized:
    """``psi_d(x) = d^(d/2) prod_i phi(sqrt(d) x_i)``: unit mass, support in the Euclidean unit ball."""

    tree: MollifierTree
    d: int

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.d:
            raise ValueError(f"expected points of dimension {self.d}")
        r = math.sqrt(self.d)
        out = np.full(x.shape[:-1], r ** self.d)
        for i in range(self.d):
            out = out * self.tree(r * x[..., i])
        return out

    def moment(self, beta, base_moments=None) -> float:
        """``int x^beta psi_d = prod_i d^(-beta_i/2) m_(beta_i)`` with 1-D moments ``m``."""
        beta = tuple(beta)
        m = base_moments if base_moments is not None else self.tree.moments_gl(max(beta))
        r = math.sqrt(self.d)
        return float(np.prod([m[b] * r ** (-b) for b in beta]))


def tensorize(tree: MollifierTree, d: int) -> Tensorized:
    if d < 1:
        raise ValueError("dimension must be positive")
    return Tensorized(tree, d)
