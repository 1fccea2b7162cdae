"""Internal functions given by expressions on one-dimensional domain families.

Per eps the graph is ``{(x, f_eps(x)) : x in A_eps}``.  The map ``g_eps`` of
the uniform-continuity argument sends ``x`` to ``f_eps`` at the nearest
domain point; since the domain is a finite union of intervals and points,
the nearest point is computed exactly (ties to the smallest ``x``) rather
than searched on a mesh.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .._mp import ROUNDING_FLOOR, mp
from ..config import DEFAULT
from ..errors import (
    BackendMismatch,
    DomainEvaluationError,
    NoModulusFound,
    NotSharplyBounded,
    OutsideDomain,
    UnsupportedShapeCombo,
)
from ..isets.ops import contains, is_sharply_bounded
from ..isets.shapes import Box, Interval, Points, SetFamily, as_family
from ..nets.calculus import eventual_sign_set, is_negligible, valuation
from ..nets.piecewise import PiecewiseNet
from ..nets.sampled import SampledNet, deep_ks, default_ks, sample
from ..nets.vec import GenNumber, as_net
from .expr import Expr

_MESH = 257
_GOLDEN = (mp.sqrt(5) - 1) / 2


def _at(net, idx: int, eps):
    return net.values[idx] if isinstance(net, SampledNet) else net.evaluate(eps)


@dataclass(frozen=True, eq=False)
class Graph:
    """Graph family of ``x -> f_eps(x)`` over ``domain`` (None stands for the whole line)."""

    f: Expr
    domain: SetFamily | None = None
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        f = self.f if isinstance(self.f, Expr) else Expr(str(self.f))
        object.__setattr__(self, "f", f)
        if self.domain is not None:
            dom = as_family(self.domain)
            if dom.dim != 1:
                raise UnsupportedShapeCombo("expression graphs take one-dimensional domains")
            object.__setattr__(self, "domain", dom)

    # -- per-eps realization ---------------------------------------------
    def _grid(self, ks=None):
        if ks is not None:
            return tuple(ks)
        if self.domain is not None:
            for s in self.domain.shapes:
                nets = list(s.lo) + list(s.hi) if isinstance(s, Box) else \
                    [c for p in s.points for c in p] if isinstance(s, Points) else [s.r]
                for n in nets:
                    if isinstance(n, SampledNet):
                        return n.ks
        return None

    def components(self, idx: int, eps, ks=None):
        """Domain at one eps: a list of ``(lo, hi)`` mpf pairs, ``None`` bounds for half-lines."""
        if self.domain is None:
            return [(None, None)]
        grid = self._grid()
        if grid is not None and ks is not None and tuple(ks) != tuple(grid):
            raise BackendMismatch("domain sampled on a different grid")
        out = []
        for s in self.domain.shapes:
            if isinstance(s, Box):
                out.append((_at(s.lo[0], idx, eps), _at(s.hi[0], idx, eps)))
            elif isinstance(s, Points):
                out.extend((_at(p[0], idx, eps),) * 2 for p in s.points)
            else:
                r = _at(s.r, idx, eps)
                out.append((None, -r))
                out.append((r, None))
        return out

    def project(self, x, idx: int, eps):
        """Nearest domain point to ``x`` (ties to the smallest)."""
        best, bd = None, None
        for lo, hi in self.components(idx, eps):
            p = x
            if lo is not None and p < lo:
                p = lo
            if hi is not None and p > hi:
                p = hi
            d = abs(p - x)
            if bd is None or d < bd or (d == bd and p < best):
                best, bd = p, d
        return best

    def g(self, x, idx: int, eps):
        p = self.project(x, idx, eps)
        try:
            return self.f(p, eps)
        except DomainEvaluationError as exc:
            raise DomainEvaluationError(f"{self.f} undefined on the domain at eps=2^-{idx}: {exc}") \
                from None

    # -- per-eps extrema of f over the domain ------------------------------
    def _extreme(self, lo, hi, eps, largest: bool):
        """``(value, argument)`` of min or max of ``f`` on ``[lo, hi]``, memoized per graph."""
        key = (lo, hi, eps, largest)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = self._search(lo, hi, eps, largest)
        return hit

    def _search(self, lo, hi, eps, largest: bool):
        sgn = -1 if largest else 1
        fn = lambda t: sgn * self.f(t, eps)  # noqa: E731
        if lo == hi:
            return sgn * fn(lo), lo
        xs = [lo + (hi - lo) * i / (_MESH - 1) for i in range(_MESH)]
        vals = [fn(t) for t in xs]
        i = min(range(_MESH), key=lambda j: vals[j])
        best_x, best_v = xs[i], vals[i]
        a, b = xs[max(i - 1, 0)], xs[min(i + 1, _MESH - 1)]
        c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
        fc, fd = fn(c), fn(d)
        for _ in range(60):
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - _GOLDEN * (b - a)
                fc = fn(c)
            else:
                a, c, fc = c, d, fd
                d = a + _GOLDEN * (b - a)
                fd = fn(d)
        x, fx = _polish(fn, (c, fc), (d, fd), ((a + b) / 2, fn((a + b) / 2)), xs[0], xs[-1])
        if fx < best_v:
            best_x, best_v = x, fx
        return sgn * best_v, best_x


def _polish(fn, p0, p1, p2, lo, hi):
    """Successive parabolic interpolation from three nearby points.

    Golden sections leave an interior minimizer known to about 1e-17; the
    parabola steps converge superlinearly down to the working precision, which
    matters because values within ``eps**m_max`` must be found exactly.
    """
    pts = sorted([p0, p1, p2], key=lambda p: p[1])
    tol = mp.ldexp(abs(pts[0][0]) + 1, -(mp.prec // 2))
    for _ in range(200):
        (x0, f0), (x1, f1), (x2, f2) = pts
        den = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0)
        if den == 0:
            break
        u = x1 - ((x1 - x0) ** 2 * (f1 - f2) - (x1 - x2) ** 2 * (f1 - f0)) / (2 * den)
        if not lo <= u <= hi or abs(u - x0) <= tol:
            break
        fu = fn(u)
        if fu > pts[-1][1]:
            break
        pts = sorted([(u, fu), pts[0], pts[1]], key=lambda p: p[1])
    return pts[0]


def make_graph(f, domain=None) -> Graph:
    """Graph family of ``f``; checks that ``f`` is defined on the domain at grid points."""
    G = Graph(f if isinstance(f, Expr) else Expr(f), domain)
    ks = G._grid() or default_ks()
    for idx in range(0, len(ks), max(1, len(ks) // 6)):
        eps = mp.ldexp(1, -ks[idx])
        for lo, hi in G.components(idx, eps):
            for t in (lo, hi):
                if t is not None:
                    G.f(t, eps)
    return G


def _grid_for(x, G: Graph, config):
    if isinstance(x, SampledNet):
        return x.ks
    return G._grid() or default_ks(config)


@dataclass(frozen=True)
class Evaluation:
    value: GenNumber
    guaranteed: bool


def domain_bounded(G: Graph, config=DEFAULT) -> bool:
    return G.domain is not None and is_sharply_bounded(G.domain, config).bounded


def image_sup(G: Graph, ks=None, config=DEFAULT) -> SampledNet:
    """``sup |f_eps|`` over the domain, per grid point."""
    if G.domain is None:
        raise NotSharplyBounded("the whole line is not sharply bounded")
    ks = ks or G._grid() or default_ks(config)
    vals = []
    for idx, k in enumerate(ks):
        eps = mp.ldexp(1, -k)
        best = mp.zero
        for lo, hi in G.components(idx, eps, ks):
            if lo is None or hi is None:
                return SampledNet(ks, (mp.inf,) * len(ks))
            hi_v, _ = G._extreme(lo, hi, eps, True)
            lo_v, _ = G._extreme(lo, hi, eps, False)
            best = max(best, abs(hi_v), abs(lo_v))
        vals.append(best)
    return SampledNet(ks, tuple(vals))


def image_bounded(G: Graph, config=DEFAULT) -> bool:
    if not domain_bounded(G, config):
        return False
    sup = image_sup(G, config=config)
    if any(mp.isinf(v) for v in sup.values):
        return False
    return valuation(sup, config) > -config.M_max


def eval_at(G: Graph, x, config=DEFAULT) -> Evaluation:
    """``g_eps(x_eps)``; representative independent when domain and image are sharply bounded."""
    x = as_net(x)
    if G.domain is not None and not contains(G.domain, x, config).member:
        raise OutsideDomain(f"{x} is not a member of the domain")
    ks = _grid_for(x, G, config)
    xs = x if isinstance(x, SampledNet) else sample(x, ks)
    vals = tuple(G.g(xs.values[i], i, mp.ldexp(1, -k)) for i, k in enumerate(ks))
    return Evaluation(GenNumber(SampledNet(ks, vals)), image_bounded(G, config))


def graph_contains(G: Graph, x, y, config=DEFAULT) -> bool:
    """``(x, y)`` is in the graph iff ``x`` is in the domain and ``y = g(x)`` in the quotient."""
    try:
        gx = eval_at(G, x, config).value.rep
    except OutsideDomain:
        return False
    return is_negligible(gx - as_net(y), config).negligible


def image_family(G: Graph, config=DEFAULT) -> SetFamily:
    """Projection of the graph on the value axis, realized as per-eps [min f, max f] per component.

    Only available when the domain is sharply bounded.
    """
    if not domain_bounded(G, config):
        raise NotSharplyBounded("the image of a non sharply bounded domain need not be internal")
    ks = G._grid() or default_ks(config)
    shapes = []
    ncomp = len(G.components(0, mp.ldexp(1, -ks[0]), ks))
    for c in range(ncomp):
        los, his = [], []
        for idx, k in enumerate(ks):
            eps = mp.ldexp(1, -k)
            lo, hi = G.components(idx, eps, ks)[c]
            los.append(G._extreme(lo, hi, eps, False)[0])
            his.append(G._extreme(lo, hi, eps, True)[0])
        shapes.append(Interval(SampledNet(ks, tuple(los)), SampledNet(ks, tuple(his))))
    return SetFamily(tuple(shapes), 1)


@dataclass(frozen=True)
class ImageReport:
    member: bool
    exact: bool
    preimage: object
    residual: object

    def __bool__(self) -> bool:
        return self.member


def _refine_root(g, pts, vals, i):
    """Sharpen the mesh minimizer ``pts[i]`` of ``|g|``: a bracketed root when ``g``
    changes sign next to it, otherwise a local minimizer of ``g**2``."""
    for j in (i - 1, i + 1):
        if 0 <= j < len(pts) and vals[i] * vals[j] < 0:
            a, b = sorted((pts[i], pts[j]))
            try:
                t = mp.findroot(g, (a, b), solver="illinois", tol=ROUNDING_FLOOR ** 2,
                                verify=False, maxsteps=400)
            except (ValueError, ZeroDivisionError):
                continue
            if a <= t <= b:
                return t
    a, b = pts[max(i - 1, 0)], pts[min(i + 1, len(pts) - 1)]
    if a == b:
        return pts[i]
    sq = lambda t: g(t) ** 2  # noqa: E731
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    fc, fd = sq(c), sq(d)
    for _ in range(60):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = sq(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = sq(d)
    t, _ = _polish(sq, (c, fc), (d, fd), ((a + b) / 2, sq((a + b) / 2)), pts[0], pts[-1])
    return t


def _preimage(G: Graph, ys: SampledNet, bound_exp: float):
    """Per eps, the domain point minimizing ``|f - y|`` (the line is cut at ``eps**-bound_exp``)."""
    xs, res = [], []
    for idx, k in enumerate(ys.ks):
        eps = mp.ldexp(1, -k)
        yv = ys.values[idx]
        R = mp.power(eps, -bound_exp)
        g = lambda t: G.f(t, eps) - yv  # noqa: E731
        best = None
        for lo, hi in G.components(idx, eps, ys.ks):
            lo = -R if lo is None else lo
            hi = R if hi is None else hi
            pts = [lo + (hi - lo) * i / (_MESH - 1) for i in range(_MESH)]
            if G.domain is None:
                # cover the whole cut line on a logarithmic scale as well
                pts += [s * mp.power(eps, -bound_exp * i / 64) for i in range(65) for s in (1, -1)]
                pts = sorted(p for p in set(pts) if lo <= p <= hi)
            vals = [g(p) for p in pts]
            i = min(range(len(pts)), key=lambda j: abs(vals[j]))
            t = _refine_root(g, pts, vals, i)
            v = abs(g(t))
            if v >= abs(vals[i]):
                t, v = pts[i], abs(vals[i])
            if best is None or v < best[0]:
                best = (v, t)
        xs.append(best[1])
        res.append(best[0])
    return SampledNet(ys.ks, tuple(xs)), SampledNet(ys.ks, tuple(res))


def image_membership(G: Graph, y, config=DEFAULT) -> ImageReport:
    """Is ``y`` a value of ``f`` on the domain?

    With a sharply bounded domain this is membership in the image family.
    Otherwise the best preimage on a line cut at ``eps**-M_max`` is located;
    a minimizer pinned to the cut means any preimage would be non-moderate, and
    the answer is reported as heuristic.
    """
    y = as_net(y)
    if domain_bounded(G, config):
        fam = image_family(G, config)
        ks = G._grid() or default_ks(config)
        ys = y if isinstance(y, SampledNet) else sample(y, ks)
        verdict = contains(fam, ys, config)
        pre, res = _preimage(G, ys, 0)
        return ImageReport(verdict.member, True, pre, res)
    ks = default_ks(config)
    ys = y if isinstance(y, SampledNet) else sample(y, ks)
    pre, res = _preimage(G, ys, config.M_max)
    tail = slice(-config.window, None)
    pinned = any(abs(abs(p) - mp.power(mp.ldexp(1, -k), -config.M_max)) <=
                 mp.power(mp.ldexp(1, -k), -config.M_max) * mp.mpf(2) ** -20
                 for p, k in zip(pre.values[tail], pre.ks[tail]))
    moderate = not pinned
    member = moderate and is_negligible(res, config).negligible
    return ImageReport(member, False, pre if moderate else None, res)


# -- uniform continuity -----------------------------------------------------

@dataclass(frozen=True)
class ModulusReport:
    n: int
    m: int
    worst: list  # per tested eps: max |g(x) - g(x')| * eps**-n at the chosen m


def _probe_points(G: Graph, idx: int, eps, count: int = 65):
    pts = []
    for lo, hi in G.components(idx, eps):
        if lo is None or hi is None:
            raise NotSharplyBounded("continuity moduli need a sharply bounded domain")
        if lo == hi:
            pts.append(lo)
            continue
        pts.extend(lo + (hi - lo) * i / (count - 1) for i in range(count))
    return pts


def continuity_modulus(G: Graph, n: int, m_cap: int | None = None, config=DEFAULT) -> ModulusReport:
    """Smallest ``m`` with ``|x - x'| <= eps**m  =>  |g(x) - g(x')| <= eps**n`` on the grid tail."""
    if not domain_bounded(G, config):
        raise NotSharplyBounded("continuity moduli need a sharply bounded domain")
    m_cap = int(config.m_max) if m_cap is None else int(m_cap)
    grid = G._grid() or default_ks(config)
    cache = []
    for idx in range(len(grid) - config.window, len(grid)):
        eps = mp.ldexp(1, -grid[idx])
        pts = _probe_points(G, idx, eps)
        cache.append((idx, eps, pts, [G.g(p, idx, eps) for p in pts]))
    for m in range(1, m_cap + 1):
        worst, ok = [], True
        for idx, eps, pts, vals in cache:
            h = mp.power(eps, m)
            tol = mp.power(eps, n)
            w = mp.zero
            for p, v in zip(pts, vals):
                for q in (p + h, p - h):
                    w = max(w, abs(G.g(q, idx, eps) - v))
            worst.append(float(w / tol))
            if w > tol:
                ok = False
                break
        if ok:
            return ModulusReport(n, m, worst)
    raise NoModulusFound(f"no m <= {m_cap} works for n = {n}")


# -- piecewise linear interpolation --------------------------------------------

@dataclass(frozen=True, eq=False)
class PLInterpolant:
    """``h_eps``: linear interpolation of ``g_eps`` between the corners of cells of width ``eps**m``."""

    graph: Graph
    m: int

    def h(self, x, idx: int, eps):
        w = mp.power(eps, self.m)
        c = mp.floor(x / w)
        x0, x1 = c * w, (c + 1) * w
        y0, y1 = self.graph.g(x0, idx, eps), self.graph.g(x1, idx, eps)
        return y0 + (y1 - y0) * (x - x0) / w

    def sup_error(self, config=DEFAULT, count: int = 33) -> SampledNet:
        """``sup_x |h_eps - g_eps|`` sampled at interior points of cells across the domain."""
        ks = self.graph._grid() or default_ks(config)
        vals = []
        for idx, k in enumerate(ks):
            eps = mp.ldexp(1, -k)
            w = mp.power(eps, self.m)
            worst = mp.zero
            for p in _probe_points(self.graph, idx, eps, count):
                base = mp.floor(p / w) * w
                for frac in (mp.mpf(1) / 4, mp.mpf(1) / 2, mp.mpf(3) / 4):
                    x = base + frac * w
                    worst = max(worst, abs(self.h(x, idx, eps) - self.graph.g(x, idx, eps)))
            vals.append(worst)
        return SampledNet(ks, tuple(vals))


def pl_interpolant(G: Graph, m: int | None = None, config=DEFAULT) -> PLInterpolant:
    if not domain_bounded(G, config):
        raise NotSharplyBounded("interpolation needs a sharply bounded domain")
    return PLInterpolant(G, config.m_mesh if m is None else int(m))


# -- the zero set of eps**(1/x) ---------------------------------------------

ZERO_SET_FN = "where(x > 0, eps^(1/x), 0)"


@dataclass(frozen=True)
class ZeroSetRow:
    label: str
    x: SampledNet
    y: SampledNet
    fx_zero: bool
    fy_zero: bool
    y_larger: bool

    @property
    def ok(self) -> bool:
        return self.fx_zero and self.fy_zero and self.y_larger


@dataclass(frozen=True)
class ZeroSetReport:
    rows: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def __str__(self) -> str:
        lines = ["f_eps(x) = eps^(1/x) for x > 0, 0 otherwise, on [0,1]",
                 "candidate                 f(x)=0  f(y)=0  y>x   (y = x + 1/|log eps|)"]
        for r in self.rows:
            lines.append(f"{r.label:<25} {str(r.fx_zero):<7} {str(r.fy_zero):<7} {r.y_larger}")
        lines.append("no member of the zero set has maximal |x|: the zero set is not internal")
        return "\n".join(lines)


def zero_set_demo(config=DEFAULT) -> ZeroSetReport:
    """Every zero ``x`` of ``eps**(1/x)`` on [0,1] with ``x_eps -> 0`` has a larger zero.

    Evaluated on the doubly exponential grid ``eps = 2**-(2**j)`` because the
    third candidate ``1/log|log eps|`` tends to 0 extremely slowly.
    """
    ks = deep_ks()
    G = Graph(Expr(ZERO_SET_FN), SetFamily.of(Interval(PiecewiseNet.constant(0),
                                                       PiecewiseNet.constant(1))))
    inv_log = SampledNet.from_function(lambda e: 1 / abs(mp.log(e)), ks)
    cands = [
        ("0", sample(PiecewiseNet.constant(0), ks)),
        ("alpha", sample(PiecewiseNet.monomial(1, 1), ks)),
        ("1/log|log eps|", SampledNet.from_function(lambda e: 1 / mp.log(abs(mp.log(e))), ks)),
    ]
    rows = []
    for label, x in cands:
        y = x + inv_log
        fx = SampledNet(ks, tuple(G.g(v, i, e) for i, (v, e) in enumerate(zip(x.values, x.eps))))
        fy = SampledNet(ks, tuple(G.g(v, i, e) for i, (v, e) in enumerate(zip(y.values, y.eps))))
        rows.append(ZeroSetRow(label, x, y, is_negligible(fx, config).negligible,
                               is_negligible(fy, config).negligible,
                               eventual_sign_set(y - x, config) == {1}))
    return ZeroSetReport(rows)


__all__ = [
    "Evaluation", "Graph", "ImageReport", "ModulusReport", "PLInterpolant", "ZERO_SET_FN",
    "ZeroSetReport", "continuity_modulus", "domain_bounded", "eval_at", "graph_contains",
    "image_bounded", "image_family", "image_membership", "image_sup", "make_graph",
    "pl_interpolant", "zero_set_demo",
]
