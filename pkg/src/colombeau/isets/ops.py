"""Membership, boundedness, extrema, inclusion and constructions on internal sets.

Every per-eps quantity is written with ring and lattice operations on nets,
so the same formulas run exactly on symbolic nets and pointwise on sampled
ones.  Distances use the sup-norm.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from ..config import DEFAULT
from ..errors import (
    EmptyClip,
    EmptyFamily,
    NotSharplyBounded,
    UnsupportedShapeCombo,
)
from ..nets.calculus import (
    absolute,
    eventual_sign_set,
    eventually_nonneg,
    is_negligible,
    max_of,
    maximum,
    min_of,
    minimum,
    partition_indicators,
    select_extreme,
    valuation,
)
from ..nets.piecewise import PiecewiseNet
from ..nets.sampled import SampledNet
from ..nets.vec import GenNumber, VecNet, as_net, as_vec
from .shapes import Box, Exterior, InternalSet, Points, SetFamily, as_family

_Z = PiecewiseNet.constant(0)


def _is_zero_net(x, config=DEFAULT) -> bool:
    if isinstance(x, SampledNet):
        return eventual_sign_set(x, config) == {0}
    return x.is_zero


# -- distances and nearest points -------------------------------------------

def _gap(u, lo, hi):
    return maximum(maximum(lo - u, u - hi), _Z)


def _clamp(u, lo, hi):
    return maximum(lo, minimum(u, hi))


def _check_dim(a: int, b: int):
    if a != b:
        raise ValueError(f"dimension mismatch: {a} vs {b}")


def shape_distance(u: VecNet, s):
    """``dist(u_eps, S_eps)`` for one shape."""
    if isinstance(s, Box):
        return max_of(_gap(x, lo, hi) for x, lo, hi in zip(u, s.lo, s.hi))
    if isinstance(s, Points):
        return min_of((u - p).norm() for p in s.points)
    return maximum(s.r - u.norm(), _Z)


def family_distance(u, A):
    fam = as_family(A)
    u = as_vec(u, fam.dim)
    if fam.is_empty:
        raise EmptyFamily("distance to the empty family")
    return min_of(shape_distance(u, s) for s in fam.shapes)


def _nearest_in_shape(u: VecNet, s):
    """``(distance, nearest point)`` for one shape; ties go to the first candidate."""
    if isinstance(s, Box):
        v = VecNet(tuple(_clamp(x, lo, hi) for x, lo, hi in zip(u, s.lo, s.hi)))
        return (v - u).norm(), v
    if isinstance(s, Points):
        key, pay = select_extreme([(u - p).norm() for p in s.points], [tuple(p) for p in s.points])
        return key, VecNet(pay)
    keys, pays = [], []
    for i in range(u.dim):
        for up in (True, False):
            w = list(u)
            w[i] = maximum(u[i], s.r) if up else minimum(u[i], -s.r)
            keys.append(absolute(w[i] - u[i]))
            pays.append(tuple(w))
    key, pay = select_extreme(keys, pays)
    return key, VecNet(pay)


def nearest_point(u, A):
    """A nearest point of ``A_eps`` to ``u_eps`` (exact minimizer, ties to the first shape)."""
    fam = as_family(A)
    u = as_vec(u, fam.dim)
    if fam.is_empty:
        raise EmptyFamily("nearest point in the empty family")
    found = [_nearest_in_shape(u, s) for s in fam.shapes]
    key, pay = select_extreme([d for d, _ in found], [tuple(v) for _, v in found])
    return key, VecNet(pay)


# -- membership and boundedness ---------------------------------------------

@dataclass(frozen=True)
class Membership:
    member: bool
    distance: object
    exact: bool

    def __bool__(self) -> bool:
        return self.member


def contains(A, u, config=DEFAULT) -> Membership:
    """``u`` lies in ``[(A_eps)]`` iff ``dist(u_eps, A_eps)`` is negligible."""
    fam = as_family(A)
    u = as_vec(u, fam.dim)
    if fam.is_empty:
        return Membership(False, None, True)
    d = family_distance(u, fam)
    verdict = is_negligible(d, config)
    return Membership(verdict.negligible, d, verdict.exact)


@dataclass(frozen=True)
class BoundReport:
    bounded: bool
    M: int | None
    sup: object

    def __bool__(self) -> bool:
        return self.bounded


def sup_norm_net(A):
    """``sup_{x in A_eps} |x|_inf`` as a net, or None when some shape is unbounded."""
    fam = as_family(A)
    if any(isinstance(s, Exterior) for s in fam.shapes):
        return None
    if fam.is_empty:
        return _Z
    return max_of(s.sup_norm() for s in fam.shapes)


def is_sharply_bounded(A, config=DEFAULT) -> BoundReport:
    sup = sup_norm_net(A)
    if sup is None:
        return BoundReport(False, None, None)
    v = valuation(sup, config)
    if v == math.inf or v >= 0:
        return BoundReport(True, 0, sup)
    if isinstance(sup, SampledNet):
        # the slope estimate carries noise of a few hundredths
        M = math.ceil(-v - 0.05)
    else:
        M = math.ceil(-v)
    return BoundReport(True, max(M, 0), sup)


def _require_bounded(A, what: str, config=DEFAULT) -> BoundReport:
    rep = is_sharply_bounded(A, config)
    if not rep.bounded:
        raise NotSharplyBounded(f"{what}: the family has no sharply bounded representative")
    return rep


def _decide(x, what: str, config=DEFAULT) -> bool:
    ok = eventually_nonneg(x, config)
    if ok is None:
        raise UnsupportedShapeCombo(f"{what} changes along the comb; split the family first")
    return ok


def trim_bounded(A, M: int, config=DEFAULT) -> SetFamily:
    """Clip every shape to ``{|x| <= eps**-M + 1}``."""
    fam = as_family(A)
    R = PiecewiseNet.monomial(1, -int(M)) + 1
    out = []
    for s in fam.shapes:
        if isinstance(s, Box):
            lo = tuple(maximum(a, -R) for a in s.lo)
            hi = tuple(minimum(b, R) for b in s.hi)
            if all(_decide(b - a, "clipped box emptiness", config) for a, b in zip(lo, hi)):
                out.append(Box(lo, hi))
        elif isinstance(s, Points):
            keep = [p for p in s.points if _decide(R - p.norm(), "point clipping", config)]
            if keep:
                out.append(Points(tuple(keep)))
        else:
            if not _decide(R - s.r, "clipped exterior emptiness", config):
                continue
            for i in range(s.dim):
                for sgn in (1, -1):
                    lo = [-R] * s.dim
                    hi = [R] * s.dim
                    if sgn > 0:
                        lo[i] = s.r
                    else:
                        hi[i] = -s.r
                    out.append(Box(tuple(lo), tuple(hi)))
    if fam.shapes and not out:
        raise EmptyClip(f"every shape leaves the ball of radius eps^-{M}+1")
    return SetFamily(tuple(out), fam.dim, fam.meta)


# -- attained extrema --------------------------------------------------------

def _farthest(s):
    """``(norm, point)`` of a point of ``s`` with maximal sup-norm."""
    if isinstance(s, Box):
        corner = []
        for lo, hi in zip(s.lo, s.hi):
            _, (c,) = select_extreme([absolute(lo), absolute(hi)], [(lo,), (hi,)], largest=True)
            corner.append(c)
        v = VecNet(tuple(corner))
        return v.norm(), v
    key, pay = select_extreme([p.norm() for p in s.points], [tuple(p) for p in s.points],
                              largest=True)
    return key, VecNet(pay)


def max_norm(A, config=DEFAULT):
    """Attained maximum of ``|x|`` over a sharply bounded internal set, with a witness."""
    fam = as_family(A)
    _require_bounded(fam, "max_norm", config)
    if fam.is_empty:
        raise EmptyFamily("max_norm of the empty family")
    found = [_farthest(s) for s in fam.shapes]
    key, pay = select_extreme([n for n, _ in found], [tuple(v) for _, v in found], largest=True)
    return GenNumber(key), VecNet(pay)


def _pair_min(sa, sb):
    """``(distance, u, v)`` with ``u`` in ``sa``, ``v`` in ``sb`` realizing the shape distance."""
    if isinstance(sa, Box) and isinstance(sb, Box):
        us, vs = [], []
        for la, ha, lb, hb in zip(sa.lo, sa.hi, sb.lo, sb.hi):
            u = minimum(ha, maximum(la, lb))
            us.append(u)
            vs.append(_clamp(u, lb, hb))
        u, v = VecNet(tuple(us)), VecNet(tuple(vs))
        return (u - v).norm(), u, v
    if isinstance(sa, Points):
        cands = []
        for p in sa.points:
            d, v = _nearest_in_shape(p, sb)
            cands.append((d, p, v))
    elif isinstance(sb, Points):
        cands = []
        for q in sb.points:
            d, u = _nearest_in_shape(q, sa)
            cands.append((d, u, q))
    else:  # bounded box against an exterior: go as far out as possible
        _, u = _farthest(sa)
        d, v = _nearest_in_shape(u, sb)
        cands = [(d, u, v)]
    dim = sa.dim
    key, pay = select_extreme([c[0] for c in cands], [tuple(c[1]) + tuple(c[2]) for c in cands])
    return key, VecNet(pay[:dim]), VecNet(pay[dim:])


def min_distance(A, B, config=DEFAULT):
    """Attained minimum of ``|u - v|`` over ``u`` in A, ``v`` in B, with witnesses."""
    fa, fb = as_family(A), as_family(B)
    _check_dim(fa.dim, fb.dim)
    _require_bounded(fa, "min_distance", config)
    if fa.is_empty or fb.is_empty:
        raise EmptyFamily("min_distance needs two nonempty families")
    found = [_pair_min(sa, sb) for sa in fa.shapes for sb in fb.shapes]
    key, pay = select_extreme([f[0] for f in found], [tuple(f[1]) + tuple(f[2]) for f in found])
    d = fa.dim
    return GenNumber(key), (VecNet(pay[:d]), VecNet(pay[d:]))


# -- inclusion and equality --------------------------------------------------

@dataclass(frozen=True)
class InclusionReport:
    holds: bool
    delta: object
    exact: bool

    def __bool__(self) -> bool:
        return self.holds


def _ends_1d(fb: SetFamily):
    """Right ends and left ends of the pieces of a one-dimensional family."""
    rights, lefts = [], []
    for s in fb.shapes:
        if isinstance(s, Box):
            rights.append(s.hi[0])
            lefts.append(s.lo[0])
        elif isinstance(s, Points):
            for p in s.points:
                rights.append(p[0])
                lefts.append(p[0])
        else:
            rights.append(-s.r)
            lefts.append(s.r)
    return rights, lefts


def _coord_candidates(lo, hi, rights, lefts):
    cands = [lo, hi]
    for h in rights:
        for left in lefts:
            cands.append(_clamp((h + left).scale(0.5), lo, hi))
    return cands


def directed_distance(A, B, config=DEFAULT):
    """``sup_{u in A_eps} dist(u, B_eps)`` and whether it was computed exactly."""
    fa, fb = as_family(A), as_family(B)
    _check_dim(fa.dim, fb.dim)
    _require_bounded(fa, "subset_report", config)
    if fa.is_empty:
        return _Z, True
    if fb.is_empty:
        raise EmptyFamily("directed distance to the empty family")
    vals, exact = [], True
    single_box = len(fb.shapes) == 1 and isinstance(fb.shapes[0], Box)
    for s in fa.shapes:
        if isinstance(s, Points):
            vals.extend(family_distance(p, fb) for p in s.points)
        elif single_box:
            b = fb.shapes[0]
            vals.append(max_of(maximum(maximum(lb - la, ha - hb), _Z)
                               for la, ha, lb, hb in zip(s.lo, s.hi, b.lo, b.hi)))
        elif fa.dim == 1:
            rights, lefts = _ends_1d(fb)
            for c in _coord_candidates(s.lo[0], s.hi[0], rights, lefts):
                vals.append(family_distance(VecNet((c,)), fb))
        else:
            exact = False
            per_coord = []
            for i in range(fa.dim):
                proj = SetFamily(tuple(_project_shape(t, [i]) for t in fb.shapes
                                       if not isinstance(t, Exterior)), 1)
                rights, lefts = _ends_1d(proj)
                for t in fb.shapes:
                    if isinstance(t, Exterior):
                        rights.append(-t.r)
                        lefts.append(t.r)
                per_coord.append(_coord_candidates(s.lo[i], s.hi[i], rights, lefts))
            for corner in itertools.islice(itertools.product(*per_coord), 4096):
                vals.append(family_distance(VecNet(corner), fb))
    return max_of(vals), exact


def subset_report(A, B, config=DEFAULT) -> InclusionReport:
    """``A`` is contained in ``B`` iff the directed sup-distance net is negligible."""
    fa, fb = as_family(A), as_family(B)
    if fb.is_empty:
        _require_bounded(fa, "subset_report", config)
        return InclusionReport(fa.is_empty, _Z if fa.is_empty else None, True)
    delta, exact = directed_distance(fa, fb, config)
    return InclusionReport(is_negligible(delta, config).negligible, delta, exact)


def equality_report(A, B, config=DEFAULT) -> InclusionReport:
    """Equality iff the Hausdorff net ``max(delta(A,B), delta(B,A))`` is negligible."""
    fa, fb = as_family(A), as_family(B)
    _require_bounded(fa, "equality_report", config)
    _require_bounded(fb, "equality_report", config)
    if fa.is_empty or fb.is_empty:
        same = fa.is_empty and fb.is_empty
        return InclusionReport(same, _Z if same else None, True)
    d1, e1 = directed_distance(fa, fb, config)
    d2, e2 = directed_distance(fb, fa, config)
    h = maximum(d1, d2)
    return InclusionReport(is_negligible(h, config).negligible, h, e1 and e2)


# -- constructions -------------------------------------------------------------

def internal_union(A, B) -> InternalSet:
    fa, fb = as_family(A), as_family(B)
    _check_dim(fa.dim, fb.dim)
    return InternalSet(SetFamily(fa.shapes + fb.shapes, fa.dim))


def interleave(points) -> VecNet:
    """``sum_j e_{S_j} a_j`` for patterns ``S_j`` partitioning a neighbourhood of 0."""
    points = [(as_vec(a), pat) for a, pat in points]
    if not points:
        raise ValueError("nothing to interleave")
    dim = points[0][0].dim
    for a, _ in points:
        _check_dim(a.dim, dim)
    es = partition_indicators([pat for _, pat in points])
    comps = []
    for i in range(dim):
        total = None
        for e, (a, _) in zip(es, points):
            term = a[i] * e if isinstance(a[i], SampledNet) else e * a[i]
            total = term if total is None else total + term
        comps.append(total)
    return VecNet(tuple(comps))


def fatten(A, m) -> SetFamily:
    """The ``eps**m`` neighbourhood of each ``A_eps``."""
    fam = as_family(A)
    w = PiecewiseNet.monomial(1, m)
    out = []
    for s in fam.shapes:
        if isinstance(s, Box):
            out.append(Box(tuple(a - w for a in s.lo), tuple(b + w for b in s.hi)))
        elif isinstance(s, Points):
            out.extend(Box(tuple(c - w for c in p), tuple(c + w for c in p)) for p in s.points)
        else:
            out.append(Exterior(maximum(s.r - w, _Z), s.dim))
    return SetFamily(tuple(out), fam.dim, fam.meta)


def _meet(sa, sb, config):
    if isinstance(sa, Exterior) or isinstance(sb, Exterior):
        raise UnsupportedShapeCombo("intersections with exteriors are not representable as shapes")
    if isinstance(sa, Box) and isinstance(sb, Box):
        lo = tuple(maximum(a, b) for a, b in zip(sa.lo, sb.lo))
        hi = tuple(minimum(a, b) for a, b in zip(sa.hi, sb.hi))
        if all(_decide(b - a, "intersection emptiness", config) for a, b in zip(lo, hi)):
            return [Box(lo, hi)]
        return []
    if isinstance(sb, Points):
        sa, sb = sb, sa
    keep = []
    for p in sa.points:
        if isinstance(sb, Points):
            hit = any(all(_is_zero_net(x - y, config) for x, y in zip(p, q)) for q in sb.points)
        else:
            hit = all(_decide(x - lo, "point in box", config) and _decide(hi - x, "point in box", config)
                      for x, lo, hi in zip(p, sb.lo, sb.hi))
        if hit:
            keep.append(p)
    return [Points(tuple(keep))] if keep else []


def raw_intersection(A, B, config=DEFAULT) -> SetFamily:
    """Per-eps intersection of two representatives.

    This depends on the representatives chosen: ``{0}`` and ``{eps**(1/eps)}``
    generate the same internal set yet meet nowhere.
    """
    fa, fb = as_family(A), as_family(B)
    _check_dim(fa.dim, fb.dim)
    out = []
    for sa in fa.shapes:
        for sb in fb.shapes:
            out.extend(_meet(sa, sb, config))
    return SetFamily(tuple(out), fa.dim)


def refined_intersection_contains(A, B, u, depth: int = 8, config=DEFAULT) -> bool:
    """Membership of ``u`` in ``[(fatten(A,m) & fatten(B,m))]`` for every ``m <= depth``."""
    for m in range(1, depth + 1):
        if not contains(raw_intersection(fatten(A, m), fatten(B, m), config), u, config):
            return False
    return True


def product(A, B) -> InternalSet:
    fa, fb = as_family(A), as_family(B)
    out = []
    for sa in fa.shapes:
        for sb in fb.shapes:
            if isinstance(sa, Exterior) or isinstance(sb, Exterior):
                raise UnsupportedShapeCombo("products with exteriors are not representable as shapes")
            if isinstance(sa, Points) and isinstance(sb, Points):
                out.append(Points(tuple(VecNet(tuple(p) + tuple(q))
                                        for p in sa.points for q in sb.points)))
                continue
            boxes_a = [sa] if isinstance(sa, Box) else [Box(tuple(p), tuple(p)) for p in sa.points]
            boxes_b = [sb] if isinstance(sb, Box) else [Box(tuple(q), tuple(q)) for q in sb.points]
            out.extend(Box(a.lo + b.lo, a.hi + b.hi) for a in boxes_a for b in boxes_b)
    return InternalSet(SetFamily(tuple(out), fa.dim + fb.dim))


def _project_shape(s, coords):
    if isinstance(s, Box):
        return Box(tuple(s.lo[i] for i in coords), tuple(s.hi[i] for i in coords))
    if isinstance(s, Points):
        return Points(tuple(p.project(coords) for p in s.points))
    raise UnsupportedShapeCombo("projections of exteriors are not representable as shapes")


@dataclass(frozen=True)
class Projection:
    set: InternalSet
    verified: bool


def project(A, coords, strict: bool = True, config=DEFAULT) -> Projection:
    """Coordinate projection; internal when A has a sharply bounded representative.

    Without that bound only the upper estimate ``[(proj A_eps)]`` is available:
    ``strict`` raises, otherwise it is returned tagged as unverified.
    """
    fam = as_family(A)
    coords = list(coords)
    if not coords or any(not 0 <= i < fam.dim for i in coords):
        raise ValueError(f"bad coordinate list {coords} for dimension {fam.dim}")
    bounded = is_sharply_bounded(fam, config).bounded
    if not bounded and strict:
        raise NotSharplyBounded("projection of a set without a sharply bounded representative")
    shapes = tuple(_project_shape(s, coords) for s in fam.shapes)
    return Projection(InternalSet(SetFamily(shapes, len(coords))), bounded)


# -- the sharp unit ball -------------------------------------------------------

def sharp_ball_larger_member(u, config=DEFAULT):
    """For ``u`` in ``{x : [[x]] < 1}`` return ``v = eps**(c/2)`` with ``c = nu(u)``.

    ``v`` is again in the ball and ``|v| > |u|`` eventually, so the ball has no
    element of maximal norm.  Returns ``(v, certified)``.
    """
    u = as_net(u)
    c = valuation(u, config)
    if not 0 < c < math.inf:
        raise ValueError(f"expected 0 < nu(u) < inf, got {c}")
    v = PiecewiseNet.monomial(1, c / 2)
    in_ball = valuation(v, config) > 0
    bigger = eventual_sign_set(v - absolute(u), config) == {1}
    return v, in_ball and bigger
