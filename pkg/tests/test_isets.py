import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colombeau.errors import EmptyClip, NotSharplyBounded, UnsupportedShapeCombo
from colombeau.isets import (
    Box,
    Exterior,
    Interval,
    Points,
    SetFamily,
    contains,
    equality_report,
    fatten,
    interleave,
    internal_union,
    is_sharply_bounded,
    max_norm,
    min_distance,
    parse_set,
    product,
    project,
    raw_intersection,
    refined_intersection_contains,
    sharp_ball_larger_member,
    subset_report,
    trim_bounded,
)
from colombeau.nets import CombPattern, PiecewiseNet, PowerSum, VecNet, gen_eq, sample
from colombeau.nets.calculus import eventually_nonneg

E = PiecewiseNet.monomial(1, 1)
NEGL = PiecewiseNet.constant(PowerSum.make([], negl=True))
COMB = CombPattern.comb(0.5, 0.5, 2, 0)
C = PiecewiseNet.constant


def ps(*terms, negl=False):
    return PiecewiseNet.constant(PowerSum.make(terms, negl=negl))


# -- grammar ------------------------------------------------------------------------

def test_parse_shapes_and_print():
    fam = parse_set("interval(0,1) | points((1*eps^1);(2)) | exterior(1*eps^-3)")
    assert fam.dim == 1 and len(fam.shapes) == 3
    assert str(parse_set(str(fam))) == str(fam)
    box = parse_set("box(interval(0,1),interval(2,3))")
    assert box.dim == 2
    assert parse_set("empty").is_empty


def test_invalid_interval_rejected():
    with pytest.raises(ValueError):
        parse_set("interval(1,0)")


# -- contains -------------------------------------------------------------------------

def test_contains_examples():
    m = contains(parse_set("interval(0,1*eps^-1)"), ps((1, -1)))
    assert m.member and m.exact and m.distance.is_zero
    assert contains(parse_set("points((0))"), NEGL).member
    m = contains(parse_set("interval(0,1)"), ps((1, 0), (1, 3)))
    assert not m.member and m.distance == ps((1, 3))


def test_contains_on_sampled_backend():
    A = parse_set("interval(0,1)")
    assert contains(A, VecNet((sample(ps((1, 0), (-1, 2))),))).member
    assert not contains(A, VecNet((sample(ps((1, 0), (1, 3))),))).member


def test_contains_empty_family():
    assert not contains(SetFamily.empty(1), C(0)).member


# -- boundedness and trimming -------------------------------------------------------------

def test_sharply_bounded_examples():
    r = is_sharply_bounded(parse_set("interval(-1*eps^-2,1*eps^-2)"))
    assert r.bounded and r.M == 2
    assert not is_sharply_bounded(parse_set("exterior(1*eps^-3)")).bounded
    r = is_sharply_bounded(parse_set("interval(0,1 + NEGL)"))
    assert r.bounded and r.M == 0


def test_trim_examples():
    A = parse_set("interval(0,1)")
    assert equality_report(trim_bounded(A, 0), A).holds
    with pytest.raises(EmptyClip):
        trim_bounded(parse_set("points((1*eps^-2))"), 1)
    # the far component is clipped away: its points exceed eps^-1 + 1
    far = parse_set("interval(0,1*eps^-1) | interval(1*eps^-5,1*eps^-5 + 1)")
    t = trim_bounded(far, 1)
    assert equality_report(t, parse_set("interval(0,1*eps^-1)")).holds


def test_trim_exterior_becomes_boxes():
    t = trim_bounded(parse_set("exterior(1)"), 2)
    assert all(isinstance(s, Box) for s in t.shapes)
    assert contains(t, ps((1, -2))).member and not contains(t, C(0)).member


# -- extrema ------------------------------------------------------------------------------

def test_min_distance_examples():
    d, (u, v) = min_distance(parse_set("interval(0,1)"), parse_set("interval(2,3)"))
    assert d.rep == C(1) and u[0] == C(1) and v[0] == C(2)
    d, _ = min_distance(parse_set("interval(0,1)"), parse_set("interval(1 - 1*eps^1,3)"))
    assert d.rep.is_zero
    d, _ = min_distance(parse_set("points((0))"), parse_set("points((NEGL))"))
    assert gen_eq(d.rep, C(0)) and raw_intersection(parse_set("points((0))"), parse_set("points((NEGL))")).is_empty


def test_min_distance_requires_bounded():
    with pytest.raises(NotSharplyBounded):
        min_distance(parse_set("exterior(1)"), parse_set("points((0))"))


def test_min_distance_to_exterior():
    d, (u, v) = min_distance(parse_set("points((0))"), parse_set("exterior(1*eps^-2)"))
    assert gen_eq(d.rep, ps((1, -2)))
    assert contains(parse_set("exterior(1*eps^-2)"), v).member


def test_min_distance_beats_samples():
    rng = random.Random(3)
    A = parse_set("interval(0,1) | interval(3,4)")
    B = parse_set("interval(1 + 1*eps^2,2) | points((5))")
    d, _ = min_distance(A, B)
    for _ in range(20):
        a = C(rng.choice([0, 1, 3, 4]))
        b = rng.choice([ps((1, 0), (1, 2)), C(2), C(5)])
        assert eventually_nonneg(abs(a - b) - d.rep)


def test_max_norm_examples():
    m, w = max_norm(parse_set("interval(0,1*eps^-2)"))
    assert gen_eq(m.rep, ps((1, -2))) and gen_eq(w[0], ps((1, -2)))
    m, _ = max_norm(parse_set("points((0))"))
    assert m.rep.is_zero


def test_sharp_ball_has_no_maximum():
    for c in (1, 2, 5):
        u = ps((3, c), (1, c + 1))
        v, certified = sharp_ball_larger_member(u)
        assert certified
        assert (v - abs(u)).eventual_signs() == {1}


# -- interleaving and unions ---------------------------------------------------------------

def test_interleave_examples():
    u = VecNet((E,))
    assert interleave([(u, CombPattern.tail())])[0] == E
    A = parse_set("interval(0,1)")
    s = interleave([(VecNet((C(0),)), COMB), (VecNet((C(1),)), CombPattern.tail())])
    assert contains(A, s).member
    P = parse_set("points((0);(1))")
    assert contains(P, s).member
    assert not gen_eq(s[0], C(0)) and not gen_eq(s[0], C(1))


def test_union_examples():
    A, B = parse_set("interval(0,1)"), parse_set("interval(2,3)")
    U = internal_union(A, B)
    s = interleave([(VecNet((C(0),)), COMB), (VecNet((C(3),)), CombPattern.tail())])
    assert contains(U, s).member
    assert equality_report(internal_union(A, A), A).holds
    assert equality_report(internal_union(A, SetFamily.empty(1)), A).holds
    assert subset_report(A, U).holds


# -- inclusion and equality --------------------------------------------------------------------

def test_subset_examples():
    r = subset_report(parse_set("interval(0,1)"), parse_set("interval(NEGL,1 + NEGL)"))
    assert r.holds and r.exact
    r = subset_report(parse_set("interval(0,1 + 1*eps^3)"), parse_set("interval(0,1)"))
    assert not r.holds and r.delta == ps((1, 3))


def test_subset_gap_midpoint():
    # B has a gap of width 2 eps in the middle of A: the midpoint is eps away from B
    A = parse_set("interval(0,2)")
    B = parse_set("interval(0,1 - 1*eps^1) | interval(1 + 1*eps^1,2)")
    r = subset_report(A, B)
    assert not r.holds and r.delta == E


def test_equality_examples():
    assert equality_report(parse_set("points((0))"), parse_set("points((NEGL))")).holds
    r = equality_report(parse_set("interval(0,1)"), parse_set("interval(0,1 + 1*eps^3)"))
    assert not r.holds and r.delta == ps((1, 3))
    # a representative and its closure: a degenerate interval equals the point
    assert equality_report(parse_set("interval(1*eps^1,1*eps^1)"), parse_set("points((1*eps^1))")).holds


def test_subset_box_and_points():
    A = parse_set("points((0,1);(1,1))")
    B = parse_set("box(interval(0,1),interval(1,2))")
    assert subset_report(A, B).holds
    assert not subset_report(B, A).holds


# -- fattening and intersections -----------------------------------------------------------

def test_fatten_examples():
    F = fatten(parse_set("interval(0,1)"), 3)
    assert F.shapes[0].lo[0] == ps((-1, 3)) and F.shapes[0].hi[0] == ps((1, 0), (1, 3))
    for m in range(1, 6):
        assert contains(fatten(parse_set("points((1*eps^1))"), m), E).member


def test_refined_intersection():
    Z, N = parse_set("points((0))"), parse_set("points((NEGL))")
    assert raw_intersection(Z, N).is_empty
    assert refined_intersection_contains(Z, N, C(0))
    assert not refined_intersection_contains(Z, N, C(1))


def test_intersection_with_exterior_unsupported():
    with pytest.raises(UnsupportedShapeCombo):
        raw_intersection(parse_set("exterior(1)"), parse_set("interval(0,1)"))


# -- products and projections ----------------------------------------------------------------

def test_product_examples():
    P = product(parse_set("interval(0,1)"), parse_set("interval(2,3)"))
    assert contains(P, VecNet((C(0.5), ps((2, 0), (1, 1))))).member
    assert product(parse_set("interval(0,1)"), SetFamily.empty(1)).family.is_empty
    with pytest.raises(UnsupportedShapeCombo):
        product(parse_set("exterior(1)"), parse_set("interval(0,1)"))


def test_project_examples():
    P = project(parse_set("box(interval(0,1),interval(2,3))"), [0])
    assert P.verified and equality_report(P.set, parse_set("interval(0,1)")).holds
    P = project(parse_set("points((1*eps^1,1*eps^2))"), [0])
    assert equality_report(P.set, parse_set("points((1*eps^1))")).holds
    unbounded = parse_set("box(interval(0,1*eps^-1),interval(0,1))")
    assert project(unbounded, [1]).verified
    far = SetFamily((Exterior(C(1), 2),), 2)
    with pytest.raises(NotSharplyBounded):
        project(far, [0])


coefs = st.integers(-3, 3)


@st.composite
def intervals(draw):
    lo = ps((draw(coefs), 0), (draw(coefs), draw(st.integers(1, 3))))
    w = ps((draw(st.integers(0, 3)), 0), (draw(st.integers(1, 2)), draw(st.integers(1, 3))))
    return Interval(lo, lo + w)


@st.composite
def points_in(draw, iv):
    t = draw(st.sampled_from([0, 1, 2, 3, 4])) / 4
    return iv.lo[0] + (iv.hi[0] - iv.lo[0]).scale(t)


@settings(max_examples=40, deadline=None)
@given(intervals(), intervals(), st.data())
def test_product_membership_factorizes(ia, ib, data):
    A, B = SetFamily((ia,), 1), SetFamily((ib,), 1)
    P = product(A, B)
    a = data.draw(points_in(ia)) + ps((data.draw(st.sampled_from([0, 1])), 2))
    b = data.draw(points_in(ib))
    both = contains(A, a).member and contains(B, b).member
    assert contains(P, VecNet((a, b))).member == both


@settings(max_examples=40, deadline=None)
@given(intervals(), intervals())
def test_subset_of_union_and_symmetry(ia, ib):
    A, B = SetFamily((ia,), 1), SetFamily((ib,), 1)
    U = internal_union(A, B)
    assert subset_report(A, U).holds and subset_report(B, U).holds
    assert equality_report(A, B).holds == equality_report(B, A).holds


def test_exterior_printing():
    assert str(parse_set("exterior(2,3)")) == "exterior(2,3)"
    assert isinstance(parse_set("points((0))").shapes[0], Points)
