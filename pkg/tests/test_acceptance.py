"""Acceptance criteria, one test per criterion.

Each test records ``(passed, detail)`` in ``conftest.ACCEPTANCE``; the
terminal summary prints one PASS/FAIL line per criterion.  Running this file
directly prints the same lines without pytest.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from colombeau import isets
from colombeau.config import DEFAULT
from colombeau.errors import MissingBound
from colombeau.ifuncs import (
    continuity_modulus,
    eval_at,
    image_membership,
    make_graph,
    zero_set_demo,
)
from colombeau.isets import Interval, SetFamily, parse_set
from colombeau.mollifier import build_base, build_vanishing, l1_factor, lift_coefficients
from colombeau.nets import (
    PiecewiseNet,
    PowerSum,
    gen_eq,
    sample,
    sharp_norm,
    valuation,
)
from colombeau.saturation import (
    BallChain,
    ChainEntry,
    ChainSpec,
    cauchy_limit,
    nested_balls_witness,
    saturation_witness,
)

try:
    from conftest import ACCEPTANCE, random_net, random_sum
except ImportError:  # pragma: no cover - imported as a package
    from .conftest import ACCEPTANCE, random_net, random_sum

pytestmark = pytest.mark.acceptance

EPS = PiecewiseNet.monomial(1, 1)
NEGL = PiecewiseNet.constant(PowerSum.make([], negl=True))


def net(*terms, negl=False):
    return PiecewiseNet.constant(PowerSum.make(terms, negl=negl))


def record(n: int, checks: dict, extra: str = "") -> None:
    failed = [k for k, ok in checks.items() if not ok]
    detail = extra + (f" failed: {', '.join(failed)}" if failed else "")
    ACCEPTANCE[n] = (not failed, detail.strip())
    assert not failed, detail


# -- 1 ------------------------------------------------------------------------------

def test_criterion_1_mollifier_identities():
    t0 = time.perf_counter()
    tree = build_vanishing(8, 0.1, build_base(DEFAULT.quad_rtol))
    gl = tree.moments_gl(8)
    simpson, _ = tree.moments_simpson(8)
    l1 = tree.l1_norm()
    outside = np.concatenate([np.linspace(-3, -1, 2001)[:-1], np.linspace(1, 3, 2001)[1:]])
    levels_ok = all(abs(lv.a + lv.b * lv.eta - 1) <= 1e-14 and
                    abs(lv.a + lv.b * lv.eta ** (lv.n + 1)) <= 1e-14 for lv in tree.levels)
    prev, growth_ok = 1.0, True
    for lv in tree.levels:
        measured = tree.prefix(lv.n).l1_norm()
        growth_ok &= measured <= l1_factor(lv.eta, lv.n) * prev + 1e-9
        prev = measured
    runtime = time.perf_counter() - t0
    record(1, {
        "mass": abs(gl[0] - 1) <= 1e-9,
        "moments": bool(np.all(np.abs(gl[1:]) <= 1e-8)),
        "dual quadrature": bool(np.all(np.abs(gl - simpson) <= 1e-11)),
        "L1 budget": l1 <= 1.1 + 1e-6,
        "support": bool(np.all(tree(outside) == 0)),
        "level identities": levels_ok,
        "L1 growth": growth_ok,
        "runtime": runtime < 10,
    }, f"max|m_k|={np.max(np.abs(gl[1:])):.1e} L1={l1:.6f} t={runtime:.2f}s")


# -- 2 ------------------------------------------------------------------------------

def test_criterion_2_lift_coefficients():
    a, b = lift_coefficients(0.5, 1)
    # direct evaluation of the closed forms with exact rationals
    eta = Fraction(1, 2)
    a_direct = -eta / (1 - eta)
    b_direct = 1 / (eta - eta ** 2)
    record(2, {"a": a == a_direct == -1, "b": b == b_direct == 4}, f"a={a} b={b}")


# -- 3 ------------------------------------------------------------------------------

def test_criterion_3_saturation():
    t0 = time.perf_counter()
    fams = {n: SetFamily((isets.Box((-EPS ** n,), (EPS ** n,)),), 1) for n in range(1, 21)}
    chain = ChainSpec.build([ChainEntry(n, 0, fams[n]) for n in range(1, 21)])
    w = saturation_witness(chain, n_max=20)
    x = w.net[0]
    nu = valuation(x)
    members = all(isets.contains(fams[k], w.net).member for k in range(1, 21))
    runtime = time.perf_counter() - t0
    ext = [ChainEntry(n, None, parse_set(f"exterior(1*eps^-{n})")) for n in range(1, 6)]
    try:
        ChainSpec.build(ext)
        refused = False
    except MissingBound:
        refused = True
    record(3, {"valuation": nu >= 19, "memberships": members, "exterior refused": refused,
               "runtime": runtime < 5}, f"nu(witness)={nu} t={runtime:.2f}s")


# -- 4 ------------------------------------------------------------------------------

def partial(n, scale=EPS):
    total = PiecewiseNet.constant(0)
    for k in range(n + 1):
        total = total + scale ** k
    return total


def test_criterion_4_spherical_completeness():
    t0 = time.perf_counter()
    centers = [partial(n) for n in range(1, 21)]
    radii = [math.exp(-(n + 1)) for n in range(1, 21)]
    # exact: consecutive centres are nested balls
    nested = all(sharp_norm(centers[i + 1] - centers[i]) <= radii[i] for i in range(19))
    w = nested_balls_witness(BallChain(tuple(centers), tuple(radii)))
    runtime = time.perf_counter() - t0
    worst = max(d / r for _, d, r in w.distances)
    record(4, {"symbolic nesting": nested, "witness in every ball": w.ok, "runtime": runtime < 5},
           f"max [[x-a_n]]/r_n={worst:.4f} t={runtime:.2f}s")


# -- 5 ------------------------------------------------------------------------------

def test_criterion_5_sharp_completeness():
    seq = [partial(j) for j in range(31)]
    L = cauchy_limit(seq)
    table = dict(L.table)
    errs = {j: abs(table[j] - (j + 1)) for j in range(16)}
    worst = max(errs.values())
    record(5, {"valuations": worst <= 0.05}, f"max |nu(u_j-L)-(j+1)|={worst:.4f} for j<=15")


# -- 6 ------------------------------------------------------------------------------

def _covers(a_ints, b_ints) -> bool:
    """Per-eps oracle: is every interval of A covered by the union of B's intervals?"""
    b_ints = sorted(b_ints)
    for lo, hi in a_ints:
        reach = lo
        for blo, bhi in b_ints:
            if blo <= reach <= bhi:
                reach = max(reach, bhi)
        if reach < hi:
            return False
    return True


def _at(fam, eps):
    return [(s.lo[0].evaluate(eps), s.hi[0].evaluate(eps)) for s in fam.shapes]


def oracle_subset(A, B) -> bool:
    from colombeau._mp import mp
    answers = {_covers(_at(A, mp.mpf(2) ** -k), _at(B, mp.mpf(2) ** -k)) for k in (60, 80, 100)}
    assert len(answers) == 1, "oracle grid is not yet in the eventual regime"
    return answers.pop()


def _endpoint(rng):
    return net((Fraction(rng.randint(-4, 4), rng.randint(1, 3)), 0),
               (rng.randint(-2, 2), rng.choice([1, Fraction(3, 2), 2])))


def _width(rng):
    if rng.random() < 0.2:
        return net((1, rng.choice([1, 2])))
    return net((Fraction(rng.randint(1, 4), 2), 0), (rng.randint(-2, 2), 1))


def random_interval(rng):
    lo = _endpoint(rng)
    return lo, lo + _width(rng)


def perturb(rng, lo, hi):
    """B built near A so that both inclusion outcomes are common."""
    j = rng.choice([1, 2, 3])
    shift = lambda: net((rng.choice([-1, 0, 0, 1]), j))  # noqa: E731
    lo2, hi2 = lo + shift(), hi + shift()
    if eventual_nonneg(hi2 - lo2) is False:
        lo2, hi2 = lo, hi
    if rng.random() < 0.4:
        mid = (lo2 + hi2).scale(Fraction(1, 2))
        gap = net((rng.choice([-1, 0, 1]), j + 1))
        return [(lo2, mid), (mid + gap, hi2)] if eventual_nonneg(hi2 - mid - gap) else [(lo2, hi2)]
    return [(lo2, hi2)]


def eventual_nonneg(x):
    from colombeau.nets.calculus import eventually_nonneg
    return eventually_nonneg(x)


def family(ints):
    return SetFamily(tuple(Interval(lo, hi) for lo, hi in ints), 1)


def random_pair(rng):
    a_ints = [random_interval(rng) for _ in range(rng.randint(1, 2))]
    mode = rng.random()
    if mode < 0.6:
        b_ints = [iv for lo, hi in a_ints for iv in perturb(rng, lo, hi)]
    else:
        b_ints = [random_interval(rng) for _ in range(rng.randint(1, 2))]
    if rng.random() < 0.3:
        b_ints.append(random_interval(rng))
    return family(a_ints), family(b_ints)


def closed_sequence(rng):
    """Members u_n of a random interval family converging to a limit L."""
    lo, hi = random_interval(rng)
    A = family([(lo, hi), random_interval(rng)])
    thetas = [Fraction(rng.randint(0, 4), 8) for _ in range(60)]
    start = lo if rng.random() < 0.5 else hi
    sgn = 1 if start is lo else -1

    def approx(n):
        s = PiecewiseNet.constant(0)
        for k in range(1, n + 1):
            s = s + (EPS ** k).scale(thetas[k - 1])
        return start + ((hi - lo) * s).scale(sgn)
    return A, [approx(n) for n in range(1, 21)], approx(60)


def test_criterion_6_internal_set_calculus():
    zero = parse_set("points((0))")
    negl = parse_set("points((NEGL))")
    eq = isets.equality_report(zero, negl)
    raw = isets.raw_intersection(zero, negl)
    refined = isets.refined_intersection_contains(zero, negl, PiecewiseNet.constant(0))
    part_a = eq.holds and raw.is_empty and refined

    rng = random.Random(6)
    disagree, included, equal = 0, 0, 0
    for _ in range(200):
        A, B = random_pair(rng)
        sub, sup = oracle_subset(A, B), oracle_subset(B, A)
        included += sub
        equal += sub and sup
        if isets.subset_report(A, B).holds != sub or isets.equality_report(A, B).holds != (sub and sup):
            disagree += 1

    rng = random.Random(66)
    hits = 0
    for _ in range(50):
        A, seq, limit = closed_sequence(rng)
        ok = all(isets.contains(A, u).member for u in seq)
        ok &= all(valuation(u - limit) >= n + 1 for n, u in enumerate(seq, start=1))
        hits += ok and isets.contains(A, limit).member
    record(6, {"(a) intersections": part_a, "(b) oracle agreement": disagree == 0,
               "(c) closedness": hits == 50},
           f"(b) {disagree} disagreements, {included} inclusions, {equal} equalities; (c) {hits}/50")


# -- 7 ------------------------------------------------------------------------------

def test_criterion_7_attained_extrema():
    A = parse_set("interval(0,1*eps^-2)")
    m, wit = isets.max_norm(A)
    max_ok = (gen_eq(m.rep, net((1, -2))) and isets.contains(A, wit).member
              and gen_eq(wit.norm(), m.rep))
    d, (u, v) = isets.min_distance(parse_set("interval(0,1)"), parse_set("interval(2,3)"))
    min_ok = d.rep == PiecewiseNet.constant(1) and gen_eq((u - v).norm(), d.rep)
    rng = random.Random(7)
    certified = 0
    for _ in range(20):
        c = Fraction(rng.randint(1, 12), rng.randint(1, 4))
        u = net((rng.choice([-3, -1, 1, 2]), c), (rng.randint(-5, 5), c + 1), negl=rng.random() < 0.3)
        v, cert = isets.sharp_ball_larger_member(u)
        larger = eventual_nonneg(v - abs(u)) and not gen_eq(v, abs(u))
        certified += cert and larger and 0 < valuation(v) < math.inf
    record(7, {"max norm": max_ok, "min distance": min_ok, "sharp ball": certified == 20},
           f"sharp-ball certified {certified}/20")


# -- 8 ------------------------------------------------------------------------------

def test_criterion_8_internal_functions():
    G = make_graph("x^2/(1+x^2)", parse_set("interval(-1,1)"))
    rng = random.Random(8)
    same = 0
    for i in range(50):
        x = net((Fraction(rng.randint(-4, 4), 9), 0), (rng.randint(-2, 2), rng.choice([1, 2])))
        y = x + (NEGL if i % 2 else net((1, 30)))
        same += gen_eq(eval_at(G, x).value.rep, eval_at(G, y).value.rep)
    moduli = [continuity_modulus(G, n).m for n in range(1, 11)]
    mod_ok = all(m <= n + 1 for n, m in enumerate(moduli, start=1))
    rejects = not image_membership(G, PiecewiseNet.constant(1)).member
    accepts = image_membership(G, PiecewiseNet.constant(Fraction(1, 2))).member
    demo = zero_set_demo()
    record(8, {"representative independence": same == 50, "modulus": mod_ok,
               "image rejects 1": rejects, "image accepts 1/2": accepts,
               "zero-set demo": demo.ok and len(demo.rows) == 3},
           f"gen_eq {same}/50, m(n)={moduli}")


# -- 9 ------------------------------------------------------------------------------

def _leading_gap(x: PiecewiseNet) -> float:
    gaps = []
    for s in x.recurring():
        if len(s.terms) >= 2:
            gaps.append(float(s.terms[1][1] - s.terms[0][1]))
    return min(gaps, default=math.inf)


def test_criterion_9_net_calculus():
    rng = random.Random(9)
    ultra = 0
    for _ in range(500):
        x, y = random_net(rng), random_net(rng)
        sx, sy, sxy = sharp_norm(x), sharp_norm(y), sharp_norm(x + y)
        ok = sxy <= max(sx, sy)
        if sx != sy:
            ok &= sxy == max(sx, sy)
        ultra += ok
    additive = 0
    for _ in range(500):
        x, y = PiecewiseNet.constant(random_sum(rng)), PiecewiseNet.constant(random_sum(rng))
        # exact Fraction valuations; None stands for +inf
        nx, ny, nxy, ns = (v.exact_valuation() for v in (x, y, x * y, x + y))
        ok = nxy == nx + ny if None not in (nx, ny) else nxy is None
        ok &= ns is None or ns >= min(v for v in (nx, ny) if v is not None)
        additive += ok
    trips, worst = 0, 0.0
    while trips < 100:
        x = random_net(rng)
        if _leading_gap(x) < 0.5 or valuation(x) == math.inf:
            continue
        err = abs(sample(x).valuation() - valuation(x))
        worst = max(worst, err)
        trips += 1
    record(9, {"ultrametric": ultra == 500, "nu-additivity": additive == 500,
               "round trip": worst <= 0.05},
           f"ultrametric {ultra}/500, additivity {additive}/500, round-trip max err {worst:.4f}")


if __name__ == "__main__":  # pragma: no cover
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
