"""Bump normalization, the lifting recursion, quadratures and the diagonal mollifier."""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from colombeau.errors import BudgetInfeasible, PreconditionMomentFailure, QuadratureFailure
from colombeau.mollifier import (
    MOMENT_TOL,
    Level,
    MollifierTree,
    adaptive_simpson,
    assemble_generalized,
    build_base,
    build_vanishing,
    derivative_poly,
    gauss_legendre,
    l1_factor,
    lift_coefficients,
    lift_order,
    moment_report,
    sign_changes,
    tensorize,
)

C_REF = 2.252283621043581


@pytest.fixture(scope="module")
def base():
    return build_base()


@pytest.fixture(scope="module")
def tree4(base):
    return build_vanishing(4, 0.5, base)


@pytest.fixture(scope="module")
def bump_moments():
    """Moments of the normalized bump computed independently with mpmath."""
    with mpmath.workdps(30):
        raw = [mpmath.quad(lambda x, k=k: x ** k * mpmath.exp(-1 / (1 - x * x)), [-1, 0, 1])
               for k in range(12)]
        return [float(r / raw[0]) for r in raw]


# -- the bump ---------------------------------------------------------------------

def test_normalizing_constant(base):
    assert base.C == pytest.approx(C_REF, rel=1e-11)
    assert float(base(np.array([0.0]))[0]) == pytest.approx(C_REF * math.exp(-1), rel=1e-11)
    assert np.all(base(np.array([-1.0, 1.0, 1.5, -3.0])) == 0)


def test_bump_derivatives_match_mpmath(base):
    f = lambda x: base.C * mpmath.exp(-1 / (1 - x * x))  # noqa: E731
    xs = np.array([-0.7, -0.2, 0.1, 0.55, 0.9])
    for j in range(1, 5):
        ours = base.derivative(xs, j)
        ref = [float(mpmath.diff(f, mpmath.mpf(x), j)) for x in xs]
        assert ours == pytest.approx(ref, rel=1e-8, abs=1e-12)


def test_derivative_polynomial_first_order():
    # d/dx exp(-u) = -2 x u^2 exp(-u)
    assert derivative_poly(1) == ((1, 2, -2.0),)


def test_derivatives_vanish_near_the_edge(base):
    v = base.derivative(np.array([0.999, -0.999]), 6)
    assert np.all(np.isfinite(v)) and np.all(np.abs(v) < 1e-100)


# -- lifting ------------------------------------------------------------------------

def test_lift_coefficients_solve_the_two_conditions():
    for eta in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 10)):
        for n in range(1, 6):
            a, b = lift_coefficients(eta, n)
            assert a + b * eta == 1
            assert a + b * eta ** (n + 1) == 0
            assert abs(a) + abs(b) * eta == l1_factor(eta, n)


def test_order_zero_is_the_bump(base):
    t = build_vanishing(0, 0.5, base)
    xs = np.linspace(-1.2, 1.2, 41)
    assert np.array_equal(t(xs), base(xs))
    assert t.moments_gl(0)[0] == pytest.approx(1, abs=1e-12)


def test_order_four_moments_and_budget(tree4):
    rows = moment_report(tree4, 4)
    assert rows[0].moment == pytest.approx(1, abs=1e-9)
    assert all(abs(r.moment) <= 1e-9 for r in rows[1:])
    assert all(r.error < 1e-9 for r in rows)
    assert tree4.levels[-1].l1 <= 1.5
    assert tree4.l1_norm() == pytest.approx(tree4.l1_norm_simpson(), rel=1e-7)


def test_tree_is_supported_in_the_unit_interval(tree4):
    xs = np.array([-1.5, -1.0, 1.0, 1.0001, 3.0])
    assert np.all(tree4(xs) == 0)


def test_flattened_tree_matches_the_recursion(tree4):
    xs = np.linspace(-1, 1, 301)
    assert tree4(xs) == pytest.approx(tree4.evaluate_recursive(xs), abs=1e-9)


def test_odd_moments_vanish_by_symmetry(tree4):
    m = tree4.moments_gl(9)
    assert np.all(np.abs(m[1::2]) < 1e-10)


def test_moments_agree_with_the_mpmath_oracle(tree4, bump_moments):
    gl = tree4.moments_gl(8)
    exact = tree4.moments_exact(8, bump_moments)
    assert gl == pytest.approx(exact, abs=1e-10)
    # the first surviving even moment is predicted by the scales
    assert exact[6] != 0 and gl[6] == pytest.approx(exact[6], rel=1e-6)


def test_derivative_recurrence_matches_mpmath(tree4, base):
    s, c = tree4.terms()

    def ref(x):
        return sum(ci * base.C * mpmath.exp(-1 / (1 - (x / si) ** 2)) if abs(x) < si else 0
                   for si, ci in zip(s, c))
    for x in (0.03, 0.2, -0.4):
        got = float(tree4.derivative(np.array([x]), 2)[0])
        want = float(mpmath.diff(ref, mpmath.mpf(x), 2))
        assert got == pytest.approx(want, rel=1e-6)


def test_lift_checks_its_precondition(base):
    bad = MollifierTree(base, (Level(1, 0.5, 0.3, 0.3, 1.0, 1.0),))
    with pytest.raises(PreconditionMomentFailure):
        lift_order(bad, 0.5)


def test_impossible_budget(base):
    with pytest.raises(BudgetInfeasible):
        lift_order(MollifierTree(base), 1e-30)


def test_invalid_arguments(base):
    with pytest.raises(ValueError):
        build_vanishing(-1, 0.5, base)
    with pytest.raises(ValueError):
        build_vanishing(2, 0.0, base)


# -- several dimensions -----------------------------------------------------------------

def test_tensor_product_in_two_dimensions(base, tree4):
    # coarse scales (1 and 1/2) so a plain grid sum resolves the mass
    coarse = lift_order(MollifierTree(base), 1.0, eta=0.5)
    psi = tensorize(coarse, 2)
    g = np.linspace(-1, 1, 801)
    X, Y = np.meshgrid(g, g)
    vals = psi(np.stack([X, Y], axis=-1))
    h = g[1] - g[0]
    assert vals.sum() * h * h == pytest.approx(1, abs=1e-4)
    # support inside the Euclidean unit ball
    assert np.all(vals[X ** 2 + Y ** 2 > 1 + 1e-12] == 0)
    psi = tensorize(tree4, 2)
    m = tree4.moments_gl(6)
    assert psi.moment((2, 3)) == pytest.approx(m[2] * m[3] / 2 ** 2.5, abs=1e-15)
    assert psi.moment((0, 0)) == pytest.approx(1, abs=1e-12)
    with pytest.raises(ValueError):
        psi(np.zeros(3))
    with pytest.raises(ValueError):
        tensorize(tree4, 0)


# -- the diagonal ------------------------------------------------------------------------

def test_diagonal_thresholds(tree4):
    table = assemble_generalized(tree4, k_max=30)
    eps = [r.eps for r in table.rows]
    assert all(b < a for a, b in zip(eps, eps[1:]))
    assert all(r.eps <= min(1 / r.M, 0.5 ** (r.n + 1)) * (1 + 1e-12) for r in table.rows)
    assert table.ok
    assert all(v <= MOMENT_TOL for _, _, v in table.checks)
    assert table.level_at(1.0) == 0
    assert table.level_at(eps[-1] / 2) == tree4.order
    assert table.member(eps[2]).order == 2


# -- quadrature helpers ---------------------------------------------------------------------

def test_quadratures_on_smooth_integrands():
    f = lambda x: np.vstack([np.cos(x), x ** 5])  # noqa: E731
    gl = gauss_legendre(f, [0.0, 1.0, 2.0])
    simp, err = adaptive_simpson(f, 0.0, 2.0, 1e-12)
    ref = [math.sin(2.0), 2.0 ** 6 / 6]
    assert gl == pytest.approx(ref, rel=1e-14)
    assert simp == pytest.approx(ref, rel=1e-11)
    assert np.all(err < 1e-10)


def test_simpson_refuses_empty_interval():
    with pytest.raises(QuadratureFailure):
        adaptive_simpson(lambda x: x[None, :], 1.0, 1.0, 1e-9)


def test_sign_changes_finds_roots():
    roots = sign_changes(np.sin, [0.5, 10.0])
    assert roots == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-12)
