"""Diagonal witnesses for decreasing chains, nested sharp balls and Cauchy limits."""

import math

import pytest

from colombeau.errors import (
    ChainNotDecreasing,
    EmptyEntry,
    MissingBound,
    NotCauchy,
    NotNested,
    SequenceTooShort,
)
from colombeau.isets.grammar import parse_set
from colombeau.isets.ops import contains
from colombeau.nets.calculus import is_negligible, valuation
from colombeau.nets.grammar import parse_net
from colombeau.nets.piecewise import PiecewiseNet
from colombeau.nets.sampled import sample
from colombeau.saturation import (
    BallChain,
    ChainEntry,
    ChainSpec,
    cauchy_limit,
    nested_balls_witness,
    parse_balls,
    parse_chain,
    parse_sequence,
    saturation_witness,
)

from conftest import FIXTURES

E = PiecewiseNet.monomial(1, 1)


def C(c):
    return PiecewiseNet.constant(c)


def _chain(spec_lines):
    return [ChainEntry(n, t, parse_set(body)) for n, t, body in spec_lines]


# -- chains -------------------------------------------------------------------------

def test_shrinking_intervals_give_a_negligible_witness():
    chain = parse_chain((FIXTURES / "chain.txt").read_text())
    w = saturation_witness(chain, n_max=8)
    assert w.ok
    assert w.depth == 8
    assert valuation(w.net[0]) >= 7
    ks = [k for _, k, _ in w.thresholds]
    assert ks == sorted(set(ks))  # thresholds strictly decrease towards 0


def test_witness_sits_in_every_set_of_a_recentred_chain():
    # A_n = [1 + eps - eps^n, 1 + eps + eps^n]: the intersection is the point 1 + eps
    centre = C(1) + E
    chain = [ChainEntry(n, 1, parse_set(f"interval(1 + 1*eps^1 - 1*eps^{n},1 + 1*eps^1 + 1*eps^{n})"))
             for n in range(2, 8)]
    w = saturation_witness(chain)
    assert w.ok
    assert all(contains(e.family, w.net).member for e in chain)
    assert valuation(w.net[0] - centre) >= 6


def test_witness_follows_each_branch_between_thresholds():
    chain = parse_chain((FIXTURES / "chain.txt").read_text())[:5]
    w = saturation_witness(chain)
    ks = list(w.net[0].ks)
    starts = [ks.index(k) for _, k, _ in w.thresholds] + [len(ks)]
    for j, u in enumerate(w.branches):
        branch = sample(u[0], tuple(ks)).values
        for i in range(starts[j], starts[j + 1]):
            assert w.net[0].values[i] == branch[i]


def test_constant_chain_returns_its_member():
    chain = [ChainEntry(n, 0, parse_set("points((1/2))")) for n in range(1, 4)]
    w = saturation_witness(chain)
    assert w.ok
    assert is_negligible(w.net[0] - C(0.5))


def test_unbounded_chain_is_refused():
    chain = parse_chain((FIXTURES / "exterior_chain.txt").read_text())
    with pytest.raises(MissingBound):
        ChainSpec.build(chain)


def test_explicit_bound_is_checked():
    with pytest.raises(MissingBound):
        ChainSpec.build(_chain([(1, 1, "interval(-1*eps^-2,1*eps^-2)")]))
    with pytest.raises(MissingBound):
        ChainSpec.build(_chain([(1, -1, "interval(0,1)")]))


def test_derived_bound_exponent():
    spec = ChainSpec.build(_chain([(1, None, "interval(-1*eps^-2,1*eps^-2)")]))
    assert spec.entries[0].t == pytest.approx(3.0)


def test_growing_chain_is_refused():
    with pytest.raises(ChainNotDecreasing):
        ChainSpec.build(_chain([(1, 0, "interval(-1*eps^2,1*eps^2)"),
                                (2, 0, "interval(-1*eps^1,1*eps^1)")]))


def test_empty_entry_is_refused():
    with pytest.raises(EmptyEntry):
        ChainSpec.build(_chain([(1, 0, "interval(0,1)"), (2, 0, "empty")]))


def test_indices_must_increase():
    with pytest.raises(ValueError):
        ChainSpec.build(_chain([(2, 0, "interval(0,1)"), (1, 0, "interval(0,1)")]))


# -- nested sharp balls ---------------------------------------------------------------

def test_ball_fixture_has_a_common_point():
    chain = parse_balls((FIXTURES / "balls.txt").read_text())
    w = nested_balls_witness(chain)
    assert w.ok
    # the witness agrees with the last centre up to its radius
    assert all(d <= r * (1 + 1e-9) for _, d, r in w.distances)


def test_repeated_ball_returns_the_centre():
    a = C(2) + E
    w = nested_balls_witness(BallChain((a, a, a), (0.5, 0.5, 0.5)))
    assert w.splice is None
    assert is_negligible(w.value.rep - a)


def test_disjoint_balls_are_refused():
    with pytest.raises(NotNested):
        nested_balls_witness(BallChain((C(0), C(1)), (math.exp(-1), math.exp(-2))))


def test_growing_radius_is_refused():
    with pytest.raises(NotNested):
        nested_balls_witness(BallChain((C(0), C(0)), (math.exp(-2), math.exp(-1))))


def test_ball_chain_validation():
    with pytest.raises(ValueError):
        BallChain((C(0),), (0.5, 0.25))
    with pytest.raises(ValueError):
        BallChain((C(0),), (0.0,))


# -- sharp Cauchy sequences ----------------------------------------------------------

def test_partial_sums_converge_to_the_series():
    seq = parse_sequence((FIXTURES / "cauchy.txt").read_text())[:12]
    L = cauchy_limit(seq)
    table = dict(L.table)
    for j in range(6):
        assert table[j] == pytest.approx(j + 1, abs=0.05)
    assert list(L.indices) == sorted(L.indices)


def test_constant_sequence():
    a = C(3) - E ** 2
    L = cauchy_limit([a, a, a, a], depth=5)
    # the limit is only pinned down to the last radius 2^-5
    assert valuation(L.value.rep - a) >= 5 * math.log(2) - 1e-9
    assert len(L.indices) == 5


def test_alternating_sequence_is_not_cauchy():
    with pytest.raises(NotCauchy):
        cauchy_limit([C(0), C(1)] * 4)


def test_short_sequences():
    with pytest.raises(SequenceTooShort):
        cauchy_limit([C(0), C(1)])
    # terms a sharp distance 1 apart never certify r_1 = 1/2
    with pytest.raises((SequenceTooShort, NotCauchy)):
        cauchy_limit([C(0), C(1), C(1) + E ** 5])


# -- text formats ----------------------------------------------------------------------

def test_parse_chain_reads_dash_as_derived_bound():
    entries = parse_chain("# comment\n1 - interval(0,1)\n2 1/2 interval(0,1*eps^1)\n")
    assert [e.n for e in entries] == [1, 2]
    assert entries[0].t is None and entries[1].t == 0.5


def test_parse_balls_accepts_exponential_radii():
    chain = parse_balls("1 exp(-2) 1\n2 1/8 [tail] 1 + 1*eps^3\n")
    assert chain.radii == (pytest.approx(math.exp(-2)), 0.125)
    assert len(chain.centers) == 2


def test_parse_sequence_skips_comments():
    seq = parse_sequence("# a\n1\n\n1 + 1*eps^1  # second\n")
    assert len(seq) == 2
    assert is_negligible(seq[1] - parse_net("1 + 1*eps^1"))
