"""Shared generators for the test suite and the acceptance summary hook."""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import pytest

from colombeau.nets import CombPattern, PiecewiseNet, PowerSum

FIXTURES = Path(__file__).parent / "fixtures"

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict = {}


def random_sum(rng: random.Random, terms: int = 3, negl: float = 0.2, exps=None) -> PowerSum:
    exps = exps or [Fraction(k, 2) for k in range(-4, 9)]
    picks = rng.sample(exps, k=rng.randint(1, terms))
    coeffs = [rng.choice([-3, -2, -1, 1, 2, 3]) * Fraction(rng.randint(1, 4), rng.randint(1, 3))
              for _ in picks]
    return PowerSum.make(zip(coeffs, picks), negl=rng.random() < negl)


def random_net(rng: random.Random, comb: float = 0.3) -> PiecewiseNet:
    """A tail power sum, or with probability *comb* a two-residue comb net."""
    tail = random_sum(rng)
    if rng.random() >= comb:
        return PiecewiseNet.constant(tail)
    other = random_sum(rng)
    return PiecewiseNet.from_pieces([(CombPattern.comb(1, 0.5, 2, 0), other),
                                     (CombPattern.tail(), tail)])


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
