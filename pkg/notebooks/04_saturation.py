"""
Saturation and completeness
===========================

A decreasing chain of nonempty internal sets, each inside a ball of radius
alpha^-t, has a common point.  The witness is spliced from members of the
sets along thresholds eps_1 > eps_2 > ... .  The same splice gives a point
in a nested chain of sharp balls and the limit of a sharp Cauchy sequence.
"""

# %%
import math

from colombeau.errors import MissingBound
from colombeau.isets import parse_set
from colombeau.nets import PiecewiseNet, valuation
from colombeau.saturation import (
    BallChain,
    ChainEntry,
    ChainSpec,
    cauchy_limit,
    nested_balls_witness,
    saturation_witness,
)

E = PiecewiseNet.monomial(1, 1)

# %%
# A_n = [-eps^n, eps^n].  Each u_n is the member of least norm, here 0,
# so the spliced witness is the zero net.
chain = [ChainEntry(n, 0, parse_set(f"interval(-1*eps^{n},1*eps^{n})")) for n in range(1, 13)]
w = saturation_witness(chain)
for n, k, _ in w.thresholds[:5]:
    print(f"level {n}: switch to u_{n} below eps = 2^-{k}")
print("witness in every set:", w.ok, " depth:", w.depth)
print("nu(witness) =", valuation(w.net[0]))

# %%
# Without a uniform bound the conclusion fails: the exteriors of balls of
# radius eps^-n form a decreasing chain with empty intersection.
try:
    ChainSpec.build([ChainEntry(n, None, parse_set(f"exterior(1*eps^-{n})")) for n in range(1, 4)])
except MissingBound as exc:
    print("refused:", exc)

# %%
# Nested sharp balls around the partial sums a_n = 1 + eps + ... + eps^n,
# with radii e^-(n+1).
centers, total = [], PiecewiseNet.constant(1)
for n in range(1, 11):
    total = total + E ** n
    centers.append(total)
balls = nested_balls_witness(BallChain(tuple(centers), tuple(math.exp(-(n + 1)) for n in range(1, 11))))
print("point in every ball:", balls.ok)
print("worst [[x - a_n]] / r_n:", round(max(d / r for _, d, r in balls.distances), 4))

# %%
# The same partial sums form a sharp Cauchy sequence.  Its limit L
# satisfies nu(u_j - L) = j + 1.
seq, total = [], PiecewiseNet.constant(0)
for j in range(16):
    total = total + E ** j
    seq.append(total)
L = cauchy_limit(seq)
for j, v in L.table[:6]:
    print(f"nu(u_{j} - L) = {v:.3f}")
