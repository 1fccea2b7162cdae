"""
Internal functions
==================

A net of smooth functions ``f_eps`` acts on generalized points by
``x -> [f_eps(x_eps)]``.  Functions here are small expressions in ``x`` and
``eps``, evaluated in high precision at eps = 2^-k.
"""

# %%
from fractions import Fraction

from colombeau.errors import OutsideDomain
from colombeau.ifuncs import (
    continuity_modulus,
    eval_at,
    graph_contains,
    image_family,
    image_membership,
    make_graph,
    pl_interpolant,
    zero_set_demo,
)
from colombeau.isets import parse_set
from colombeau.nets import PiecewiseNet, parse_net, valuation

UNIT = parse_set("interval(0,1)")

# %%
# Evaluation at a generalized point.  With a sharply bounded domain and
# image the value does not depend on the representative of x.
G = make_graph("x^2 + eps*x", UNIT)
x = parse_net("1*eps^1")
ev = eval_at(G, x)
print("f(eps) has valuation", round(valuation(ev.value.rep), 6), " guaranteed:", ev.guaranteed)
print("(eps, 2 eps^2) on the graph:", graph_contains(G, x, parse_net("2*eps^2")))
try:
    eval_at(G, parse_net("2"))
except OutsideDomain as exc:
    print("outside the domain:", exc)

# %%
# The image of a bounded domain is internal.  An interior maximum of
# x^2 - x^3 on [0, 1] is found to full working precision.
H = make_graph("x^2 - x^3", UNIT)
print("image family:", image_family(H).shapes[0].__class__.__name__)
print("4/27 in the image:", image_membership(H, PiecewiseNet.constant(Fraction(4, 27))).member)
print("4/27 + eps^3 in the image:",
      image_membership(H, PiecewiseNet.constant(Fraction(4, 27)) + parse_net("1*eps^3")).member)

# %%
# Over the whole line the image of x^2/(1+x^2) is [0, 1) for each eps: the
# value 1 is missed, yet 1 - eps^3 is attained at a moderate point.
W = make_graph("x^2/(1+x^2)")
print("1 in the image:", image_membership(W, PiecewiseNet.constant(1)).member)
print("1 - eps^3 in the image:", image_membership(W, parse_net("1 - 1*eps^3")).member)

# %%
# Uniform continuity: the least m with |x - x'| <= eps^m forcing
# |f(x) - f(x')| <= eps^n.
r = continuity_modulus(make_graph("x/eps", UNIT), 2)
print(f"x/eps: n={r.n} needs m={r.m}")

# %%
# Piecewise-linear interpolation on cells of width eps^m approximates f
# up to a net of high valuation.
P = pl_interpolant(make_graph("x^3", UNIT), 4)
print("interpolation error valuation:", round(valuation(P.sup_error()), 3))

# %%
# The zero set of eps^(1/x) on [0, 1] is not internal: every zero that
# tends to 0 has a strictly larger zero.
print(zero_set_demo())
