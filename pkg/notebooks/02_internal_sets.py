"""
Internal sets
=============

An internal set is the class ``[A_eps]`` of a net of subsets of R^d: a
generalized point belongs to it when it is a negligible distance away from
``A_eps`` for small eps.  Sets here are finite unions of boxes, finite point
sets and exteriors of balls, with endpoints given by nets.
"""

# %%
from colombeau.isets import (
    contains,
    equality_report,
    fatten,
    internal_union,
    is_sharply_bounded,
    max_norm,
    min_distance,
    parse_set,
    project,
    sharp_ball_larger_member,
    subset_report,
)
from colombeau.nets import parse_net, valuation

# %%
# Membership is decided up to negligible distance, so a point that is a
# negligible net away from the interval still counts.
I = parse_set("interval(0,1*eps^1)")
for text in ("1*eps^2", "1*eps^1 + NEGL", "2*eps^1", "-1*eps^3"):
    m = contains(I, parse_net(text))
    print(f"{text:>16} in [0, eps]: {m.member}  (exact: {m.exact})")

# %%
# Two nets of sets that differ by negligible amounts define the same set.
print("[{0}] = [{NEGL}]:", equality_report(parse_set("points((0))"),
                                          parse_set("points((NEGL))")).holds)
print("[0, eps^2] inside [0, eps]:", subset_report(parse_set("interval(0,1*eps^2)"), I).holds)

# %%
# Distances and norms are generalized numbers with explicit witnesses.
A, B = parse_set("interval(1*eps^1,1)"), parse_set("interval(-1,-1*eps^3)")
d, (u, v) = min_distance(A, B)
print("d(A, B) =", d.rep, " nu =", valuation(d.rep))
print("witnesses:", u, "and", v)
n, w = max_norm(parse_set("interval(-1*eps^-2,3) | points((5))"))
print("max |x| =", n.rep, "attained at", w)

# %%
# Sharp boundedness: a representative fits inside a ball of radius eps^-M.
for text in ("interval(-1*eps^-3,1)", "exterior(1)"):
    r = is_sharply_bounded(parse_set(text))
    print(f"{text}: bounded={r.bounded} M={r.M}")

# %%
# The open sharp unit ball has no element of maximal norm: for any member
# u there is a member v that is eventually larger.
v, certified = sharp_ball_larger_member(parse_net("1*eps^(1/3)"))
print("larger member:", v, " certified:", certified)

# %%
# Unions, eps^m neighbourhoods and projections.
U = internal_union(parse_set("interval(0,1)"), parse_set("points((3))"))
print("union:", U.family)
print("eps^2-fattening of {0}:", fatten(parse_set("points((0))"), 2))
box = parse_set("box(interval(0,1),interval(2,1*eps^-1 + 2))")
P = project(box, [1])
print("projection to the second axis:", P.set.family, " verified:", P.verified)
