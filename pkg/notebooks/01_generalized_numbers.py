"""
Generalized numbers
===================

A generalized number is a net ``x_eps`` of reals, indexed by ``eps`` in
(0, 1), taken modulo the negligible nets.  This script builds a few nets,
measures their size with the valuation and the sharp norm, and compares
the exact symbolic backend with the sampled one.
"""

# %%
from colombeau.nets import (
    ALPHA,
    GenNumber,
    PiecewiseNet,
    gen_eq,
    is_negligible,
    parse_net,
    sample,
    sharp_norm,
    valuation,
)

# The scale alpha = [eps] has valuation 1 and sharp norm exp(-1).
print("nu(alpha) =", valuation(ALPHA.rep))
print("[[alpha]] =", sharp_norm(ALPHA.rep))

# %%
# Nets are written as power sums; NEGL stands for some negligible net.
x = parse_net("3*eps^-1 + 2 - 1*eps^2")
y = parse_net("3*eps^-1 + 2 - 1*eps^2 + NEGL")
print("x =", x)
print("nu(x) =", valuation(x), " [[x]] =", sharp_norm(x))
print("x = y in the quotient:", gen_eq(x, y))
print("x = y as representatives:", x == y)

# %%
# The valuation is an ultrametric absolute value: nu(a + b) >= min(nu(a), nu(b)).
a, b = parse_net("1*eps^2 + 1*eps^5"), parse_net("-1*eps^2 + 4*eps^3")
print("nu(a), nu(b), nu(a + b) =", valuation(a), valuation(b), valuation(a + b))

# %%
# Nets may differ along a comb of eps values.  Here the net is eps on
# one residue class of the comb and eps^3 on the other, so its size is
# decided by the larger branch.
comb = parse_net("[comb 1 0.5 2 0] 1*eps^1 ; [comb 1 0.5 2 1] 1*eps^3 ; [tail] 0")
print("comb net:", comb)
print("nu(comb) =", valuation(comb))

# %%
# Sampling evaluates a net at eps = 2^-k in high precision.  The sampled
# valuation is a slope estimate and agrees with the exact one.
s = sample(x)
print("sampled points:", len(s.ks), " estimated nu:", round(valuation(s), 6))
print("eps^(1/eps) is negligible:", bool(is_negligible(sample(parse_net("NEGL")))))

# %%
# GenNumber wraps a representative and compares in the quotient.
g = GenNumber(PiecewiseNet.constant(1))
print("1 + NEGL equals 1:", g.equals(GenNumber(parse_net("1 + NEGL"))))
