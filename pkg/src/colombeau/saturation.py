"""Saturation for decreasing chains of internal sets, and two completeness results.

The witness is the diagonal splice ``v_eps = u_{n,eps}`` on
``(eps_{n+1}, eps_n]``, where ``u_n`` is a member of the n-th set and the
thresholds ``eps_n`` are located on the sampling grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ._mp import eps_at, eps_power
from .config import DEFAULT
from .errors import (
    ChainNotDecreasing,
    EmptyEntry,
    MissingBound,
    NotCauchy,
    NotNested,
    SequenceTooShort,
)
from .isets.ops import (
    contains,
    family_distance,
    is_sharply_bounded,
    min_distance,
    subset_report,
)
from .isets.shapes import Box, SetFamily, as_family
from .nets.calculus import eventually_nonneg, valuation
from .nets.grammar import parse_net
from .nets.piecewise import PiecewiseNet
from .nets.powersum import as_fraction
from .nets.sampled import SampledNet, default_ks, sample
from .nets.vec import GenNumber, VecNet, as_net


@dataclass(frozen=True)
class ChainEntry:
    n: int
    t: float | None
    family: SetFamily


@dataclass(frozen=True)
class ChainSpec:
    """A validated decreasing chain ``A_1 >= A_2 >= ...`` with norm bounds ``alpha**-t_n``."""

    entries: tuple

    @classmethod
    def build(cls, entries, config=DEFAULT, check_decreasing: bool = True) -> "ChainSpec":
        """Validate bounds first (their absence is the reason a chain fails), then monotonicity."""
        out = []
        for e in entries:
            e = e if isinstance(e, ChainEntry) else ChainEntry(*e)
            fam = as_family(e.family)
            if fam.is_empty:
                raise EmptyEntry(f"chain entry {e.n} is empty")
            rep = is_sharply_bounded(fam, config)
            if not rep.bounded:
                raise MissingBound(
                    f"entry {e.n} has no bound |v| <= alpha^-t: without such bounds a decreasing "
                    "chain of nonempty internal sets can have empty intersection")
            # a derived exponent absorbs the constant in O(eps**-M)
            t = float(rep.M + 1) if e.t is None else float(e.t)
            if t < 0:
                raise MissingBound(f"entry {e.n}: bound exponent must be nonnegative")
            if not _bounded_by(rep.sup, t, config):
                raise MissingBound(f"entry {e.n}: sup |v| exceeds alpha^-{t:g}")
            out.append(ChainEntry(int(e.n), t, fam))
        ns = [e.n for e in out]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("chain indices must be strictly increasing")
        if check_decreasing:
            for a, b in zip(out, out[1:]):
                if not subset_report(b.family, a.family, config).holds:
                    raise ChainNotDecreasing(f"entry {b.n} is not contained in entry {a.n}")
        return cls(tuple(out))

    def __len__(self) -> int:
        return len(self.entries)


def _bounded_by(sup, t: float, config) -> bool:
    bound = PiecewiseNet.monomial(1, -as_fraction(t))
    if isinstance(sup, SampledNet):
        return valuation(sup, config) >= -t - 0.05
    return eventually_nonneg(bound - sup, config) is True


@dataclass(frozen=True)
class SpliceNet:
    """Diagonal witness: branch ``n`` on grid indices ``[K_n, K_{n+1})``."""

    net: SampledNet
    thresholds: tuple      # (n, k_n, eps_n as float log2) per realized level
    branches: tuple        # VecNet per realized level
    depth: int
    memberships: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return bool(self.memberships) and all(m for _, m in self.memberships)

    @property
    def value(self) -> GenNumber:
        return GenNumber(self.net[0]) if self.net.dim == 1 else self.net


def _min_norm_member(fam: SetFamily) -> VecNet:
    origin = SetFamily((Box(tuple([PiecewiseNet.constant(0)] * fam.dim),
                            tuple([PiecewiseNet.constant(0)] * fam.dim)),), fam.dim)
    _, (u, _) = min_distance(fam, origin)
    return u


def _sampled(x, ks):
    return x.values if isinstance(x, SampledNet) else sample(x, ks).values


def saturation_witness(chain, n_max: int | None = None, ks=None, config=DEFAULT) -> SpliceNet:
    """Build ``v`` in every ``A_n`` by splicing members ``u_n`` of ``A_n`` along grid thresholds.

    ``eps_n`` is the coarsest grid point from which on (towards 0) both
    ``d(u_n, A_k) <= eps**n`` for ``k <= n`` and ``|u_n| <= eps**(-t_1-1)`` hold
    at every finer grid point; thresholds are forced strictly decreasing.
    Levels whose threshold falls off the grid are dropped and ``depth`` says
    how many were realized.
    """
    if not isinstance(chain, ChainSpec):
        chain = ChainSpec.build(chain, config)
    entries = list(chain.entries)
    if n_max is not None:
        entries = entries[:n_max]
    ks = tuple(ks or default_ks(config))
    G = len(ks)
    eps = [eps_at(k) for k in ks]
    t1 = entries[0].t
    cap = [eps_power(e, -as_fraction(t1) - 1) for e in eps]
    members = [_min_norm_member(e.family) for e in entries]
    starts, used = [], []
    prev = -1
    for lvl, (entry, u) in enumerate(zip(entries, members), start=1):
        norm_vals = _sampled(u.norm(), ks)
        ok = [norm_vals[i] <= cap[i] for i in range(G)]
        for k_entry in entries[:lvl]:
            d = family_distance(u, k_entry.family)
            if isinstance(d, PiecewiseNet) and d.is_zero:
                continue
            dv = _sampled(d, ks)
            tol = [eps_power(eps[i], lvl) for i in range(G)]
            ok = [ok[i] and dv[i] <= tol[i] for i in range(G)]
        K = G
        while K > 0 and ok[K - 1]:
            K -= 1
        K = max(K, prev + 1)
        if K >= G:
            break
        starts.append(K)
        used.append((lvl, entry, u))
        prev = K
    if not used:
        raise EmptyEntry("no level reaches its threshold on the sampling grid")
    dim = members[0].dim
    comps = []
    for c in range(dim):
        branch_vals = [_sampled(u[c], ks) for _, _, u in used]
        vals = []
        for i in range(G):
            j = 0
            while j + 1 < len(starts) and starts[j + 1] <= i:
                j += 1
            vals.append(branch_vals[j][i])
        comps.append(SampledNet(ks, tuple(vals)))
    net = VecNet(tuple(comps))
    thresholds = tuple((lvl, ks[K], -ks[K]) for (lvl, _, _), K in zip(used, starts))
    memberships = tuple((e.n, contains(e.family, net, config).member) for e in entries)
    return SpliceNet(net, thresholds, tuple(u for _, _, u in used), len(used), memberships)


# -- spherical completeness ----------------------------------------------------

@dataclass(frozen=True)
class BallChain:
    """Sharp balls ``B_n = {x : [[x - a_n]] <= r_n}``."""

    centers: tuple
    radii: tuple

    def __post_init__(self):
        centers = tuple(as_net(a) for a in self.centers)
        radii = tuple(float(r) for r in self.radii)
        if len(centers) != len(radii) or not centers:
            raise ValueError("need one radius per center")
        if any(r <= 0 for r in radii):
            raise ValueError("radii must be positive")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "radii", radii)


def _sharp(x, config) -> float:
    v = valuation(x, config)
    return 0.0 if v == math.inf else math.exp(-v)


@dataclass(frozen=True)
class BallWitness:
    value: GenNumber
    splice: SpliceNet | None
    distances: tuple   # (n, [[x - a_n]], r_n) per ball

    @property
    def ok(self) -> bool:
        return all(d <= r * (1 + 1e-9) for _, d, r in self.distances)


def _collapse(chain: BallChain, config):
    """Validate nesting and drop repeated balls (equal radii give the same ball)."""
    keep = [0]
    for i in range(1, len(chain.radii)):
        a, b = chain.centers[i - 1], chain.centers[i]
        r0, r1 = chain.radii[i - 1], chain.radii[i]
        d = _sharp(b - a, config)
        if d > r0 * (1 + 1e-12):
            raise NotNested(f"[[a_{i + 1} - a_{i}]] = {d:.6g} exceeds r_{i} = {r0:.6g}")
        if r1 > r0 * (1 + 1e-12):
            raise NotNested(f"radius grows from {r0:.6g} to {r1:.6g}")
        if abs(r1 - r0) <= 1e-12 * r0:
            continue
        keep.append(i)
    return keep


def _ball_family(center, s: float) -> SetFamily:
    w = PiecewiseNet.monomial(1, as_fraction(s))
    c = as_net(center)
    return SetFamily((Box((c - w,), (c + w,)),), 1)


def nested_balls_witness(chain: BallChain, ks=None, config=DEFAULT) -> BallWitness:
    """A point of ``⋂ B_n`` via ``V_n = [{x : |x - a_{n+1}| <= eps**(-log r_n)}]``."""
    keep = _collapse(chain, config)
    centers = [chain.centers[i] for i in keep]
    radii = [chain.radii[i] for i in keep]
    if len(centers) == 1:
        x = centers[0]
        return BallWitness(GenNumber(x), None, _ball_report(chain, x, config))
    entries = []
    for n in range(len(centers)):
        nxt = centers[min(n + 1, len(centers) - 1)]
        entries.append(ChainEntry(n + 1, None, _ball_family(nxt, -math.log(radii[n]))))
    spec = ChainSpec.build(entries, config)
    splice = saturation_witness(spec, ks=ks, config=config)
    x = splice.net[0]
    return BallWitness(GenNumber(x), splice, _ball_report(chain, x, config))


def _ball_report(chain: BallChain, x, config):
    return tuple((n + 1, _sharp(x - a, config), r)
                 for n, (a, r) in enumerate(zip(chain.centers, chain.radii)))


# -- sharp completeness ----------------------------------------------------------

@dataclass(frozen=True)
class CauchyLimit:
    value: GenNumber
    indices: tuple      # j_n for r_n = 2**-n, n = 1..depth
    table: tuple        # (j, nu(u_j - L)) per supplied term
    splice: SpliceNet


def _pair_val(a, b, config) -> float:
    d = a - b
    if isinstance(d, PiecewiseNet) and d.is_zero:
        return math.inf
    return valuation(d, config)


def cauchy_limit(seq, depth: int | None = None, ks=None, config=DEFAULT) -> CauchyLimit:
    """Limit of a sharp Cauchy sequence, with radii ``r_n = 2**-n``.

    ``j_n`` is the least index with ``[[u_k - u_l]] < 2**-n`` for all supplied
    ``k, l >= j_n``; it must leave at least two terms to compare.  The limit is
    the saturation witness of ``A_n = V(u_{j_n}; n log 2)``.
    """
    us = [as_net(u.rep if isinstance(u, GenNumber) else u) for u in seq]
    if len(us) < 3:
        raise SequenceTooShort("need at least three terms")
    N = len(us)
    vals = {}

    def nu(k, m):
        key = (min(k, m), max(k, m))
        if key not in vals:
            vals[key] = _pair_val(us[k], us[m], config)
        return vals[key]

    consec = [nu(j, j + 1) for j in range(N - 1)]
    half = consec[len(consec) // 2:]
    if not all(v == math.inf for v in half) and \
            not (half[-1] > half[0] or half[-1] == math.inf):
        raise NotCauchy("consecutive differences do not shrink in the sharp norm")
    # tail minima: m[j] = min over k, l >= j of nu(u_k - u_l)
    tail_min = [math.inf] * N
    for j in range(N - 2, -1, -1):
        row = min(nu(j, m) for m in range(j + 1, N))
        tail_min[j] = min(tail_min[j + 1], row)
    cap = depth if depth is not None else 64
    indices = []
    for n in range(1, cap + 1):
        need = n * math.log(2)
        j = next((j for j in range(N - 1) if tail_min[j] > need + 1e-9), None)
        if j is None or j > N - 2:
            break
        indices.append(j)
    if not indices:
        raise SequenceTooShort("the supplied terms do not certify even r_1 = 1/2")
    entries = [ChainEntry(n, None, _ball_family(us[j], n * math.log(2)))
               for n, j in enumerate(indices, start=1)]
    spec = ChainSpec.build(entries, config)
    splice = saturation_witness(spec, ks=ks, config=config)
    L = splice.net[0]
    table = tuple((j, valuation(u - L, config)) for j, u in enumerate(us))
    return CauchyLimit(GenNumber(L), tuple(indices), table, splice)


# -- text formats ------------------------------------------------------------------

def parse_chain(text: str) -> list:
    """Lines ``n t_n SET``; ``t_n`` may be ``-`` to derive it from the family."""
    from .isets.grammar import parse_set

    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        n, t, body = line.split(None, 2)
        out.append(ChainEntry(int(n), None if t == "-" else float(Fraction(t)), parse_set(body)))
    return out


def parse_balls(text: str) -> BallChain:
    """Lines ``n r_n NET``; ``r_n`` accepts ``exp(-3)`` style values."""
    centers, radii = [], []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        _, r, body = line.split(None, 2)
        radii.append(_parse_radius(r))
        centers.append(parse_net(body))
    return BallChain(tuple(centers), tuple(radii))


def _parse_radius(text: str) -> float:
    t = text.strip()
    if t.startswith("exp(") and t.endswith(")"):
        return math.exp(float(Fraction(t[4:-1])))
    return float(Fraction(t))


def parse_sequence(text: str) -> list:
    """One net per line."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_net(line))
    return out


__all__ = [
    "BallChain", "BallWitness", "CauchyLimit", "ChainEntry", "ChainSpec", "SpliceNet",
    "cauchy_limit", "nested_balls_witness", "parse_balls", "parse_chain", "parse_sequence",
    "saturation_witness",
]
