"""Finitely described index sets ``S`` of (0, 1) that accumulate at 0."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .._mp import mp


@dataclass(frozen=True)
class CombPattern:
    """``tail`` or a geometric comb.

    ``comb(c, q, m, r)`` is the union over ``k >= 0, k = r (mod m)`` of the
    intervals ``(c q**(k+1), c q**k]``.  ``tail`` stands for every ``eps``
    not claimed by a comb piece of the same net.
    """

    kind: str = "tail"
    c: float = 1.0
    q: float = 0.5
    m: int = 1
    r: int = 0

    def __post_init__(self):
        if self.kind not in ("tail", "comb"):
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.kind == "comb":
            if not (0 < self.c < 1 or self.c == 1) or not 0 < self.q < 1:
                raise ValueError("comb needs c in (0, 1] and q in (0, 1)")
            if self.m < 1 or not 0 <= self.r < self.m:
                raise ValueError("comb needs m >= 1 and 0 <= r < m")

    @classmethod
    def tail(cls) -> "CombPattern":
        return cls("tail")

    @classmethod
    def comb(cls, c, q, m, r) -> "CombPattern":
        return cls("comb", float(c), float(q), int(m), int(r) % int(m))

    @property
    def is_tail(self) -> bool:
        return self.kind == "tail"

    def normalized(self):
        """``(c', q, m, r')`` with ``c'`` in ``(q, 1]``; same set near 0."""
        c, j = self.c, 0
        while c / self.q <= 1.0 + 1e-12:
            c /= self.q
            j += 1
        if abs(c - 1.0) < 1e-14:
            c = 1.0
        return c, self.q, self.m, (self.r + j) % self.m

    def intervals(self, depth: int):
        """Explicit intervals ``(lo, hi]`` for comb indices ``k < depth``."""
        if self.is_tail:
            raise ValueError("tail has no explicit intervals")
        return [(self.c * self.q ** (k + 1), self.c * self.q ** k)
                for k in range(self.r, depth, self.m)]

    def __str__(self) -> str:
        if self.is_tail:
            return "tail"
        return f"comb {self.c!r} {self.q!r} {self.m} {self.r}"


def comb_index(c: float, q: float, eps):
    """Index ``k >= 0`` with ``c q**(k+1) < eps <= c q**k``; ``None`` if ``eps > c``."""
    eps = mp.mpf(eps)
    cm, qm = mp.mpf(c), mp.mpf(q)
    if eps > cm:
        return None
    k = int(mp.floor(mp.log(eps / cm) / mp.log(qm)))
    k = max(k, 0)
    while k > 0 and eps > cm * qm ** k:
        k -= 1
    while eps <= cm * qm ** (k + 1):
        k += 1
    return k


def same_base(a, b) -> bool:
    return math.isclose(a[0], b[0], rel_tol=1e-12) and math.isclose(a[1], b[1], rel_tol=1e-12)
