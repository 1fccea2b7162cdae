"""Generalized numbers and points of the d-dimensional space over them."""

from __future__ import annotations

from dataclasses import dataclass

from ..config import DEFAULT
from .calculus import absolute, gen_eq, is_negligible, max_of, sharp_norm, valuation
from .piecewise import PiecewiseNet, as_piecewise
from .sampled import SampledNet


def as_net(x):
    if isinstance(x, GenNumber):
        return x.rep
    if isinstance(x, SampledNet):
        return x
    return as_piecewise(x)


@dataclass(frozen=True, eq=False)
class GenNumber:
    """An element of the quotient, carried by one representative net."""

    rep: object

    def __post_init__(self):
        object.__setattr__(self, "rep", as_net(self.rep))

    @property
    def backend(self) -> str:
        return "sampled" if isinstance(self.rep, SampledNet) else "symbolic"

    def valuation(self, config=DEFAULT) -> float:
        return valuation(self.rep, config)

    def sharp_norm(self, config=DEFAULT) -> float:
        return sharp_norm(self.rep, config)

    def is_zero(self, config=DEFAULT) -> bool:
        return is_negligible(self.rep, config).negligible

    def equals(self, other, config=DEFAULT) -> bool:
        return gen_eq(self.rep, as_net(other), config)

    def __add__(self, o):
        return GenNumber(self.rep + as_net(o))

    __radd__ = __add__

    def __sub__(self, o):
        return GenNumber(self.rep - as_net(o))

    def __rsub__(self, o):
        return GenNumber(as_net(o) - self.rep)

    def __mul__(self, o):
        return GenNumber(self.rep * as_net(o))

    __rmul__ = __mul__

    def __neg__(self):
        return GenNumber(-self.rep)

    def __abs__(self):
        return GenNumber(absolute(self.rep))

    def __repr__(self) -> str:
        return f"GenNumber({self.rep!s})" if self.backend == "symbolic" else f"GenNumber({self.rep!r})"


ALPHA = GenNumber(PiecewiseNet.monomial(1, 1))


@dataclass(frozen=True, eq=False)
class VecNet:
    """A point of the d-dimensional generalized space; the norm is the sup-norm."""

    components: tuple

    def __post_init__(self):
        comps = tuple(as_net(c) for c in self.components)
        if not comps:
            raise ValueError("a VecNet needs at least one component")
        kinds = {isinstance(c, SampledNet) for c in comps}
        if len(kinds) > 1:
            comps = tuple(c if isinstance(c, SampledNet) else None for c in comps)
            ks = next(c.ks for c in comps if c is not None)
            comps = tuple(SampledNet.from_function(o.evaluate, ks) if c is None else c
                          for c, o in zip(comps, (as_net(x) for x in self.components)))
        if any(isinstance(c, SampledNet) for c in comps):
            if len({c.ks for c in comps}) > 1:
                raise ValueError("sampled components must share one grid")
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def backend(self) -> str:
        return "sampled" if isinstance(self.components[0], SampledNet) else "symbolic"

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def norm(self):
        return max_of(absolute(c) for c in self.components)

    def __add__(self, o):
        o = as_vec(o, self.dim)
        return VecNet(tuple(a + b for a, b in zip(self, o)))

    def __sub__(self, o):
        o = as_vec(o, self.dim)
        return VecNet(tuple(a - b for a, b in zip(self, o)))

    def scale(self, s):
        return VecNet(tuple(as_net(s) * c for c in self))

    def project(self, coords):
        return VecNet(tuple(self.components[i] for i in coords))

    def __repr__(self) -> str:
        return "VecNet(" + ", ".join(str(c) if not isinstance(c, SampledNet) else repr(c)
                                     for c in self.components) + ")"


def as_vec(x, dim: int | None = None) -> VecNet:
    if isinstance(x, VecNet):
        v = x
    elif isinstance(x, (tuple, list)):
        v = VecNet(tuple(x))
    else:
        v = VecNet((x,))
    if dim is not None and v.dim != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {v.dim}")
    return v
