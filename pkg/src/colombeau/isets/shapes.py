"""Per-eps shapes and set families in the d-dimensional space with the sup-norm."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ColombeauError
from ..nets.calculus import absolute, eventually_nonneg, max_of
from ..nets.sampled import SampledNet
from ..nets.vec import VecNet, as_net, as_vec


class InvalidShape(ColombeauError, ValueError):
    code = "invalid-shape"


def _show(x) -> str:
    if isinstance(x, SampledNet):
        return repr(x)
    text = str(x)
    return text[len("[tail] "):] if text.startswith("[tail] ") else text


@dataclass(frozen=True, eq=False)
class Box:
    """Coordinatewise product of closed intervals ``[lo_i, hi_i]``."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = tuple(as_net(x) for x in self.lo)
        hi = tuple(as_net(x) for x in self.hi)
        if len(lo) != len(hi) or not lo:
            raise InvalidShape("a box needs matching, nonempty endpoint tuples")
        for a, b in zip(lo, hi):
            if eventually_nonneg(b - a) is not True:
                raise InvalidShape(f"interval endpoints not ordered eventually: [{_show(a)}, {_show(b)}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def sup_norm(self):
        return max_of(max_of([absolute(a), absolute(b)]) for a, b in zip(self.lo, self.hi))

    def __str__(self) -> str:
        ivs = [f"interval({_show(a)},{_show(b)})" for a, b in zip(self.lo, self.hi)]
        return ivs[0] if len(ivs) == 1 else "box(" + ",".join(ivs) + ")"


def Interval(lo, hi) -> Box:
    return Box((lo,), (hi,))


@dataclass(frozen=True, eq=False)
class Points:
    """A finite list of points."""

    points: tuple

    def __post_init__(self):
        pts = tuple(as_vec(p) for p in self.points)
        if not pts:
            raise InvalidShape("a point shape needs at least one point")
        if len({p.dim for p in pts}) > 1:
            raise InvalidShape("points of different dimension")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def sup_norm(self):
        return max_of(p.norm() for p in self.points)

    def __str__(self) -> str:
        return "points(" + ";".join("(" + ",".join(_show(c) for c in p) + ")" for p in self.points) + ")"


@dataclass(frozen=True, eq=False)
class Exterior:
    """``{x : |x|_inf >= r_eps}``: never sharply bounded."""

    r: object
    dim: int = 1

    def __post_init__(self):
        r = as_net(self.r)
        if eventually_nonneg(r) is not True:
            raise InvalidShape("exterior radius must be nonnegative eventually")
        object.__setattr__(self, "r", r)

    def __str__(self) -> str:
        if self.dim == 1:
            return f"exterior({_show(self.r)})"
        return f"exterior({_show(self.r)},{self.dim})"


@dataclass(frozen=True, eq=False)
class SetFamily:
    """Union, for each eps, of finitely many shapes."""

    shapes: tuple
    dim: int
    meta: str | None = None

    def __post_init__(self):
        shapes = tuple(self.shapes)
        for s in shapes:
            if not isinstance(s, (Box, Points, Exterior)):
                raise InvalidShape(f"not a shape: {s!r}")
            if s.dim != self.dim:
                raise InvalidShape(f"shape of dimension {s.dim} in a family of dimension {self.dim}")
        object.__setattr__(self, "shapes", shapes)

    @classmethod
    def of(cls, *shapes, meta=None) -> "SetFamily":
        if not shapes:
            raise InvalidShape("use SetFamily.empty(dim) for the empty family")
        return cls(shapes, shapes[0].dim, meta)

    @classmethod
    def empty(cls, dim: int = 1) -> "SetFamily":
        return cls((), dim)

    @property
    def is_empty(self) -> bool:
        return not self.shapes

    def __str__(self) -> str:
        return " | ".join(str(s) for s in self.shapes) if self.shapes else "empty"


@dataclass(frozen=True, eq=False)
class InternalSet:
    """``[(A_eps)]``: the internal set generated by a representative family."""

    family: SetFamily

    @property
    def dim(self) -> int:
        return self.family.dim

    def __str__(self) -> str:
        return f"[({self.family})]"


def as_family(A) -> SetFamily:
    if isinstance(A, InternalSet):
        return A.family
    if isinstance(A, SetFamily):
        return A
    if isinstance(A, (Box, Points, Exterior)):
        return SetFamily.of(A)
    raise TypeError(f"expected an internal set or set family, got {type(A).__name__}")


def point_shape(*coords) -> Points:
    return Points((VecNet(tuple(coords)),))
