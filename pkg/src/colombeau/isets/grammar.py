"""Text form of set families.

    SET   := SHAPE ("|" SHAPE)*  |  "empty"
    SHAPE := interval(NET,NET) | box(interval(..),...) | points((NET,...);...)
           | exterior(NET) | exterior(NET,d)
"""

from __future__ import annotations

from ..errors import NetSyntaxError
from ..nets.grammar import parse_net
from ..nets.vec import VecNet
from .shapes import Box, Exterior, Points, SetFamily


def _split(text: str, sep: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise NetSyntaxError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise NetSyntaxError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _call(text: str):
    text = text.strip()
    head, paren, rest = text.partition("(")
    if not paren or not rest.endswith(")"):
        raise NetSyntaxError(f"expected name(...) but got {text!r}")
    return head.strip().lower(), rest[:-1]


def _interval(text: str):
    name, body = _call(text)
    if name != "interval":
        raise NetSyntaxError(f"expected interval(...) but got {text!r}")
    args = _split(body, ",")
    if len(args) != 2:
        raise NetSyntaxError(f"interval takes two nets, got {len(args)}")
    return parse_net(args[0]), parse_net(args[1])


def parse_shape(text: str):
    name, body = _call(text)
    if name == "interval":
        lo, hi = _interval(text)
        return Box((lo,), (hi,))
    if name == "box":
        ivs = [_interval(t) for t in _split(body, ",")]
        return Box(tuple(a for a, _ in ivs), tuple(b for _, b in ivs))
    if name == "points":
        pts = []
        for chunk in _split(body, ";"):
            if not (chunk.startswith("(") and chunk.endswith(")")):
                raise NetSyntaxError(f"a point is written (NET,...), got {chunk!r}")
            pts.append(VecNet(tuple(parse_net(t) for t in _split(chunk[1:-1], ","))))
        return Points(tuple(pts))
    if name == "exterior":
        args = _split(body, ",")
        if len(args) == 1:
            return Exterior(parse_net(args[0]))
        if len(args) == 2 and args[1].isdigit():
            return Exterior(parse_net(args[0]), int(args[1]))
        raise NetSyntaxError(f"exterior takes a radius and an optional dimension: {text!r}")
    raise NetSyntaxError(f"unknown shape {name!r}")


def parse_set(text: str, dim: int | None = None) -> SetFamily:
    text = text.split("#", 1)[0].strip()
    if text.lower() == "empty":
        return SetFamily.empty(dim or 1)
    shapes = [parse_shape(t) for t in _split(text, "|")]
    fam = SetFamily.of(*shapes)
    if dim is not None and fam.dim != dim:
        raise NetSyntaxError(f"expected dimension {dim}, got {fam.dim}")
    return fam
