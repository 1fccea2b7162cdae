"""Parser for the line-oriented net literal grammar.

::

    NET     := PIECE (";" PIECE)*
    PIECE   := "[" PATTERN "]" SUM
    PATTERN := "tail" | "comb" c q m r
    SUM     := SIGNED_TERM+
    TERM    := coeff "*eps^" expo | coeff | "NEGL"

``eps^e`` without a coefficient and a bare ``eps`` are accepted as well.
A literal with no ``[...]`` header is read as a single tail piece.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import NetSyntaxError
from .pattern import CombPattern
from .piecewise import PiecewiseNet
from .powersum import PowerSum, as_fraction

_NUM = r"(?:\d+/\d+|\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
_EXPO = rf"(?:[+-]?{_NUM}|\(\s*[+-]?{_NUM}\s*\))"
_TERM = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?:"
    rf"(?P<negl>NEGL)"
    rf"|(?P<coef>{_NUM})(?:\s*\*\s*eps(?:\s*\^\s*(?P<e1>{_EXPO}))?)?"
    rf"|eps(?:\s*\^\s*(?P<e2>{_EXPO}))?"
    rf")\s*"
)
_HEADER = re.compile(r"\s*\[\s*([^\]]*)\]\s*(.*)$", re.S)


def _number(tok: str) -> Fraction:
    tok = tok.strip().strip("()").strip()
    try:
        if "/" in tok:
            return Fraction(tok)
        return as_fraction(Fraction(tok)) if "e" not in tok.lower() else as_fraction(float(tok))
    except (ValueError, ZeroDivisionError) as exc:
        raise NetSyntaxError(f"bad number {tok!r}") from exc


def parse_sum(text: str) -> PowerSum:
    text = text.strip()
    if not text:
        raise NetSyntaxError("empty sum")
    pos, terms, negl, first = 0, [], False, True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise NetSyntaxError(f"cannot parse term at {text[pos:]!r}")
        if not first and m.group("sign") is None:
            raise NetSyntaxError(f"missing sign before {text[pos:]!r}")
        sgn = -1 if m.group("sign") == "-" else 1
        if m.group("negl"):
            if sgn < 0:
                raise NetSyntaxError("NEGL cannot be negated")
            negl = True
        else:
            coef = _number(m.group("coef")) if m.group("coef") else Fraction(1)
            e_tok = m.group("e1") or m.group("e2")
            has_eps = "eps" in m.group(0)
            expo = _number(e_tok) if e_tok else Fraction(1 if has_eps else 0)
            terms.append((sgn * coef, expo))
        pos, first = m.end(), False
    return PowerSum.make(terms, negl)


def _pattern(text: str) -> CombPattern:
    parts = text.split()
    if parts == ["tail"]:
        return CombPattern.tail()
    if len(parts) == 5 and parts[0] == "comb":
        try:
            c, q = float(parts[1]), float(parts[2])
            m, r = int(parts[3]), int(parts[4])
            return CombPattern.comb(c, q, m, r)
        except ValueError as exc:
            raise NetSyntaxError(f"bad comb pattern {text!r}: {exc}") from exc
    raise NetSyntaxError(f"unknown pattern {text!r}")


def parse_net(text: str) -> PiecewiseNet:
    """Parse a net literal such as ``"[comb 0.5 0.5 2 0] 1*eps^1 ; [tail] 1*eps^2"``."""
    text = " ".join(line.split("#", 1)[0] for line in text.strip().splitlines()).strip()
    if not text:
        raise NetSyntaxError("empty net literal")
    if not text.startswith("["):
        return PiecewiseNet.constant(parse_sum(text))
    pieces = []
    for chunk in text.split(";"):
        m = _HEADER.match(chunk)
        if not m:
            raise NetSyntaxError(f"piece must start with [pattern]: {chunk.strip()!r}")
        pieces.append((_pattern(m.group(1)), parse_sum(m.group(2))))
    try:
        return PiecewiseNet.from_pieces(pieces)
    except ValueError as exc:
        if isinstance(exc, NetSyntaxError) or type(exc) is not ValueError:
            raise
        raise NetSyntaxError(str(exc)) from exc
