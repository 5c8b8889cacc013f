"""Parsers for the small textual notations used throughout the package.

Two notations share one grammar for signed rational linear combinations:

* bracket tables such as ``[x5,x2] = [x6,x1] = y1; [x5,x3] = y1 - 1/2 y2``;
* relation ideals such as ``[u1,u2] + [u5,u6]; [u3,u4] + [u5,u6]``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import ParseError

_COEFF = r"(?P<coeff>\d+(?:/\d+)?)?\s*\*?\s*"
_TERM_SEP = re.compile(r"\s*([+-])\s*")

_Y_ATOM = re.compile(r"^" + _COEFF + r"y_?\{?(?P<k>\d+)\}?$")
_X_BRACKET = re.compile(r"^\[\s*x_?\{?(?P<i>\d+)\}?\s*,\s*x_?\{?(?P<j>\d+)\}?\s*\]$")
_U_ATOM = re.compile(
    r"^" + _COEFF + r"\[\s*u_?\{?(?P<i>\d+)\}?\s*,\s*u_?\{?(?P<j>\d+)\}?\s*\]$"
)


def _split_terms(text: str) -> List[Tuple[int, str]]:
    """Split ``a + b - c`` into signed chunks; brackets never contain +/-."""
    text = text.strip()
    if not text:
        raise ParseError("empty linear combination")
    if text[0] not in "+-":
        text = "+" + text
    parts = _TERM_SEP.split(text)
    # parts = ['', sign, term, sign, term, ...]
    if parts[0].strip():
        raise ParseError(f"cannot parse {text!r}")
    out = []
    for sign, term in zip(parts[1::2], parts[2::2]):
        term = term.strip()
        if not term:
            raise ParseError(f"dangling sign in {text!r}")
        out.append((1 if sign == "+" else -1, term))
    return out


def _coefficient(sign: int, raw: str | None) -> Fraction:
    c = Fraction(raw) if raw else Fraction(1)
    return sign * c


def parse_center_combination(text: str) -> Dict[int, Fraction]:
    """``"y1 - 2y3"`` -> ``{1: 1, 3: -2}`` (1-based center indices)."""
    out: Dict[int, Fraction] = {}
    for sign, term in _split_terms(text):
        m = _Y_ATOM.match(term)
        if not m:
            raise ParseError(f"expected a center term like '2y1', got {term!r}")
        k = int(m.group("k"))
        out[k] = out.get(k, Fraction(0)) + _coefficient(sign, m.group("coeff"))
    return {k: v for k, v in out.items() if v != 0}


def parse_bracket_table(text: str) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
    """Parse chained bracket statements into ``{(i, j): {k: coeff}}``.

    Statements are separated by ``;`` or newlines.  Each is
    ``[xi,xj] = [xk,xl] = ... = <combination of y's>``.  The pair is stored
    as written; orientation is handled by the caller.
    """
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    seen: set[frozenset] = set()
    for stmt in re.split(r"[;\n]", text):
        stmt = stmt.strip()
        if not stmt:
            continue
        parts = [s.strip() for s in stmt.split("=")]
        if len(parts) < 2:
            raise ParseError(f"statement {stmt!r} has no '='")
        rhs = parse_center_combination(parts[-1])
        for lhs in parts[:-1]:
            m = _X_BRACKET.match(lhs)
            if not m:
                raise ParseError(f"expected a bracket like '[x1,x2]', got {lhs!r}")
            i, j = int(m.group("i")), int(m.group("j"))
            if i == j:
                raise ParseError(f"bracket [x{i},x{j}] of a generator with itself")
            key = frozenset((i, j))
            if key in seen:
                raise ParseError(f"bracket [x{i},x{j}] defined twice")
            seen.add(key)
            table[(i, j)] = dict(rhs)
    if not table:
        raise ParseError("empty bracket table")
    return table


def parse_pair_combination(text: str) -> List[Tuple[Fraction, int, int]]:
    """``"[u1,u2] - 2[u4,u3]"`` -> ``[(1, 1, 2), (-2, 4, 3)]`` as written."""
    out = []
    for sign, term in _split_terms(text):
        m = _U_ATOM.match(term)
        if not m:
            raise ParseError(f"expected a term like '[u1,u2]' or '2[u1,u2]', got {term!r}")
        out.append((_coefficient(sign, m.group("coeff")), int(m.group("i")), int(m.group("j"))))
    return out
