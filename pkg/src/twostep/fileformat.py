"""JSON algebra files.

Layout (UTF-8)::

    {
      "format_version": "1",
      "name": "N^{8,2}_1",
      "q": 6, "p": 2,
      "brackets": [{"i": 1, "j": 2, "coeffs": {"1": "1"}}, ...],
      "notes": "..."
    }

One record per unordered pair with ``i < j``; the skew image is implied.
Rationals are strings (``"3/2"``, ``"-1"``) so no binary float ever enters.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .algebra import StructureTensor, TwoStepAlgebra
from .errors import ParseError

FORMAT_VERSION = "1"
_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def _fail(where: str, msg: str) -> ParseError:
    return ParseError(f"{where}: {msg}")


def _int_field(doc: dict, key: str, where: str) -> int:
    if key not in doc:
        raise _fail(where, f"missing field {key!r}")
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise _fail(f"{where}.{key}", f"expected an integer, got {v!r}")
    return v


def parse_rational(text: Any, where: str = "value") -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise _fail(where, f"expected a rational string like '3/2' or '-1', got {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise _fail(where, f"zero denominator in {text!r}") from None


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def algebra_from_dict(doc: Any, source: str = "<document>") -> TwoStepAlgebra:
    """Build and validate an algebra; structural problems raise :class:`ParseError`.

    Validation failures (skewness, derived dimension) propagate unchanged.
    """
    if not isinstance(doc, dict):
        raise _fail(source, "top level must be an object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise _fail(f"{source}.format_version", f"expected {FORMAT_VERSION!r}, got {doc.get('format_version')!r}")
    q = _int_field(doc, "q", source)
    p = _int_field(doc, "p", source)
    if q < 1 or p < 1:
        raise _fail(source, f"q and p must be positive, got q={q}, p={p}")
    recs = doc.get("brackets")
    if not isinstance(recs, list):
        raise _fail(f"{source}.brackets", "expected a list")
    brackets = {}
    for n, rec in enumerate(recs):
        where = f"{source}.brackets[{n}]"
        if not isinstance(rec, dict):
            raise _fail(where, "expected an object")
        i, j = _int_field(rec, "i", where), _int_field(rec, "j", where)
        if not (1 <= i <= q and 1 <= j <= q):
            raise _fail(where, f"generator index out of range 1..{q}: ({i},{j})")
        if i >= j:
            raise _fail(where, f"need i < j, got ({i},{j})")
        if (i, j) in brackets:
            raise _fail(where, f"duplicate record for ({i},{j})")
        coeffs = rec.get("coeffs")
        if not isinstance(coeffs, dict):
            raise _fail(f"{where}.coeffs", "expected an object mapping center index to rational")
        vec = {}
        for key, val in coeffs.items():
            if not re.fullmatch(r"\d+", str(key)) or not 1 <= int(key) <= p:
                raise _fail(f"{where}.coeffs", f"center index {key!r} out of range 1..{p}")
            c = parse_rational(val, f"{where}.coeffs[{key}]")
            if c:
                vec[int(key)] = c
        brackets[(i, j)] = vec
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise _fail(f"{source}.name", "expected a string")
    t = StructureTensor.from_brackets(q, p, brackets)
    return TwoStepAlgebra(t, name=name)


def algebra_to_dict(alg: TwoStepAlgebra, notes: Optional[str] = None) -> dict:
    doc = {"format_version": FORMAT_VERSION}
    if alg.name:
        doc["name"] = alg.name
    doc["q"] = alg.q
    doc["p"] = alg.p
    doc["brackets"] = [
        {"i": i, "j": j, "coeffs": {str(k + 1): format_rational(c) for k, c in enumerate(vec) if c}}
        for (i, j), vec in alg.tensor.nonzero_brackets().items()
    ]
    if notes:
        doc["notes"] = notes
    return doc


def loads(text: str, source: str = "<string>") -> TwoStepAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return algebra_from_dict(doc, source)


def dumps(alg: TwoStepAlgebra, notes: Optional[str] = None) -> str:
    return json.dumps(algebra_to_dict(alg, notes), indent=2, ensure_ascii=False) + "\n"


def read(path: str | Path) -> TwoStepAlgebra:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc.reason})") from None
    return loads(text, str(path))


def write(alg: TwoStepAlgebra, path: str | Path, notes: Optional[str] = None) -> None:
    Path(path).write_text(dumps(alg, notes), encoding="utf-8")
