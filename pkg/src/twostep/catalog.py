"""Shipped catalog of two-step nilpotent Lie algebras of dimension 8 and 9.

The primary entries are the classified families for ``(n, p)`` in
``(8,2), (8,3), (8,4), (9,2), (9,5)``, stored as bracket tables in an
H-msg basis with literature metadata (torus rank ``r``, root-space flag,
H-msg related sequence).  The rank and root-space data are asserted
constants from the classification literature; nothing here computes them.

Auxiliary fixtures (relation ideals of the Gauger classification and a few
decomposable examples) live in :func:`auxiliary_fixtures`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import groupby
from typing import Dict, List, Optional, Tuple, Union

from .algebra import CatalogMeta, StructureTensor, TwoStepAlgebra
from .duality import RelationIdeal, dual, parse_relation, quotient
from .errors import TwoStepError, UnresolvedTie
from .invariants import INVARIANCE_CAVEAT, Fingerprint, fingerprint

RANK_CAVEAT = (
    "maximal-torus ranks r are catalog metadata from the classification "
    "literature; they are not computed"
)


@dataclass(frozen=True)
class _Source:
    id: str
    q: int
    p: int
    table: str
    rank_r: int
    root_dim1: Optional[bool]
    hmsg: Tuple[int, ...]
    provenance: str
    notes: Tuple[str, ...] = ()


_RZ11 = "Ren-Zhu (2011), n=8, p=2"
_RZ17A = "Ren-Zhu (2017a), n=8, p=3"
_YD13 = "Yan-Deng (2013), n=8, p=4"
_RZ17 = "Ren-Zhu (2017), n=9, p=2"
_WR11 = "Wang-Ren (2011), n=9, p=5"

_SOURCES: Tuple[_Source, ...] = (
    _Source("N^{8,2}_1", 6, 2, "[x1,x2]=y1; [x3,x4]=y2; [x5,x6]=y1+y2", 4, True, (1, 1, 1, 1, 1, 1), _RZ11),
    _Source("N^{8,2}_2", 6, 2, "[x5,x2]=[x6,x1]=y1; [x5,x3]=[x6,x4]=y2", 4, True, (1, 1, 1, 1, 2, 2), _RZ11),
    _Source("N^{8,2}_3", 6, 2, "[x1,x2]=[x6,x5]=y1; [x3,x6]=[x5,x4]=y2", 4, True, (1, 1, 1, 1, 2, 2), _RZ11),
    _Source("N^{8,2}_4", 6, 2, "[x1,x2]=[x3,x6]=[x5,x4]=y1; [x6,x5]=y2", 4, True, (1, 1, 1, 1, 2, 2), _RZ11),
    _Source(
        "N^{8,2}_5", 6, 2, "[x1,x6]=[x3,x4]=[x5,x2]=y1; [x6,x3]=[x4,x5]=y2", 3, None, (1, 1, 2, 2, 2, 2), _RZ11,
        ("root-space dimensions not stated; singleton rank class, so the flag is not needed",),
    ),
    _Source("N^{8,3}_1", 5, 3, "[x1,x2]=[x3,x4]=y1; [x3,x5]=y2; [x4,x5]=y3", 4, True, (1, 1, 2, 2, 2), _RZ17A),
    _Source("N^{8,3}_2", 5, 3, "[x1,x5]=[x4,x2]=y1; [x5,x3]=y2; [x3,x4]=y3", 4, True, (1, 1, 2, 2, 2), _RZ17A),
    _Source(
        "N^{8,3}_3", 5, 3, "[x5,x3]=[x3,x4]=y1; [x1,x5]=y2; [x2,x4]=y3", 4, False, (1, 1, 2, 2, 2), _RZ17A,
        ("root space attached to x3 has dimension 2",),
    ),
    _Source("N^{8,3}_4", 5, 3, "[x1,x5]=[x3,x4]=y1; [x5,x3]=y2; [x2,x4]=y3", 4, True, (1, 1, 2, 2, 2), _RZ17A),
    _Source("N^{8,3}_5", 5, 3, "[x1,x4]=[x5,x2]=y1; [x3,x5]=y2; [x4,x5]=y3", 4, True, (1, 1, 1, 2, 3), _RZ17A),
    _Source("N^{8,3}_6", 5, 3, "[x1,x2]=[x5,x4]=y1; [x2,x5]=[x4,x3]=y2; [x3,x5]=y3", 3, True, (1, 2, 2, 2, 3), _RZ17A),
    _Source(
        "N^{8,3}_7", 5, 3, "[x1,x2]=[x5,x3]=y1; [x2,x5]=[x5,x4]=y2; [x3,x4]=y3", 3, False, (1, 2, 2, 2, 3), _RZ17A,
        (
            "root space attached to x5 has dimension 2",
            "source states r = 4 in one place; stored r = 3, matching the equal-rank statement for N^{8,3}_6..10",
        ),
    ),
    _Source(
        "N^{8,3}_8", 5, 3, "[x1,x5]=[x3,x4]=y1; [x3,x5]=[x2,x4]=y2; [x4,x5]=y3", 3, True, (1, 1, 2, 3, 3), _RZ17A
    ),
    _Source("N^{8,3}_9", 5, 3, "[x1,x5]=[x3,x2]=y1; [x3,x5]=[x2,x4]=y2; [x4,x5]=y3", 3, True, (1, 2, 2, 2, 3), _RZ17A),
    _Source(
        "N^{8,3}_{10}", 5, 3, "[x1,x2]=[x3,x4]=y1; [x2,x3]=[x4,x5]=y2; [x1,x5]=y3", 3, True, (2, 2, 2, 2, 2), _RZ17A,
        (
            "printed table has [x3,x5] in the first statement, which gives related sequence "
            "(1,2,2,2,3) and the same fingerprint as N^{8,3}_9; stored [x3,x4], the unique "
            "single-index change reproducing the stated sequence (2,2,2,2,2)",
        ),
    ),
    _Source(
        "N^{8,3}_{11}", 5, 3, "[x1,x5]=[x4,x2]=y1; [x1,x4]=[x5,x3]=y2; [x4,x5]=[x2,x3]=y3", 2, None, (2, 2, 2, 3, 3), _RZ17A,
        ("root-space dimensions not stated; singleton rank class",),
    ),
    _Source(
        "N^{8,4}_1", 4, 4, "[x1,x2]=y1; [x2,x3]=y2; [x3,x4]=y3; [x4,x1]=y4", 4, True, (2, 2, 2, 2), _YD13,
        ("printed table ends with y5 although p = 4; stored y4",),
    ),
    _Source(
        "N^{8,4}_2", 4, 4, "[x2,x4]=y1; [x3,x4]=y2; [x2,x3]=y3; [x1,x4]=y4", 4, True, (1, 2, 2, 3), _YD13,
        ("printed table ends with y5 although p = 4; stored y4",),
    ),
    _Source(
        "N^{8,4}_3", 4, 4, "[x3,x4]=y1; [x1,x3]=y2; [x2,x4]=y2; [x1,x4]=y3; [x2,x3]=y4", 3, None, (2, 2, 3, 3), _YD13,
        ("root-space dimensions not stated; singleton rank class",),
    ),
    _Source("N^{9,2}_1", 7, 2, "[x1,x2]=[x4,x5]=[x6,x7]=y1; [x3,x7]=y2", 5, True, (1, 1, 1, 1, 1, 1, 2), _RZ17),
    _Source("N^{9,2}_2", 7, 2, "[x2,x7]=[x4,x5]=y1; [x1,x3]=[x6,x7]=y2", 5, True, (1, 1, 1, 1, 1, 1, 2), _RZ17),
    _Source("N^{9,2}_3", 7, 2, "[x1,x2]=[x3,x7]=[x5,x6]=y1; [x4,x6]=[x5,x7]=y2", 4, True, (1, 1, 1, 1, 2, 2, 2), _RZ17),
    _Source("N^{9,2}_4", 7, 2, "[x7,x2]=[x4,x5]=[x6,x1]=y1; [x7,x3]=[x5,x6]=y2", 4, True, (1, 1, 1, 1, 2, 2, 2), _RZ17),
    _Source(
        "N^{9,2}_5", 7, 2, "[x1,x7]=[x3,x4]=[x5,x6]=y1; [x7,x3]=[x4,x5]=[x6,x2]=y2", 3, True, (1, 1, 2, 2, 2, 2, 2), _RZ17,
        ("sequence printed unsorted as (2,2,2,2,2,1,1); stored sorted",),
    ),
    _Source("N^{9,5}_1", 4, 5, "[x1,x3]=y1; [x1,x4]=y2; [x2,x3]=y3; [x2,x4]=y4; [x3,x4]=y5", 4, True, (2, 2, 3, 3), _WR11),
    _Source(
        "N^{9,5}_2", 4, 5, "[x1,x2]=y1; [x1,x3]=[x2,x4]=y2; [x1,x4]=y3; [x2,x3]=y4; [x3,x4]=y5", 4, True, (3, 3, 3, 3), _WR11
    ),
)

#: Tables exactly as printed in the source, for entries that needed a correction.
VERBATIM_TABLES: Dict[str, str] = {
    "N^{8,3}_{10}": "[x1,x2]=[x3,x5]=y1; [x2,x3]=[x4,x5]=y2; [x1,x5]=y3",
    "N^{8,4}_1": "[x1,x2]=y1; [x2,x3]=y2; [x3,x4]=y3; [x4,x1]=y5",
    "N^{8,4}_2": "[x2,x4]=y1; [x3,x4]=y2; [x2,x3]=y3; [x1,x4]=y5",
}

#: T-names the literature states explicitly; the T^{8,2}_{4,2..4} rows come
#: from applying the stated ordering rules (the printed sentence is garbled).
STATED_T_NAMES: Dict[str, str] = {
    "N^{8,2}_1": "T^{8,2}_{4,1}",
    "N^{8,2}_2": "T^{8,2}_{4,4}",
    "N^{8,2}_3": "T^{8,2}_{4,3}",
    "N^{8,2}_4": "T^{8,2}_{4,2}",
    "N^{8,2}_5": "T^{8,2}_3",
    "N^{8,3}_1": "T^{8,3}_{4,2}",
    "N^{8,3}_2": "T^{8,3}_{4,4}",
    "N^{8,3}_3": "T^{8,3}_{4,5}",
    "N^{8,3}_4": "T^{8,3}_{4,3}",
    "N^{8,3}_5": "T^{8,3}_{4,1}",
    "N^{8,3}_6": "T^{8,3}_{3,2}",
    "N^{8,3}_7": "T^{8,3}_{3,5}",
    "N^{8,3}_8": "T^{8,3}_{3,1}",
    "N^{8,3}_9": "T^{8,3}_{3,3}",
    "N^{8,3}_{10}": "T^{8,3}_{3,4}",
    "N^{8,3}_{11}": "T^{8,3}_2",
    "N^{8,4}_1": "T^{8,4}_{4,2}",
    "N^{8,4}_2": "T^{8,4}_{4,1}",
    "N^{8,4}_3": "T^{8,4}_3",
    "N^{9,2}_1": "T^{9,2}_{5,1}",
    "N^{9,2}_2": "T^{9,2}_{5,2}",
    "N^{9,2}_3": "T^{9,2}_{4,1}",
    "N^{9,2}_4": "T^{9,2}_{4,2}",
    "N^{9,2}_5": "T^{9,2}_3",
    "N^{9,5}_1": "T^{9,5}_{4,1}",
    "N^{9,5}_2": "T^{9,5}_{4,2}",
}


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    algebra: TwoStepAlgebra
    rank_r: int
    root_spaces_all_dim1: Optional[bool]
    hmsg_related_sequence: Tuple[int, ...]
    t_name: str
    provenance: str
    notes: Tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def q(self) -> int:
        return self.algebra.q


def _sub(parts: Tuple[int, ...]) -> str:
    body = ",".join(str(x) for x in parts)
    return body if len(body) == 1 else "{" + body + "}"


def format_name(letter: str, n: int, p: int, sub: Tuple[int, ...]) -> str:
    """``T^{8,3}_{4,4}``, ``T^{8,3}_2``, ``N^{8,3}_{11}``."""
    return f"{letter}^{{{n},{p}}}_{_sub(sub)}"


def normalize_id(text: str) -> str:
    """Canonical spelling of a catalog or T-name: braces and spaces are optional on input."""
    m = re.fullmatch(r"\s*([NT])\s*\^\s*\{?\s*(\d+)\s*,\s*(\d+)\s*\}?\s*_\s*\{?\s*([\d\s,]+?)\s*\}?\s*", text)
    if not m:
        raise KeyError(f"not a catalog identifier: {text!r}")
    sub = tuple(int(s) for s in m.group(4).split(","))
    return format_name(m.group(1), int(m.group(2)), int(m.group(3)), sub)


# ---------------------------------------------------------------------------
# Nomenclature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NomenclatureKey:
    n: int
    p: int
    r: int
    root_flag: Optional[bool]
    hmsg: Tuple[int, ...]
    generator_relation_sequence: Tuple[int, ...]
    center_related_sequence: Optional[Tuple[int, ...]]
    weighted_center_related_sequence: Optional[Tuple[int, ...]]
    girth: Optional[int]

    def tiers(self) -> tuple:
        """Sort key inside an ``(n, p, r)`` class.

        Entries with a higher-dimensional root space go last; missing
        values (withheld sequences, forests) sort after present ones.
        """

        def opt(v):
            return (1, ()) if v is None else (0, v)

        return (
            self.root_flag is False,
            self.hmsg,
            self.generator_relation_sequence,
            opt(self.center_related_sequence),
            opt(self.weighted_center_related_sequence),
            opt(self.girth),
        )


def nomenclature_key(
    alg: TwoStepAlgebra, rank_r: int, root_flag: Optional[bool], hmsg: Tuple[int, ...]
) -> NomenclatureKey:
    fp = fingerprint(alg)
    return NomenclatureKey(
        alg.n,
        alg.p,
        rank_r,
        root_flag,
        tuple(hmsg),
        fp.generator_relation_sequence,
        fp.center_related_sequence,
        fp.weighted_center_related_sequence,
        fp.girth,
    )


def assign_t_names(keys: Dict[str, NomenclatureKey]) -> Dict[str, str]:
    """Map each id to ``T^{n,p}_r`` (singleton rank class) or ``T^{n,p}_{r,i}``.

    Raises :class:`UnresolvedTie` when two entries of a class agree on
    every tier.
    """
    out: Dict[str, str] = {}

    def cls(item):
        k = item[1]
        return (k.n, k.p, k.r)

    for (n, p, r), group in groupby(sorted(keys.items(), key=cls), key=cls):
        members = sorted(group, key=lambda it: it[1].tiers())
        if len(members) == 1:
            out[members[0][0]] = format_name("T", n, p, (r,))
            continue
        for (a, ka), (b, kb) in zip(members, members[1:]):
            if ka.tiers() == kb.tiers():
                raise UnresolvedTie([a, b])
        for i, (ident, _) in enumerate(members, start=1):
            out[ident] = format_name("T", n, p, (r, i))
    return out


# ---------------------------------------------------------------------------
# Catalog construction
# ---------------------------------------------------------------------------


def _build(src: _Source) -> TwoStepAlgebra:
    m = re.fullmatch(r"N\^\{(\d+),(\d+)\}_\{?(\d+)\}?", src.id)
    n = int(m.group(1))
    meta = CatalogMeta(n=n, p=src.p, q=src.q, source_label=src.id, rank_r=src.rank_r)
    t = StructureTensor.from_text(src.table, src.q, src.p)
    return TwoStepAlgebra(t, name=src.id, meta=meta)


@lru_cache(maxsize=None)
def _entries() -> Tuple[CatalogEntry, ...]:
    algs = {s.id: _build(s) for s in _SOURCES}
    keys = {s.id: nomenclature_key(algs[s.id], s.rank_r, s.root_dim1, s.hmsg) for s in _SOURCES}
    names = assign_t_names(keys)
    return tuple(
        CatalogEntry(
            id=s.id,
            algebra=algs[s.id],
            rank_r=s.rank_r,
            root_spaces_all_dim1=s.root_dim1,
            hmsg_related_sequence=s.hmsg,
            t_name=names[s.id],
            provenance=s.provenance,
            notes=s.notes,
        )
        for s in _SOURCES
    )


def catalog() -> List[CatalogEntry]:
    """The 26 primary entries, in source order."""
    return list(_entries())


def get(ident: str) -> CatalogEntry:
    """Look up by source label (``N^{8,3}_11``) or T-name (``T^{8,3}_2``)."""
    key = normalize_id(ident)
    for e in _entries():
        if key in (e.id, e.t_name):
            return e
    raise KeyError(f"unknown catalog id {ident!r}")


def groups() -> Dict[Tuple[int, int], List[CatalogEntry]]:
    out: Dict[Tuple[int, int], List[CatalogEntry]] = {}
    for e in _entries():
        out.setdefault((e.n, e.p), []).append(e)
    return out


# ---------------------------------------------------------------------------
# Auxiliary fixtures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    id: str
    q: int
    description: str
    table: Optional[str] = None
    p: Optional[int] = None
    relations: Optional[str] = None
    dual_of_relations: bool = False
    expected: Optional[str] = None  # catalog id it should match, if any
    decomposable: Optional[bool] = None

    def ideal(self) -> Optional[RelationIdeal]:
        return parse_relation(self.q, self.relations) if self.relations else None

    def algebra(self) -> TwoStepAlgebra:
        if self.table is not None:
            return TwoStepAlgebra.from_text(self.table, self.q, self.p, name=self.id)
        ideal = self.ideal()
        if self.dual_of_relations:
            return dual(quotient(self.q, ideal), name=self.id)
        return quotient(self.q, ideal, name=self.id)


_GAUGER_Q6 = {
    1: "[u1,u2]+[u5,u6]; [u3,u4]+[u5,u6]",
    2: "[u1,u2]+[u3,u4]; [u5,u6]",
    3: "[u1,u4]+[u2,u3]; [u2,u4]+[u5,u6]",
    4: "[u1,u4]+[u2,u3]+[u5,u6]; [u2,u4]",
    5: "[u1,u6]+[u2,u5]+[u3,u4]; [u2,u6]+[u3,u5]",
    6: "[u1,u2]; [u3,u4]",
    7: "[u1,u4]+[u2,u3]; [u2,u4]",
    8: "[u1,u2]+[u5,u6]; [u4,u6]",
    9: "[u5,u6]; [u4,u6]",
    10: "[u1,u3]+[u4,u6]; [u2,u3]+[u5,u6]",
    11: "[u2,u6]+[u3,u5]; [u3,u6]+[u4,u5]",
}
_Q6_MATCH = {1: "N^{8,2}_1", 3: "N^{8,2}_3", 4: "N^{8,2}_4", 5: "N^{8,2}_5", 10: "N^{8,2}_2"}

_GAUGER_Q4_TWO = {1: "[u1,u2]; [u3,u4]", 2: "[u1,u4]+[u2,u3]; [u2,u4]", 3: "[u2,u4]; [u3,u4]"}
_Q4_TWO_MATCH = {1: "N^{8,4}_1", 2: "N^{8,4}_3", 3: "N^{8,4}_2"}

_GAUGER_Q4_ONE = {1: "[u1,u2]", 2: "[u1,u2]+[u3,u4]"}
_Q4_ONE_MATCH = {1: "N^{9,5}_1", 2: "N^{9,5}_2"}


@lru_cache(maxsize=None)
def _fixtures() -> Tuple[Fixture, ...]:
    out = []
    for j, rel in _GAUGER_Q6.items():
        out.append(
            Fixture(
                f"gauger-6-2-I{j}-dual",
                6,
                f"N^6 / I_{j}^perp, 6 generators, 2 relations (Gauger)",
                relations=rel,
                dual_of_relations=True,
                expected=_Q6_MATCH.get(j),
                decomposable=j not in _Q6_MATCH,
            )
        )
    for j, rel in _GAUGER_Q4_TWO.items():
        out.append(
            Fixture(
                f"gauger-4-2-I{j}",
                4,
                f"N^4 / I_{j}, 4 generators, 2 relations (Gauger)",
                relations=rel,
                expected=_Q4_TWO_MATCH[j],
                decomposable=False,
            )
        )
    for j, rel in _GAUGER_Q4_ONE.items():
        out.append(
            Fixture(
                f"gauger-4-1-I{j}",
                4,
                f"N^4 / I_{j}, 4 generators, 1 relation (Gauger)",
                relations=rel,
                expected=_Q4_ONE_MATCH[j],
                decomposable=False,
            )
        )
    out += [
        Fixture(
            "GT99-T2-91", 5, "Galitski-Timashev Table 2 No. 91 (n=8, p=3)",
            table="[x1,x4]=y2; [x1,x5]=y3; [x2,x3]=y1", p=3, decomposable=True,
        ),
        Fixture(
            "GT99-T2-82", 5, "Galitski-Timashev Table 2 No. 82 (n=9, p=4)",
            table="[x1,x2]=y2; [x1,x3]=y3; [x2,x3]=y4; [x4,x5]=y1", p=4, decomposable=True,
        ),
        Fixture(
            "GT99-T8-44", 6,
            "Galitski-Timashev Table 8 No. 44; listed under n=9, p=4 but the printed "
            "table only reaches y3, so it is stored with q=6, p=3",
            table="[x1,x2]=y3; [x1,x5]=y1; [x2,x6]=y1; [x3,x4]=y2", p=3, decomposable=True,
        ),
        Fixture(
            "rebased-H+H", 4,
            "[x1,x2]=y1, [x3,x4]=y2 rewritten with x2+x3 and x2-x3 in place of x2, x3; "
            "decomposable with a connected hypergraph",
            table="[x1,x2]=y1; [x1,x3]=y1; [x2,x4]=y2; [x4,x3]=y2", p=2, decomposable=True,
        ),
    ]
    return tuple(out)


def auxiliary_fixtures() -> List[Fixture]:
    return list(_fixtures())


def get_fixture(ident: str) -> Fixture:
    for f in _fixtures():
        if f.id == ident:
            return f
    raise KeyError(f"unknown fixture {ident!r}")


# ---------------------------------------------------------------------------
# Matching and distinguishing
# ---------------------------------------------------------------------------


class MatchStrength(str, Enum):
    EXACT = "Exact"
    PARTIAL = "Partial"
    NONE = "None"


def compare_fingerprints(a: Fingerprint, b: Fingerprint) -> MatchStrength:
    if a == b:
        return MatchStrength.EXACT
    shared = [
        "q",
        "p",
        "related_sequence",
        "generator_relation_sequence",
        "girth",
    ]
    if a.uniform3 and b.uniform3:
        shared += ["center_related_sequence", "weighted_center_related_sequence"]
    if all(getattr(a, f) == getattr(b, f) for f in shared):
        return MatchStrength.PARTIAL
    return MatchStrength.NONE


@dataclass(frozen=True)
class CatalogMatch:
    entry: CatalogEntry
    strength: MatchStrength


def match(alg: TwoStepAlgebra) -> List[CatalogMatch]:
    """Catalog entries with the same ``(q, p)`` whose fingerprint agrees.

    An Exact match means the invariants here cannot tell the algebras
    apart; it is not an isomorphism proof.  Partial means they agree on
    everything both sides compute, but only one side is 3-uniform.
    """
    fp = fingerprint(alg)
    out = []
    for e in _entries():
        if (e.q, e.p) != (alg.q, alg.p):
            continue
        s = compare_fingerprints(fp, fingerprint(e.algebra))
        if s is not MatchStrength.NONE:
            out.append(CatalogMatch(e, s))
    out.sort(key=lambda m: (m.strength is not MatchStrength.EXACT,))
    return out


def has_coverage(q: int, p: int) -> bool:
    return any((e.q, e.p) == (q, p) for e in _entries())


@dataclass(frozen=True)
class NotIsomorphic:
    invariant: str
    left: object
    right: object
    condition: Optional[str] = None

    @property
    def reason(self) -> str:
        text = f"{self.invariant} {_fmt(self.left)} != {_fmt(self.right)}"
        return text + (f" ({self.condition})" if self.condition else "")

    def __str__(self) -> str:
        return f"NotIsomorphic({self.reason})"


@dataclass(frozen=True)
class Inconclusive:
    reason: str = "all computable invariants agree"

    def __str__(self) -> str:
        return f"Inconclusive({self.reason})"


def _fmt(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


_SEQ_CONDITION = "valid as an invariant for H-msg bases with one-dimensional root spaces"


def distinguish(a: TwoStepAlgebra, b: TwoStepAlgebra) -> Union[NotIsomorphic, Inconclusive]:
    """First invariant that separates ``a`` from ``b``, else Inconclusive.

    ``(q, p)`` is a true invariant; the sequences and girth separate only
    under the H-msg hypothesis, which the reason text records.
    """
    if (a.q, a.p) != (b.q, b.p):
        return NotIsomorphic("(q, p)", (a.q, a.p), (b.q, b.p))
    fa, fb = fingerprint(a), fingerprint(b)
    checks = [
        ("related sequence", "related_sequence"),
        ("generator relation sequence", "generator_relation_sequence"),
    ]
    if fa.uniform3 and fb.uniform3:
        checks += [
            ("center related sequence", "center_related_sequence"),
            ("weighted center related sequence", "weighted_center_related_sequence"),
        ]
    checks.append(("girth", "girth"))
    for label, attr in checks:
        va, vb = getattr(fa, attr), getattr(fb, attr)
        if va != vb:
            cond = _SEQ_CONDITION
            if attr in ("center_related_sequence", "weighted_center_related_sequence"):
                cond += " and a 3-uniform hypergraph"
            return NotIsomorphic(label, va, vb, cond)
    if fa.uniform3 != fb.uniform3:
        return Inconclusive("invariants agree where both are computable; center sequences withheld on one side")
    return Inconclusive()


CAVEATS = (INVARIANCE_CAVEAT, RANK_CAVEAT)
