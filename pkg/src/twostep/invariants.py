"""Generating hypergraph, generator graph and the invariant sequences read off them.

All sequences are computed in the basis the algebra is given in.  They are
isomorphism invariants only when that basis is an H-msg whose root spaces
are one-dimensional (the Leger-Luks setting); the center sequences further
need a 3-uniform hypergraph.  Callers that report them should say so.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional, Tuple

import networkx as nx

from .algebra import TwoStepAlgebra
from .errors import NotThreeUniform

INVARIANCE_CAVEAT = (
    "sequences are computed in the given basis; they are isomorphism invariants "
    "only for an H-msg basis with one-dimensional root spaces (center sequences "
    "additionally need a 3-uniform hypergraph)"
)


@dataclass(frozen=True)
class Hyperedge:
    i: int
    j: int
    centers: frozenset

    def __str__(self) -> str:
        ys = ",".join(f"y{k}" for k in sorted(self.centers))
        return f"(x{self.i},x{self.j};{ys})"


@dataclass(frozen=True)
class GeneratingHypergraph:
    q: int
    p: int
    edges: Tuple[Hyperedge, ...]

    @property
    def is_3_uniform(self) -> bool:
        return all(len(e.centers) == 1 for e in self.edges)

    def to_networkx(self) -> nx.Graph:
        """Bipartite incidence graph; hyperedges become auxiliary nodes."""
        g = nx.Graph()
        g.add_nodes_from(("x", i) for i in range(1, self.q + 1))
        g.add_nodes_from(("y", k) for k in range(1, self.p + 1))
        for n, e in enumerate(self.edges):
            node = ("e", n)
            g.add_edge(node, ("x", e.i))
            g.add_edge(node, ("x", e.j))
            for k in e.centers:
                g.add_edge(node, ("y", k))
        return g


@dataclass(frozen=True)
class Component:
    generators: frozenset
    centers: frozenset

    def __str__(self) -> str:
        xs = ",".join(f"x{i}" for i in sorted(self.generators))
        ys = ",".join(f"y{k}" for k in sorted(self.centers))
        return "{" + xs + "|" + ys + "}"

    @property
    def sort_key(self):
        return (min(self.generators, default=10**9), min(self.centers, default=10**9))


@dataclass(frozen=True)
class GeneratorGraph:
    q: int
    edges: Tuple[Tuple[int, int], ...]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(1, self.q + 1))
        g.add_edges_from(self.edges)
        return g

    def degrees(self) -> Tuple[int, ...]:
        deg = [0] * (self.q + 1)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return tuple(deg[1:])


def build_hypergraph(alg: TwoStepAlgebra) -> GeneratingHypergraph:
    edges = tuple(
        Hyperedge(i, j, frozenset(k + 1 for k, c in enumerate(vec) if c != 0))
        for (i, j), vec in alg.tensor.nonzero_brackets().items()
    )
    covered = set().union(*(e.centers for e in edges)) if edges else set()
    # Guaranteed by validation (derived dimension = p).
    assert covered == set(range(1, alg.p + 1)), "center vertex not on any hyperedge"
    return GeneratingHypergraph(alg.q, alg.p, edges)


def components(g: GeneratingHypergraph) -> list[Component]:
    """Connected components over all ``q + p`` vertices, ordered by smallest member."""
    out = []
    for comp in nx.connected_components(g.to_networkx()):
        out.append(
            Component(
                frozenset(v[1] for v in comp if v[0] == "x"),
                frozenset(v[1] for v in comp if v[0] == "y"),
            )
        )
    return sorted(out, key=lambda c: c.sort_key)


def build_generator_graph(alg: TwoStepAlgebra) -> GeneratorGraph:
    return GeneratorGraph(alg.q, tuple(alg.tensor.nonzero_brackets()))


def related_sequence(alg: TwoStepAlgebra) -> Tuple[int, ...]:
    """Sorted degree sequence of the generator graph."""
    return tuple(sorted(build_generator_graph(alg).degrees()))


def generator_relation_sequence(alg: TwoStepAlgebra) -> Tuple[int, ...]:
    """Sorted component sizes of the generator graph (isolated generators count as 1)."""
    g = build_generator_graph(alg).to_networkx()
    return tuple(sorted(len(c) for c in nx.connected_components(g)))


def _require_3_uniform(h: GeneratingHypergraph) -> None:
    if not h.is_3_uniform:
        raise NotThreeUniform([(e.i, e.j, e.centers) for e in h.edges if len(e.centers) != 1])


def center_related_sequence(alg: TwoStepAlgebra) -> Tuple[int, ...]:
    """Per center vertex, the number of hyperedges through it; sorted."""
    h = build_hypergraph(alg)
    _require_3_uniform(h)
    counts = [0] * (alg.p + 1)
    for e in h.edges:
        (k,) = e.centers
        counts[k] += 1
    return tuple(sorted(counts[1:]))


def weighted_center_related_sequence(alg: TwoStepAlgebra) -> Tuple[int, ...]:
    """``w(y_k)`` = sum over hyperedges ``(x_i, x_j, y_k)`` of ``d(x_i) + d(x_j)``; sorted."""
    h = build_hypergraph(alg)
    _require_3_uniform(h)
    deg = (0,) + build_generator_graph(alg).degrees()
    w = [0] * (alg.p + 1)
    for e in h.edges:
        (k,) = e.centers
        w[k] += deg[e.i] + deg[e.j]
    return tuple(sorted(w[1:]))


def girth(g: GeneratorGraph) -> Optional[int]:
    """Length of a shortest cycle, ``None`` for a forest."""
    value = nx.girth(g.to_networkx())
    return None if value == float("inf") else int(value)


@dataclass(frozen=True)
class Fingerprint:
    q: int
    p: int
    related_sequence: Tuple[int, ...]
    generator_relation_sequence: Tuple[int, ...]
    center_related_sequence: Optional[Tuple[int, ...]]
    weighted_center_related_sequence: Optional[Tuple[int, ...]]
    girth: Optional[int]
    uniform3: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}

    @property
    def withheld(self) -> Tuple[str, ...]:
        if self.uniform3:
            return ()
        return ("center_related_sequence", "weighted_center_related_sequence")


def fingerprint(alg: TwoStepAlgebra) -> Fingerprint:
    h = build_hypergraph(alg)
    uniform = h.is_3_uniform
    return Fingerprint(
        q=alg.q,
        p=alg.p,
        related_sequence=related_sequence(alg),
        generator_relation_sequence=generator_relation_sequence(alg),
        center_related_sequence=center_related_sequence(alg) if uniform else None,
        weighted_center_related_sequence=weighted_center_related_sequence(alg) if uniform else None,
        girth=girth(build_generator_graph(alg)),
        uniform3=uniform,
    )
