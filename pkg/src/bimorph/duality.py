"""Bimorphism / antibimorphism duality under complementation and inversion.

A bijection ``F: G -> H`` is a bimorphism when it preserves edges and an
antibimorphism when it preserves nonedges.  The four statements

1. ``F`` is a bimorphism ``G -> H``
2. ``F`` is an antibimorphism ``co(G) -> co(H)``
3. ``F^-1`` is a bimorphism ``co(H) -> co(G)``
4. ``F^-1`` is an antibimorphism ``H -> G``

are equivalent; :func:`verify_duality_quadruple` evaluates each one from
scratch so the equivalence can be tested rather than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph_core import FiniteGraph
from .morphism import LocalMorphism, inverse


@dataclass(frozen=True)
class BijectionWitness:
    forward: LocalMorphism
    inverse: LocalMorphism

    def __post_init__(self):
        fwd, inv = self.forward.as_dict(), self.inverse.as_dict()
        if len(fwd) != len(inv) or any(inv.get(w) != u for u, w in fwd.items()):
            raise ValueError("inverse does not undo forward")
        if any(fwd.get(w) != u for u, w in inv.items()):
            raise ValueError("forward does not undo inverse")

    @classmethod
    def of(cls, forward: LocalMorphism) -> "BijectionWitness":
        return cls(forward, inverse(forward))

    @classmethod
    def from_permutation(cls, perm, g: FiniteGraph, h: FiniteGraph) -> "BijectionWitness":
        return cls.of(LocalMorphism(g, h, tuple(range(len(perm))), tuple(perm)))


def _require_bijection(f: LocalMorphism, g: FiniteGraph, h: FiniteGraph) -> dict:
    if g.order != h.order:
        raise ValueError("graphs of different orders admit no bijection")
    mapping = f.as_dict()
    if set(mapping) != set(g.vertices) or set(mapping.values()) != set(h.vertices):
        raise ValueError("map is not a bijection between the vertex sets")
    return mapping


def is_bimorphism(f: LocalMorphism, g: FiniteGraph, h: FiniteGraph) -> bool:
    mapping = _require_bijection(f, g, h)
    return all(h.adjacent(mapping[u], mapping[v]) for u, v in g.edges)


def is_antibimorphism(f: LocalMorphism, g: FiniteGraph, h: FiniteGraph) -> bool:
    mapping = _require_bijection(f, g, h)
    return all(
        not h.adjacent(mapping[u], mapping[v])
        for u, v in itertools.combinations(g.vertices, 2)
        if not g.adjacent(u, v)
    )


@dataclass(frozen=True)
class DualityReport:
    bimorphism: bool
    complement_antibimorphism: bool
    inverse_complement_bimorphism: bool
    inverse_antibimorphism: bool

    @property
    def clauses(self) -> tuple[bool, bool, bool, bool]:
        return (
            self.bimorphism,
            self.complement_antibimorphism,
            self.inverse_complement_bimorphism,
            self.inverse_antibimorphism,
        )

    @property
    def consistent(self) -> bool:
        return len(set(self.clauses)) == 1


def verify_duality_quadruple(f: BijectionWitness, g: FiniteGraph, h: FiniteGraph) -> DualityReport:
    gc, hc = g.complement(), h.complement()
    return DualityReport(
        is_bimorphism(f.forward, g, h),
        is_antibimorphism(f.forward, gc, hc),
        is_bimorphism(f.inverse, hc, gc),
        is_antibimorphism(f.inverse, h, g),
    )


def preserves_nonedges(f: LocalMorphism, graph) -> bool:
    """Does ``f`` send every nonadjacent pair of distinct domain vertices to a nonadjacent pair?"""
    pairs = list(zip(f.domain, f.image))
    return all(
        not graph.adjacent(x, y)
        for (u, x), (v, y) in itertools.combinations(pairs, 2)
        if not graph.adjacent(u, v)
    )


def invert_partial_bimorphism(p) -> LocalMorphism:
    """Inverse of a finite edge-preserving bijection; it preserves nonedges of the graph.

    Accepts a partial bimorphism or a plain injective local morphism.
    """
    local = p.as_local() if hasattr(p, "as_local") else p
    return inverse(local)
