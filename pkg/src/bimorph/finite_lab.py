"""Exact brute force on small finite graphs.

Ground truth for the countable-graph engines: morphism sets between finite
graphs, bimorphism monoids, represented sets and XY-homogeneity.  All
routines enumerate exhaustively, so size caps are enforced up front.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .graph_core import FiniteGraph, all_graphs, induced_subgraph
from .morphism import LocalMorphism, MorphismKind, classify_map

MAX_ENUM_ORDER = 8
MAX_LAB_ORDER = 7


class SizeCapExceeded(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _cap(graph: FiniteGraph, limit: int) -> None:
    if graph.order > limit:
        raise SizeCapExceeded(f"order {graph.order} exceeds the cap {limit}")


class EndoKind(enum.Enum):
    H = "homomorphism"
    M = "monomorphism"
    I = "self-embedding"  # noqa: E741
    E = "epimorphism"
    B = "bimorphism"
    A = "automorphism"


@dataclass(frozen=True)
class MorphismSet:
    source: FiniteGraph
    target: FiniteGraph
    maps: tuple

    def __len__(self) -> int:
        return len(self.maps)


def _homomorphisms(a: FiniteGraph, b: FiniteGraph, injective: bool) -> Iterator[tuple]:
    """Backtracking over total maps ``a -> b`` preserving edges."""
    n = a.order
    earlier = [[u for u in range(v) if a.adjacent(u, v)] for v in range(n)]
    image = [0] * n
    used = set()

    def place(v: int):
        if v == n:
            yield tuple(image)
            return
        for w in b.vertices:
            if injective and w in used:
                continue
            if all(image[u] != w and b.adjacent(image[u], w) for u in earlier[v]):
                image[v] = w
                used.add(w)
                yield from place(v + 1)
                used.discard(w)

    yield from place(0)


def enumerate_morphisms(a: FiniteGraph, b: FiniteGraph, kind: MorphismKind,
                        max_order: int = MAX_ENUM_ORDER) -> MorphismSet:
    """All total maps ``a -> b`` whose classification is at least ``kind``."""
    _cap(a, max_order)
    _cap(b, max_order)
    injective = kind >= MorphismKind.MONOMORPHISM
    maps = []
    for img in _homomorphisms(a, b, injective):
        f = LocalMorphism(a, b, tuple(a.vertices), img)
        if classify_map(f) >= kind:
            maps.append(f)
    return MorphismSet(a, b, tuple(maps))


def _is_endo(g: FiniteGraph, img: tuple, kind: EndoKind) -> bool:
    """``img`` is already known to be an edge-preserving total map."""
    injective = len(set(img)) == g.order
    surjective = set(img) == set(g.vertices)
    if kind is EndoKind.H:
        return True
    if kind is EndoKind.M:
        return injective
    if kind is EndoKind.E:
        return surjective
    if kind is EndoKind.B:
        return injective and surjective
    reflects = all(
        g.adjacent(u, v) == g.adjacent(img[u], img[v])
        for u, v in itertools.combinations(g.vertices, 2)
    )
    if kind is EndoKind.I:
        return injective and reflects
    return injective and surjective and reflects


def endomorphisms(g: FiniteGraph, kind: EndoKind, max_order: int = MAX_ENUM_ORDER) -> list[tuple]:
    _cap(g, max_order)
    injective = kind not in (EndoKind.H, EndoKind.E)
    return [img for img in _homomorphisms(g, g, injective) if _is_endo(g, img, kind)]


def automorphism_group(g: FiniteGraph) -> frozenset:
    return frozenset(endomorphisms(g, EndoKind.A))


def bimorphism_monoid(g: FiniteGraph, max_order: int = MAX_ENUM_ORDER) -> frozenset:
    """Every bijective edge-preserving self-map, as image tuples.

    For a finite graph a bijection that maps the edge set into itself maps
    it onto itself, so the result must equal the automorphism group; this is
    asserted.
    """
    _cap(g, max_order)
    bims = frozenset(
        perm for perm in itertools.permutations(g.vertices)
        if all(g.adjacent(perm[u], perm[v]) for u, v in g.edges)
    )
    auts = frozenset(
        perm for perm in bims
        if all(g.adjacent(u, v) == g.adjacent(perm[u], perm[v])
               for u, v in itertools.combinations(g.vertices, 2))
    )
    if bims != auts:
        raise AssertionError("a finite bimorphism failed to be an automorphism")
    return bims


# --------------------------------------------------------------------------
# age graphs and represented sets


def age_embeddings(g: FiniteGraph, size: int) -> dict[FiniteGraph, list[tuple]]:
    """Canonical age graphs of ``g`` with ``size`` vertices, each with all of its embeddings into ``g``."""
    out: dict[FiniteGraph, list[tuple]] = {}
    for subset in itertools.combinations(g.vertices, size):
        canon = induced_subgraph(g, subset)[0].canonical()
        out.setdefault(canon, [])
    for canon, embs in out.items():
        for emb in itertools.permutations(g.vertices, size):
            if induced_subgraph(g, emb)[0] == canon:
                embs.append(emb)
    return dict(sorted(out.items(), key=lambda kv: kv[0].code()))


def represented_sets(g: FiniteGraph, size: int, max_order: int = MAX_LAB_ORDER) -> dict:
    """Map ``(A, B, e, e')`` to the set of ``f`` with some bimorphism ``F`` where ``F . e == e' . f``.

    ``A`` and ``B`` run over the canonical age graphs of the given size, ``e``
    and ``e'`` over their embeddings, and ``f`` is an image tuple on ``A``.
    """
    _cap(g, max_order)
    if not 0 <= size <= g.order:
        raise ValueError("size must lie between 0 and the order")
    ages = age_embeddings(g, size)
    bims = bimorphism_monoid(g)
    result = {}
    for a, embs_a in ages.items():
        for b, embs_b in ages.items():
            for e in embs_a:
                images = {tuple(perm[x] for x in e) for perm in bims}
                for e2 in embs_b:
                    where = {w: i for i, w in enumerate(e2)}
                    result[(a, b, e, e2)] = frozenset(
                        tuple(where[w] for w in img) for img in images if set(img) == set(e2)
                    )
    return result


def verify_embedding_independence(g: FiniteGraph, size: int) -> bool:
    """Do represented sets depend only on the pair of age graphs, never on the embeddings?"""
    ok, _ = check_xy_homogeneity(g, "I", EndoKind.B)
    if not ok:
        raise PreconditionError("graph is not IB-homogeneous")
    by_type: dict[tuple, set] = {}
    for (a, b, _, _), maps in represented_sets(g, size).items():
        by_type.setdefault((a, b), set()).add(maps)
    return all(len(v) == 1 for v in by_type.values())


# --------------------------------------------------------------------------
# XY-homogeneity


_LOCAL_KIND = {"I": MorphismKind.EMBEDDING, "M": MorphismKind.MONOMORPHISM, "H": MorphismKind.HOMOMORPHISM}


def local_morphisms(g: FiniteGraph, x: str) -> Iterator[LocalMorphism]:
    """Local maps of ``g`` that are at least ``x``-morphisms, smallest domains first."""
    want = _LOCAL_KIND[x]
    injective = want >= MorphismKind.MONOMORPHISM
    for size in range(g.order + 1):
        for dom in itertools.combinations(g.vertices, size):
            pool = itertools.permutations(g.vertices, size) if injective else itertools.product(g.vertices, repeat=size)
            for img in pool:
                f = LocalMorphism(g, g, dom, img)
                if classify_map(f) >= want:
                    yield f


def check_xy_homogeneity(g: FiniteGraph, x: str, y: EndoKind,
                         max_order: int = MAX_LAB_ORDER) -> tuple[bool, Optional[LocalMorphism]]:
    """Does every local ``x``-morphism extend to a ``y``-endomorphism?  Returns a smallest failure if not."""
    _cap(g, max_order)
    if x not in _LOCAL_KIND:
        raise ValueError("x must be one of I, M, H")
    endos = endomorphisms(g, y)
    restrictions: dict[tuple, set] = {}
    for f in local_morphisms(g, x):
        if f.domain not in restrictions:
            restrictions[f.domain] = {tuple(e[v] for v in f.domain) for e in endos}
        if f.image not in restrictions[f.domain]:
            return False, f
    return True, None


@dataclass(frozen=True)
class CensusRow:
    graph_id: str
    x: str
    y: str
    verdict: bool


def census(max_order: int) -> list[CensusRow]:
    """XY-verdicts for every canonical graph up to ``max_order`` and every pair of kinds."""
    if max_order > MAX_LAB_ORDER:
        raise SizeCapExceeded(f"census is limited to order {MAX_LAB_ORDER}")
    rows = []
    for g in all_graphs(max_order):
        for x in ("I", "M", "H"):
            for y in EndoKind:
                ok, _ = check_xy_homogeneity(g, x, y)
                rows.append(CensusRow(g.label(), x, y.name, ok))
    return rows
