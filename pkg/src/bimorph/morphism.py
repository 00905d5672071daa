"""Local morphisms, their classification, manifestation, and the map m."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import naturals
from .graph_core import CountableGraph, FiniteGraph, make_oracle


class MorphismKind(enum.IntEnum):
    NOT_HOMOMORPHISM = 0
    HOMOMORPHISM = 1
    MONOMORPHISM = 2
    EMBEDDING = 3

    def __str__(self) -> str:
        return self.name.lower().replace("_", "-")


@dataclass(frozen=True)
class LocalMorphism:
    """Finite partial map ``domain[i] -> image[i]`` from ``source`` to ``target``."""

    source: object
    target: object
    domain: tuple
    image: tuple

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "image", tuple(self.image))
        if len(self.domain) != len(self.image):
            raise ValueError("domain and image have different lengths")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("domain vertices are not distinct")

    @classmethod
    def identity(cls, graph, vertices: Sequence) -> "LocalMorphism":
        return cls(graph, graph, tuple(vertices), tuple(vertices))

    @classmethod
    def from_mapping(cls, source, target, mapping: dict) -> "LocalMorphism":
        keys = sorted(mapping)
        return cls(source, target, tuple(keys), tuple(mapping[k] for k in keys))

    def as_dict(self) -> dict:
        return dict(zip(self.domain, self.image))

    def __call__(self, v):
        try:
            return self.image[self.domain.index(v)]
        except ValueError:
            raise KeyError(v) from None

    def __len__(self) -> int:
        return len(self.domain)

    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def to_json(self) -> dict:
        return {
            "dom": [naturals.to_json(v) for v in self.domain],
            "img": [naturals.to_json(v) for v in self.image],
            "src": _graph_name(self.source),
            "tgt": _graph_name(self.target),
        }

    @classmethod
    def from_json(cls, obj: dict, source=None, target=None) -> "LocalMorphism":
        """Decode; spec-named graphs are rebuilt, ``"finite"`` ones must be supplied."""
        def resolve(given, name):
            if given is not None:
                return given
            if name in (None, "finite"):
                raise ValueError("a finite graph must be passed explicitly")
            return make_oracle(name)

        src = resolve(source, obj.get("src"))
        tgt = resolve(target, obj.get("tgt", obj.get("src")))
        return cls(
            src,
            tgt,
            tuple(naturals.from_json(v) for v in obj["dom"]),
            tuple(naturals.from_json(v) for v in obj["img"]),
        )


def _graph_name(graph) -> str:
    return graph.spec if isinstance(graph, CountableGraph) else "finite"


def classify_map(f: LocalMorphism) -> MorphismKind:
    if isinstance(f.target, FiniteGraph):
        for w in f.image:
            if not (isinstance(w, int) and 0 <= w < f.target.order):
                raise ValueError(f"image vertex {w!r} lies outside the target graph")
    pairs = list(zip(f.domain, f.image))
    reflects = True
    for (u, x), (v, y) in itertools.combinations(pairs, 2):
        src_edge = f.source.adjacent(u, v)
        if src_edge and (x == y or not f.target.adjacent(x, y)):
            return MorphismKind.NOT_HOMOMORPHISM
        if not src_edge and x != y and f.target.adjacent(x, y):
            reflects = False
    if not f.is_injective():
        return MorphismKind.HOMOMORPHISM
    return MorphismKind.EMBEDDING if reflects else MorphismKind.MONOMORPHISM


def is_manifestation(f: LocalMorphism, af: LocalMorphism, e_a: LocalMorphism, e_b: LocalMorphism) -> bool:
    """Does the square ``e_b . af == f . e_a`` commute on every vertex of the source age graph?"""
    for name, e in (("e_a", e_a), ("e_b", e_b)):
        if classify_map(e) != MorphismKind.EMBEDDING:
            raise ValueError(f"{name} is not an embedding")
    if set(af.domain) != set(e_a.domain):
        raise ValueError("af and e_a have different domains")
    eb, fmap, afmap = e_b.as_dict(), f.as_dict(), af.as_dict()
    if not set(af.image) <= set(eb):
        raise ValueError("image of af is not inside the domain of e_b")
    if not set(e_a.image) <= set(fmap):
        raise ValueError("image of e_a is not inside the domain of f")
    return all(eb[afmap[x]] == fmap[y] for x, y in zip(e_a.domain, e_a.image))


def compose(g: LocalMorphism, f: LocalMorphism) -> LocalMorphism:
    """``g . f``; requires ``image(f)`` inside ``domain(g)``."""
    gmap = g.as_dict()
    missing = [w for w in f.image if w not in gmap]
    if missing:
        raise ValueError(f"not composable: {missing[0]!r} is outside the domain of g")
    return LocalMorphism(f.source, g.target, f.domain, tuple(gmap[w] for w in f.image))


def restrict(f: LocalMorphism, subset) -> LocalMorphism:
    keep = set(subset)
    if not keep <= set(f.domain):
        raise ValueError("restriction set is not inside the domain")
    pairs = [(u, w) for u, w in zip(f.domain, f.image) if u in keep]
    return LocalMorphism(f.source, f.target, tuple(u for u, _ in pairs), tuple(w for _, w in pairs))


def inverse(f: LocalMorphism) -> LocalMorphism:
    if not f.is_injective():
        raise ValueError("only injective maps have inverses")
    return LocalMorphism(f.target, f.source, f.image, f.domain)


def least_pair(graph, horizon: int, want_edge: bool) -> Optional[tuple]:
    """Lexicographically least pair below ``horizon`` that is (or is not) an edge."""
    for u, v in itertools.combinations(range(horizon), 2):
        if graph.adjacent(u, v) == want_edge:
            return u, v
    return None


def canonical_m(graph, horizon: int = 64) -> Optional[LocalMorphism]:
    """The 2-point map sending the least nonedge to the least edge, if both exist."""
    nonedge = least_pair(graph, horizon, False)
    edge = least_pair(graph, horizon, True)
    if nonedge is None or edge is None:
        return None
    return LocalMorphism(graph, graph, nonedge, edge)


def m_on_age() -> tuple[FiniteGraph, FiniteGraph, LocalMorphism]:
    """The age-level m: identity-labelled map from the 2-vertex edgeless graph onto K2."""
    a, b = FiniteGraph.empty(2), FiniteGraph.complete(2)
    return a, b, LocalMorphism(a, b, (0, 1), (0, 1))


def random_local_isomorphism(graph, rng, window: int, max_size: int, attempts: int = 200) -> LocalMorphism:
    """A random embedding between two induced subgraphs on vertices below ``window``.

    The domain is a uniform sample of random size.  The image is built by
    randomized greedy placement with restarts; if every attempt gets stuck
    the identity on the domain is used, so a valid map always comes back.
    """
    k = rng.randint(1, max_size)
    dom = rng.sample(range(window), k)
    for _ in range(attempts):
        img: list = []
        for i in range(k):
            fits = [
                w for w in range(window)
                if w not in img
                and all(graph.adjacent(dom[i], dom[j]) == graph.adjacent(w, img[j]) for j in range(i))
            ]
            if not fits:
                break
            img.append(rng.choice(fits))
        if len(img) == k:
            return LocalMorphism(graph, graph, tuple(dom), tuple(img))
    return LocalMorphism.identity(graph, dom)
