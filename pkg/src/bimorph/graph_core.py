"""Finite graphs, lazy countable graph oracles, and the textual spec grammar.

Grammar::

    spec := "rado" | "empty" | "complete"
          | "gnp(p=" FLOAT ",seed=" UINT ")"
          | "cliques(" UINT ")"
          | "complement(" spec ")"
          | "union(" spec "," spec ")"

Every oracle is an immutable value whose ``adjacent`` is a pure function
of its parameters.  Oracles may also expose exact ascending enumerations
of cones and co-cones (``cone_candidates`` / ``cocone_candidates``); when
they return ``None`` callers fall back to a linear scan.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .naturals import (
    INLINE_BITS,
    Natural,
    SparseNat,
    bit_positions,
    check_natural,
    deposit,
    has_bit,
    make_natural,
    small_mask,
)

Pair = tuple[int, int]


# --------------------------------------------------------------------------
# finite graphs


@dataclass(frozen=True)
class FiniteGraph:
    """Simple graph on vertices ``0..order-1``; edges stored as ``(i, j)`` with ``i < j``."""

    order: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        norm = set()
        for pair in self.edges:
            u, v = pair
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ValueError(f"edge {pair} has an endpoint outside 0..{self.order - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def complete(cls, n: int) -> "FiniteGraph":
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def empty(cls, n: int) -> "FiniteGraph":
        return cls(n)

    @classmethod
    def cycle(cls, n: int) -> "FiniteGraph":
        return cls(n, frozenset((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "FiniteGraph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @property
    def vertices(self) -> range:
        return range(self.order)

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> set[int]:
        return {u for u in self.vertices if self.adjacent(u, v)}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def edge_count(self) -> int:
        return len(self.edges)

    # the search engine filters these, so listing every vertex is exact enough
    def cone_candidates(self, s) -> Iterator[int]:
        return iter(self.vertices)

    def cocone_candidates(self, x) -> Iterator[int]:
        return iter(self.vertices)

    def complement(self) -> "FiniteGraph":
        all_pairs = itertools.combinations(range(self.order), 2)
        return FiniteGraph(self.order, frozenset(p for p in all_pairs if p not in self.edges))

    def relabel(self, perm: Sequence[int]) -> "FiniteGraph":
        """Graph with vertex ``i`` renamed to ``perm[i]``."""
        return FiniteGraph(self.order, frozenset((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Sequence[int]) -> "FiniteGraph":
        return induced_subgraph(self, vertices)[0]

    def code(self) -> int:
        """Adjacency-matrix code: bit k set iff the k-th pair (lexicographic) is an edge."""
        out = 0
        for k, (u, v) in enumerate(itertools.combinations(range(self.order), 2)):
            if (u, v) in self.edges:
                out |= 1 << k
        return out

    def canonical_form(self) -> tuple["FiniteGraph", tuple[int, ...]]:
        """Canonical representative and a relabeling ``perm`` with ``self.relabel(perm)`` equal to it.

        Minimizes the adjacency code over all orderings that list vertices by
        non-increasing degree.  That family of orderings is defined without
        reference to labels, so isomorphic graphs get identical results.
        """
        if self.order > 10:
            raise ValueError("canonical form is limited to order <= 10")
        n = self.order
        adj = [[self.adjacent(u, v) for v in range(n)] for u in range(n)]
        deg = [sum(row) for row in adj]
        cells = [[v for v in range(n) if deg[v] == d] for d in sorted(set(deg), reverse=True)]
        pairs = list(itertools.combinations(range(n), 2))
        best_code = None
        best_order = None
        for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
            order = [v for part in parts for v in part]
            code = 0
            for k, (i, j) in enumerate(pairs):
                if adj[order[i]][order[j]]:
                    code |= 1 << k
            if best_code is None or code < best_code:
                best_code, best_order = code, order
        perm = [0] * n
        for new, old in enumerate(best_order or []):
            perm[old] = new
        perm = tuple(perm)
        return self.relabel(perm), perm

    def canonical(self) -> "FiniteGraph":
        return self.canonical_form()[0]

    def label(self) -> str:
        """Short stable identifier such as ``n4:0-1,1-2``."""
        body = ",".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"n{self.order}:{body}"


def all_graphs(max_order: int) -> Iterator[FiniteGraph]:
    """Every canonical finite graph of order ``0..max_order``, one per isomorphism type."""
    layer = [FiniteGraph(0)]
    yield from layer
    for n in range(1, max_order + 1):
        seen: dict[int, FiniteGraph] = {}
        for g in layer:
            for k in range(n):
                for nbrs in itertools.combinations(range(n - 1), k):
                    h = FiniteGraph(n, g.edges | {(u, n - 1) for u in nbrs})
                    c = h.canonical()
                    seen.setdefault(c.code(), c)
        layer = [seen[k] for k in sorted(seen)]
        yield from layer


# --------------------------------------------------------------------------
# countable oracles


class CountableGraph:
    """Deterministic adjacency oracle on the natural numbers."""

    def adjacent(self, u: Natural, v: Natural) -> bool:
        check_natural(u)
        check_natural(v)
        if u == v:
            return False
        return self._adjacent(u, v) if u < v else self._adjacent(v, u)

    def _adjacent(self, u, v) -> bool:  # u < v
        raise NotImplementedError

    def cone_candidates(self, s: Iterable[Natural]) -> Optional[Iterator[Natural]]:
        """Exact ascending enumeration of the cones over ``s``, or ``None``."""
        return None

    def cocone_candidates(self, x: Iterable[Natural]) -> Optional[Iterator[Natural]]:
        """Exact ascending enumeration of the co-cones over ``x``, or ``None``."""
        return None

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.spec


def _require_int(v) -> int:
    if not isinstance(v, int):
        raise TypeError(f"this generator only accepts int vertices, got {v!r}")
    return v


def _naturals_except(skip: set) -> Iterator[int]:
    return (i for i in itertools.count() if i not in skip)


@dataclass(frozen=True)
class Rado(CountableGraph):
    """BIT graph: for ``u < v``, ``u ~ v`` iff bit ``u`` of ``v`` is 1."""

    def _adjacent(self, u, v):
        return has_bit(v, u)

    @property
    def spec(self):
        return "rado"

    def cone_candidates(self, s):
        s = set(s)
        if not s:
            return itertools.count()
        return self._cones(s)

    def _cones(self, s):
        top = max(s)
        rest = s - {top}
        # below the maximum, a cone must be one of its bits
        for c in bit_positions(top):
            if c not in s and all(self.adjacent(c, x) for x in rest):
                yield c
        # above it, a cone is any number whose bits include all of s
        mask = small_mask(s)
        big = [x for x in s if not (isinstance(x, int) and x < mask.bit_length())]
        for j in itertools.count():
            c = mask | deposit(j, mask)
            yield make_natural(bit_positions(c) + big) if big or c >> INLINE_BITS else c

    def cocone_candidates(self, x):
        x = set(x)
        mask = small_mask(x)
        for j in itertools.count():
            u = deposit(j, mask)
            if u in x or any(u < y and has_bit(y, u) for y in x):
                continue
            yield u


@dataclass(frozen=True)
class Empty(CountableGraph):
    def _adjacent(self, u, v):
        return False

    @property
    def spec(self):
        return "empty"

    def cone_candidates(self, s):
        s = set(s)
        return iter(()) if s else itertools.count()

    def cocone_candidates(self, x):
        return _naturals_except(set(x))


@dataclass(frozen=True)
class Complete(CountableGraph):
    def _adjacent(self, u, v):
        return True

    @property
    def spec(self):
        return "complete"

    def cone_candidates(self, s):
        return _naturals_except(set(s))

    def cocone_candidates(self, x):
        x = set(x)
        return iter(()) if x else itertools.count()


@functools.lru_cache(maxsize=1 << 20)
def _gnp_draw(seed: int, u: int, v: int) -> int:
    digest = hashlib.blake2b(f"{u}:{v}".encode(), digest_size=8, key=seed.to_bytes(8, "little")).digest()
    return int.from_bytes(digest, "little")


@dataclass(frozen=True)
class Gnp(CountableGraph):
    """Each pair is an edge independently with probability ``p``, decided by a keyed hash."""

    p: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError("p must lie strictly between 0 and 1")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a uint64")

    def _adjacent(self, u, v):
        return _gnp_draw(self.seed, _require_int(u), _require_int(v)) < self.p * (1 << 64)

    @property
    def spec(self):
        return f"gnp(p={self.p!r},seed={self.seed})"


@dataclass(frozen=True)
class Cliques(CountableGraph):
    """Disjoint union of ``k``-cliques: ``u ~ v`` iff ``u // k == v // k``."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("clique size must be at least 1")

    def _adjacent(self, u, v):
        return _require_int(u) // self.k == _require_int(v) // self.k

    @property
    def spec(self):
        return f"cliques({self.k})"

    def cone_candidates(self, s):
        s = {_require_int(v) for v in s}
        if not s:
            return itertools.count()
        blocks = {v // self.k for v in s}
        if len(blocks) > 1:
            return iter(())
        (b,) = blocks
        return (v for v in range(b * self.k, (b + 1) * self.k) if v not in s)

    def cocone_candidates(self, x):
        blocks = {_require_int(v) // self.k for v in x}
        return (v for v in itertools.count() if v // self.k not in blocks)


@dataclass(frozen=True)
class Complement(CountableGraph):
    inner: CountableGraph

    def _adjacent(self, u, v):
        return not self.inner.adjacent(u, v)

    @property
    def spec(self):
        return f"complement({self.inner.spec})"

    def cone_candidates(self, s):
        return self.inner.cocone_candidates(s)

    def cocone_candidates(self, x):
        return self.inner.cone_candidates(x)


@dataclass(frozen=True)
class Union(CountableGraph):
    """Interleaved disjoint union: ``2k`` is ``k`` of ``left``, ``2k+1`` is ``k`` of ``right``."""

    left: CountableGraph
    right: CountableGraph

    def _adjacent(self, u, v):
        u, v = _require_int(u), _require_int(v)
        if u % 2 != v % 2:
            return False
        side = self.left if u % 2 == 0 else self.right
        return side.adjacent(u // 2, v // 2)

    @property
    def spec(self):
        return f"union({self.left.spec},{self.right.spec})"


# --------------------------------------------------------------------------
# spec grammar


class SpecError(ValueError):
    """Malformed graph spec; ``position`` is the offending character index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            raise SpecError(f"expected {ch!r}", self.pos)
        self.pos += len(ch)

    def word(self) -> tuple[str, int]:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "._+-"):
            self.pos += 1
        if start == self.pos:
            raise SpecError("expected a name or number", start)
        return self.text[start:self.pos], start

    def uint(self) -> int:
        tok, at = self.word()
        if not tok.isdigit():
            raise SpecError(f"expected an unsigned integer, got {tok!r}", at)
        return int(tok)

    def graph(self) -> CountableGraph:
        name, at = self.word()
        if name == "rado":
            return Rado()
        if name == "empty":
            return Empty()
        if name == "complete":
            return Complete()
        if name == "gnp":
            self.expect("(")
            self.expect("p")
            self.expect("=")
            tok, tat = self.word()
            try:
                p = float(tok)
            except ValueError:
                raise SpecError(f"expected a float, got {tok!r}", tat) from None
            if not 0.0 < p < 1.0:
                raise SpecError("p must lie strictly between 0 and 1", tat)
            self.expect(",")
            self.expect("seed")
            self.expect("=")
            self.skip()
            sat = self.pos
            seed = self.uint()
            if seed >= 1 << 64:
                raise SpecError("seed must fit in 64 bits", sat)
            self.expect(")")
            return Gnp(p, seed)
        if name == "cliques":
            self.expect("(")
            self.skip()
            kat = self.pos
            k = self.uint()
            if k < 1:
                raise SpecError("clique size must be at least 1", kat)
            self.expect(")")
            return Cliques(k)
        if name == "complement":
            self.expect("(")
            inner = self.graph()
            self.expect(")")
            return Complement(inner)
        if name == "union":
            self.expect("(")
            left = self.graph()
            self.expect(",")
            right = self.graph()
            self.expect(")")
            return Union(left, right)
        raise SpecError(f"unknown generator {name!r}", at)


def make_oracle(spec: str) -> CountableGraph:
    """Parse a graph spec into an oracle."""
    parser = _Parser(spec)
    graph = parser.graph()
    parser.skip()
    if parser.pos != len(spec):
        raise SpecError("trailing input", parser.pos)
    return graph


def adjacent(graph, u, v) -> bool:
    return graph.adjacent(u, v)


def complement_oracle(graph: CountableGraph) -> CountableGraph:
    return Complement(graph)


def induced_subgraph(graph, vertices: Sequence) -> tuple[FiniteGraph, tuple]:
    """Induced graph on ``vertices`` (local index ``i`` is ``vertices[i]``) and the labeling."""
    labels = tuple(vertices)
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate vertex in induced_subgraph")
    edges = frozenset(
        (i, j)
        for i, j in itertools.combinations(range(len(labels)), 2)
        if graph.adjacent(labels[i], labels[j])
    )
    return FiniteGraph(len(labels), edges), labels


def to_dot(graph, n: int, name: str = "G") -> str:
    """DOT rendering of the induced prefix ``{0..n-1}``."""
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(n)]
    lines += [
        f"  {u} -- {v};"
        for u, v in itertools.combinations(range(n), 2)
        if graph.adjacent(u, v)
    ]
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "Complement",
    "Complete",
    "Cliques",
    "CountableGraph",
    "Empty",
    "FiniteGraph",
    "Gnp",
    "Rado",
    "SparseNat",
    "SpecError",
    "Union",
    "adjacent",
    "all_graphs",
    "complement_oracle",
    "induced_subgraph",
    "make_oracle",
    "to_dot",
]
