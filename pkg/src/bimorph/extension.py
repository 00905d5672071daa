"""Back-and-forth construction of partial bimorphisms, clique forcing and independent preimages.

Searches are least-first: every helper returns the smallest admissible
vertex, so runs are deterministic.  "Exhausted" only means that nothing
admissible was found within the budget; it says nothing about the
infinite graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

from . import naturals
from .graph_core import complement_oracle
from .morphism import LocalMorphism, MorphismKind, classify_map, least_pair

DEFAULT_EDGE_HORIZON = 64


@dataclass(frozen=True)
class SearchBudget:
    """``horizon``: candidates must be below it (``None`` for no cap).
    ``scan_limit``: most candidates examined per search.
    ``backtracks``: how often clique forcing may double the budget and retry."""

    horizon: Optional[int] = None
    backtracks: int = 4
    scan_limit: int = 1 << 16

    def __post_init__(self):
        if self.horizon is not None and self.horizon < 1:
            raise ValueError("horizon must be at least 1")
        if self.scan_limit < 1 or self.backtracks < 0:
            raise ValueError("scan_limit must be positive and backtracks non-negative")

    def widened(self) -> "SearchBudget":
        horizon = None if self.horizon is None else 2 * self.horizon
        return replace(self, horizon=horizon, scan_limit=2 * self.scan_limit)


@dataclass(frozen=True)
class SearchOutcome:
    vertex: Optional[naturals.Natural]
    scanned: int

    @property
    def exhausted(self) -> bool:
        return self.vertex is None


def _search(candidates: Optional[Iterator], accept, budget: SearchBudget, skip=frozenset()) -> SearchOutcome:
    source = itertools.count() if candidates is None else candidates
    scanned = 0
    for c in source:
        if budget.horizon is not None and c >= budget.horizon:
            break
        if scanned >= budget.scan_limit:
            break
        scanned += 1
        if c not in skip and accept(c):
            return SearchOutcome(c, scanned)
    return SearchOutcome(None, scanned)


def _cone_search(graph, s: Iterable, budget: SearchBudget, skip=frozenset()) -> SearchOutcome:
    s = set(s)
    return _search(
        graph.cone_candidates(s),
        lambda c: c not in s and all(graph.adjacent(c, x) for x in s),
        budget,
        skip,
    )


def _cocone_search(graph, x: Iterable, budget: SearchBudget, skip=frozenset()) -> SearchOutcome:
    x = set(x)
    return _search(
        graph.cocone_candidates(x),
        lambda c: c not in x and not any(graph.adjacent(c, y) for y in x),
        budget,
        skip,
    )


def find_cone(graph, x: Iterable, budget: SearchBudget = SearchBudget()) -> Optional[naturals.Natural]:
    """Least vertex outside ``x`` adjacent to all of ``x``, or ``None`` if exhausted."""
    return _cone_search(graph, x, budget).vertex


def find_cocone(graph, x: Iterable, budget: SearchBudget = SearchBudget()) -> Optional[naturals.Natural]:
    """Least vertex outside ``x`` adjacent to none of ``x``, or ``None`` if exhausted."""
    return _cocone_search(graph, x, budget).vertex


# --------------------------------------------------------------------------
# co-cones from a maximal independent set


class StarBoundViolation(AssertionError):
    """Some vertex has more neighbors in the independent set than the claimed star number."""


@dataclass(frozen=True)
class StarAudit:
    blocked: int
    neighbor_blocked: int
    member_blocked: int
    bound: int
    neighbor_counts: dict

    @property
    def ok(self) -> bool:
        return self.blocked <= self.bound


def cocone_via_star_bound(graph, x: Sequence, independent: Iterable, sigma: int,
                          budget: SearchBudget = SearchBudget()) -> tuple[Optional[naturals.Natural], StarAudit]:
    """Least element of the independent stream outside ``X`` and every ``N(x)``.

    Each ``v`` of the stream that is blocked either lies in ``X`` or is a
    neighbor of some ``x`` in ``X`` (such an ``x`` cannot itself belong to
    the independent set).  With at most ``sigma`` stream-neighbors per
    vertex, fewer than ``sigma * |X| + |X & I|`` elements are ever skipped.
    """
    xs = list(dict.fromkeys(x))
    counts = {v: 0 for v in xs}
    member = neighbor = 0
    found = None
    for scanned, v in enumerate(independent):
        if scanned >= budget.scan_limit or (budget.horizon is not None and v >= budget.horizon):
            break
        if v in counts:
            member += 1
            continue
        hits = [y for y in xs if graph.adjacent(v, y)]
        if not hits:
            found = v
            break
        neighbor += 1
        for y in hits:
            counts[y] += 1
            if counts[y] > sigma:
                raise StarBoundViolation(f"vertex {y} has more than {sigma} neighbors in the independent set")
    audit = StarAudit(
        blocked=member + neighbor,
        neighbor_blocked=neighbor,
        member_blocked=member,
        bound=sigma * len(xs) + member,
        neighbor_counts=counts,
    )
    if not audit.ok:
        raise StarBoundViolation(f"blocked {audit.blocked} exceeds bound {audit.bound}")
    return found, audit


# --------------------------------------------------------------------------
# partial bimorphisms


@dataclass(frozen=True)
class TraceStep:
    step: str  # "seed" | "domain" | "range"
    vertex: naturals.Natural
    image: naturals.Natural
    scanned: int = 0
    witness: Optional[str] = None  # range steps: "cocone" or "implication"

    def to_json(self) -> dict:
        out = {
            "step": self.step,
            "vertex": naturals.to_json(self.vertex),
            "image": naturals.to_json(self.image),
            "scanned": self.scanned,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class PartialBimorphism:
    """Finite injective map inside one graph, with the steps that built it."""

    graph: object
    pairs: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    def __post_init__(self):
        self._fwd = {}
        self._bwd = {}
        pairs, self.pairs = list(self.pairs), []
        for u, w in pairs:
            self._link(u, w)

    def _link(self, u, w):
        if u in self._fwd:
            raise ValueError(f"{u!r} is already in the domain")
        if w in self._bwd:
            raise ValueError(f"{w!r} is already in the range")
        self._fwd[u] = w
        self._bwd[w] = u
        self.pairs.append((u, w))

    def add(self, u, w, step: str, scanned: int = 0, witness: Optional[str] = None) -> None:
        self._link(u, w)
        self.trace.append(TraceStep(step, u, w, scanned, witness))

    def copy(self) -> "PartialBimorphism":
        return PartialBimorphism(self.graph, list(self.pairs), list(self.trace))

    def __getitem__(self, u):
        return self._fwd[u]

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def domain(self) -> dict:
        return self._fwd

    @property
    def range(self) -> dict:
        return self._bwd

    def preimage(self, w):
        return self._bwd[w]

    def violations(self) -> list[tuple]:
        """Domain edges whose images are not edges (exhaustive pair check)."""
        adj = self.graph.adjacent
        return [
            (u, v)
            for (u, w), (v, x) in itertools.combinations(self.pairs, 2)
            if adj(u, v) and not adj(w, x)
        ]

    def is_valid(self) -> bool:
        return not self.violations()

    def as_local(self) -> LocalMorphism:
        return LocalMorphism(
            self.graph, self.graph,
            tuple(u for u, _ in self.pairs),
            tuple(w for _, w in self.pairs),
        )

    def trace_json(self) -> list[dict]:
        return [t.to_json() for t in self.trace]


class ExtensionExhausted(Exception):
    """A step found no admissible vertex within budget; ``partial`` holds the run so far."""

    def __init__(self, message: str, partial: Optional[PartialBimorphism] = None,
                 step: Optional[str] = None, vertex=None, stage: Optional[int] = None):
        super().__init__(message)
        self.partial = partial
        self.step = step
        self.vertex = vertex
        self.stage = stage


def _domain_step(p: PartialBimorphism, v, budget: SearchBudget) -> None:
    if v in p.domain:
        raise ValueError(f"{v!r} is already in the domain")
    graph = p.graph
    targets = [p[x] for x in p.domain if graph.adjacent(x, v)]
    found = _cone_search(graph, targets, budget, skip=p.range)
    if found.exhausted:
        raise ExtensionExhausted(f"no image for domain vertex {v!r}", p, "domain", v)
    p.add(v, found.vertex, "domain", found.scanned)


def _range_step(p: PartialBimorphism, w, budget: SearchBudget) -> None:
    if w in p.range:
        raise ValueError(f"{w!r} is already in the range")
    graph = p.graph
    dom = list(p.domain)
    found = _cocone_search(graph, dom, budget)
    if not found.exhausted:
        p.add(found.vertex, w, "range", found.scanned, "cocone")
        return
    # fall back to the weakest sufficient condition: u ~ x  =>  w ~ p(x)
    forbidden = [x for x in dom if not graph.adjacent(w, p[x])]
    fallback = _search(
        None,
        lambda u: not any(graph.adjacent(u, x) for x in forbidden),
        budget,
        skip=p.domain,
    )
    if fallback.exhausted:
        raise ExtensionExhausted(f"no preimage for range vertex {w!r}", p, "range", w)
    p.add(fallback.vertex, w, "range", found.scanned + fallback.scanned, "implication")


def extend_domain_step(graph, p: PartialBimorphism, v, budget: SearchBudget = SearchBudget()) -> PartialBimorphism:
    """New partial bimorphism with ``v`` sent to the least fresh cone over the images of its neighbors."""
    q = p.copy()
    _domain_step(q, v, budget)
    return q


def extend_range_step(graph, p: PartialBimorphism, w, budget: SearchBudget = SearchBudget()) -> PartialBimorphism:
    """New partial bimorphism with a preimage for ``w``: the least co-cone over the domain if one is found."""
    q = p.copy()
    _range_step(q, w, budget)
    return q


def seed(graph, f: LocalMorphism) -> PartialBimorphism:
    if classify_map(f) < MorphismKind.MONOMORPHISM:
        raise ValueError("seed map must be a monomorphism")
    p = PartialBimorphism(graph)
    for u, w in zip(f.domain, f.image):
        p.add(u, w, "seed")
    return p


def extend_to_partial_bimorphism(graph, f: LocalMorphism, n: int,
                                 budget: SearchBudget = SearchBudget()) -> PartialBimorphism:
    """Alternate domain and range steps until both sides contain ``0..n-1``."""
    p = seed(graph, f)
    domain_turn = True
    while True:
        dm = next((i for i in range(n) if i not in p.domain), None)
        rm = next((i for i in range(n) if i not in p.range), None)
        if dm is None and rm is None:
            return p
        if dm is not None and (domain_turn or rm is None):
            _domain_step(p, dm, budget)
        else:
            _range_step(p, rm, budget)
        domain_turn = not domain_turn


# --------------------------------------------------------------------------
# clique forcing


def _edge_count(graph, vertices: Sequence) -> int:
    return sum(1 for u, v in itertools.combinations(vertices, 2) if graph.adjacent(u, v))


def _least_nonedge(graph, vertices: Sequence) -> Optional[tuple]:
    for u, v in itertools.combinations(sorted(vertices), 2):
        if not graph.adjacent(u, v):
            return u, v
    return None


def _force_stage(graph, current: list, budget: SearchBudget) -> PartialBimorphism:
    a, b = _least_nonedge(graph, current)
    edge = least_pair(graph, budget.horizon or DEFAULT_EDGE_HORIZON, True)
    if edge is None:
        raise ExtensionExhausted("no edge below the horizon", step="seed")
    p = PartialBimorphism(graph)
    p.add(a, edge[0], "seed")
    p.add(b, edge[1], "seed")
    for y in sorted(current):
        if y not in p.domain:
            _domain_step(p, y, budget)
    return p


def clique_force(graph, x: Sequence, budget: SearchBudget = SearchBudget()) -> tuple[list, list]:
    """Repeatedly send a nonedge of the current set to an edge until the set is a clique.

    Returns the stages (one partial bimorphism each) and the final image,
    listed in the order of ``x``.
    """
    current = list(x)
    if len(set(current)) != len(current):
        raise ValueError("vertex set has duplicates")
    stages = []
    max_stages = comb(len(current), 2) - _edge_count(graph, current)
    while _least_nonedge(graph, current) is not None:
        attempt = budget
        for retry in range(budget.backtracks + 1):
            try:
                stage = _force_stage(graph, current, attempt)
                break
            except ExtensionExhausted as exc:
                if retry == budget.backtracks:
                    exc.stage = len(stages)
                    raise
                attempt = attempt.widened()
        nxt = [stage[y] for y in current]
        if _edge_count(graph, nxt) <= _edge_count(graph, current):
            raise AssertionError("clique forcing stage did not add an edge")
        stages.append(stage)
        current = nxt
        if len(stages) > max_stages:
            raise AssertionError("clique forcing exceeded its stage bound")
    return stages, current


def independent_preimage(graph, x: Sequence, budget: SearchBudget = SearchBudget()) -> tuple[PartialBimorphism, list]:
    """An independent set ``Y`` and an edge-preserving bijection of ``graph`` from ``Y`` onto ``x``.

    Clique forcing in the complement carries ``x`` to a complement-clique
    ``Y``; the composite is a bimorphism fragment of the complement, so its
    inverse is one of ``graph``.
    """
    _, y = clique_force(complement_oracle(graph), x, budget)
    p = PartialBimorphism(graph)
    for src, dst in zip(y, x):
        p.add(src, dst, "seed")
    return p, y
