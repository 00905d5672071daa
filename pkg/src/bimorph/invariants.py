"""Bounded independence and star numbers, cone properties, and independent-set growth."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Optional, Sequence

from .graph_core import Cliques, Complement, Complete, Empty, complement_oracle
from .extension import SearchBudget, find_cocone, find_cone

INVARIANT_HORIZON = 32


@dataclass(frozen=True)
class BoundedInvariant:
    value: int
    exact: bool
    horizon: int
    witness: tuple = ()

    def to_json(self) -> dict:
        return {"value": self.value, "exact": self.exact, "horizon": self.horizon, "witness": list(self.witness)}


def _registered(graph, name: str) -> Optional[int]:
    """Analytic values known for the simple generator families (``None`` = unknown or infinite)."""
    if isinstance(graph, Complement) and isinstance(graph.inner, Complement):
        return _registered(graph.inner.inner, name)
    if isinstance(graph, Complement) and isinstance(graph.inner, Empty):
        graph = Complete()
    if isinstance(graph, Complement) and isinstance(graph.inner, Complete):
        graph = Empty()
    if isinstance(graph, Cliques) and graph.k == 1:
        graph = Empty()
    if name == "sigma":
        if isinstance(graph, Empty):
            return 0
        if isinstance(graph, (Complete, Cliques)):
            return 1
    if name == "alpha" and isinstance(graph, Complete):
        return 1
    return None


def _neighbor_masks(graph, vertices: Sequence[int]) -> list[int]:
    n = len(vertices)
    masks = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if graph.adjacent(vertices[i], vertices[j]):
            masks[i] |= 1 << j
            masks[j] |= 1 << i
    return masks


def _max_independent(masks: list[int], candidates: int, cap: int) -> list[int]:
    """Largest independent subset (size at most ``cap``) of the vertex bitmask ``candidates``."""
    best: list[int] = []

    def grow(chosen: list[int], pool: int):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= cap or len(chosen) + bin(pool).count("1") <= len(best):
            return
        while pool:
            v = (pool & -pool).bit_length() - 1
            pool &= pool - 1
            chosen.append(v)
            grow(chosen, pool & ~masks[v])
            chosen.pop()
            if len(best) >= cap or len(chosen) + bin(pool).count("1") <= len(best):
                return

    grow([], candidates)
    return best


def independence_number_bounded(graph, k_max: int, horizon: int = INVARIANT_HORIZON) -> BoundedInvariant:
    vertices = list(range(horizon))
    masks = _neighbor_masks(graph, vertices)
    best = _max_independent(masks, (1 << horizon) - 1, k_max)
    value = len(best)
    return BoundedInvariant(value, _registered(graph, "alpha") == value, horizon, tuple(best))


def star_number_bounded(graph, n_max: int, horizon: int = INVARIANT_HORIZON) -> BoundedInvariant:
    """Largest induced star ``K_{1,n}`` (``n <= n_max``); witness is ``(center, *leaves)``."""
    masks = _neighbor_masks(graph, list(range(horizon)))
    best_value, witness = 0, ()
    for center in range(horizon):
        leaves = _max_independent(masks, masks[center], n_max)
        if len(leaves) > best_value:
            best_value, witness = len(leaves), (center, *leaves)
            if best_value >= n_max:
                break
    return BoundedInvariant(best_value, _registered(graph, "sigma") == best_value, horizon, witness)


def is_independent(graph, vertices) -> bool:
    return not any(graph.adjacent(u, v) for u, v in itertools.combinations(vertices, 2))


def is_induced_star(graph, center, leaves) -> bool:
    return all(graph.adjacent(center, v) for v in leaves) and is_independent(graph, leaves)


class IndependentSetStream:
    """Greedy least-index maximal independent set, yielded in increasing order."""

    def __init__(self, graph, budget: SearchBudget = SearchBudget()):
        self.graph = graph
        self.budget = budget
        self.members: list = []

    def __iter__(self) -> Iterator:
        return self

    def __next__(self):
        exact = self.graph.cocone_candidates(self.members)
        if exact is not None:
            nxt = find_cocone(self.graph, self.members, self.budget)
        else:
            start = self.members[-1] + 1 if self.members else 0
            nxt = next(
                (v for v in range(start, start + self.budget.scan_limit)
                 if not any(self.graph.adjacent(v, y) for y in self.members)),
                None,
            )
        if nxt is None:
            raise StopIteration
        self.members.append(nxt)
        return nxt


# --------------------------------------------------------------------------
# cone properties


@dataclass(frozen=True)
class SetVerdict:
    vertices: tuple
    witness: Optional[object]


@dataclass(frozen=True)
class PropertyVerdict:
    """``status`` is ``"witnessed"`` when every sampled set got a witness, else ``"failed"``."""

    status: str
    checked: int
    sets: tuple = field(repr=False, default=())
    failing: Optional[tuple] = None

    @property
    def witnessed(self) -> bool:
        return self.status == "witnessed"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "checked": self.checked,
            "failing": None if self.failing is None else list(self.failing),
        }


def sample_sets(size_max: int, base: int = 7, trials: int = 200, seed: int = 0,
                exhaustive_cap: int = 5000) -> list[tuple]:
    """All nonempty subsets of ``{0..base}`` up to ``size_max`` when few enough, else a seeded sample."""
    total = sum(comb(base + 1, k) for k in range(1, size_max + 1))
    if total <= exhaustive_cap:
        return [
            s for k in range(1, size_max + 1) for s in itertools.combinations(range(base + 1), k)
        ]
    rng = random.Random(seed)
    return [
        tuple(sorted(rng.sample(range(base + 1), rng.randint(1, size_max))))
        for _ in range(trials)
    ]


def check_triangle_property(graph, size_max: int = 3, trials: int = 200,
                            budget: SearchBudget = SearchBudget(), base: int = 7,
                            seed: int = 0) -> PropertyVerdict:
    """Does every sampled finite set have a cone?"""
    results = []
    for xs in sample_sets(size_max, base, trials, seed):
        cone = find_cone(graph, xs, budget)
        results.append(SetVerdict(xs, cone))
        if cone is None:
            return PropertyVerdict("failed", len(results), tuple(results), xs)
    return PropertyVerdict("witnessed", len(results), tuple(results))


def check_therefore_property(graph, size_max: int = 3, trials: int = 200,
                             budget: SearchBudget = SearchBudget(), base: int = 7,
                             seed: int = 0) -> PropertyVerdict:
    """Does every sampled finite set have a co-cone?  (The triangle property of the complement.)"""
    return check_triangle_property(complement_oracle(graph), size_max, trials, budget, base, seed)


def grow_independent_set(graph, independent: Sequence, budget: SearchBudget = SearchBudget(horizon=256)):
    """A vertex extending ``independent`` to a larger independent set, or ``None``."""
    if not is_independent(graph, independent):
        raise ValueError("the given set is not independent")
    return find_cocone(graph, independent, budget)
