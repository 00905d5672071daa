import itertools

import pytest

from bimorph.extension import SearchBudget, extend_to_partial_bimorphism, find_cocone, find_cone
from bimorph.finite_lab import (
    EndoKind,
    PreconditionError,
    SizeCapExceeded,
    age_embeddings,
    automorphism_group,
    bimorphism_monoid,
    census,
    check_xy_homogeneity,
    endomorphisms,
    enumerate_morphisms,
    local_morphisms,
    represented_sets,
    verify_embedding_independence,
)
from bimorph.graph_core import FiniteGraph, all_graphs
from bimorph.morphism import MorphismKind as K

K2, K3 = FiniteGraph.complete(2), FiniteGraph.complete(3)
P3, C4, C5 = FiniteGraph.path(3), FiniteGraph.cycle(4), FiniteGraph.cycle(5)
NONEDGE = FiniteGraph.empty(2)
TWO_K2 = FiniteGraph(4, frozenset({(0, 1), (2, 3)}))


def test_enumerate_examples():
    assert len(enumerate_morphisms(FiniteGraph.complete(1), K3, K.MONOMORPHISM)) == 3
    assert len(enumerate_morphisms(K2, C4, K.EMBEDDING)) == 8
    assert len(enumerate_morphisms(NONEDGE, K2, K.MONOMORPHISM)) == 2
    assert len(enumerate_morphisms(NONEDGE, K2, K.EMBEDDING)) == 0
    assert len(enumerate_morphisms(K2, K2, K.HOMOMORPHISM)) == 2
    maps = enumerate_morphisms(P3, C5, K.HOMOMORPHISM).maps
    assert len(set(f.image for f in maps)) == len(maps)


def test_size_caps():
    big = FiniteGraph.empty(9)
    with pytest.raises(SizeCapExceeded):
        enumerate_morphisms(big, big, K.EMBEDDING)
    with pytest.raises(SizeCapExceeded):
        represented_sets(FiniteGraph.empty(8), 2)
    with pytest.raises(SizeCapExceeded):
        census(8)


def test_bimorphism_monoid_examples():
    assert len(bimorphism_monoid(K3)) == 6
    assert bimorphism_monoid(P3) == {(0, 1, 2), (2, 1, 0)}
    assert len(bimorphism_monoid(C5)) == 10


def test_endo_kinds():
    assert set(endomorphisms(C4, EndoKind.A)) == automorphism_group(C4)
    assert set(endomorphisms(C4, EndoKind.B)) == automorphism_group(C4)
    assert len(endomorphisms(C4, EndoKind.H)) > len(endomorphisms(C4, EndoKind.M))
    # P3 folds onto an edge: homomorphisms that are not epimorphisms exist
    assert set(endomorphisms(P3, EndoKind.E)) < set(endomorphisms(P3, EndoKind.H))
    assert set(endomorphisms(P3, EndoKind.I)) == automorphism_group(P3)


def test_bim_equals_aut_up_to_order_five():
    for g in all_graphs(5):
        assert bimorphism_monoid(g) == automorphism_group(g)


def test_age_embeddings():
    ages = age_embeddings(P3, 2)
    assert len(ages) == 2
    assert sum(len(e) for e in ages.values()) == 6


def test_represented_sets_examples():
    rep = represented_sets(K3, 2)
    assert rep and all(maps == {(0, 1), (1, 0)} for maps in rep.values())
    rep = represented_sets(P3, 2)
    for (a, b, e, e2), maps in rep.items():
        if a.edge_count() == 0 and b.edge_count() == 1:
            assert not maps  # m is never represented
        if e == e2:
            assert tuple(range(2)) in maps


def _m_represented(rep) -> bool:
    return any(maps for (a, b, _, _), maps in rep.items() if a.edge_count() < b.edge_count())


def test_represented_sets_closed_under_composition():
    for g in (P3, C4, C5, TWO_K2, FiniteGraph(5, frozenset({(0, 1), (1, 2), (3, 4)}))):
        for size in (1, 2):
            rep = represented_sets(g, size)
            by_source = {}
            for (a, b, e, e2), maps in rep.items():
                by_source.setdefault((a, e), []).append((b, e2, maps))
            for (a, e), targets in by_source.items():
                for b, e2, fs in targets:
                    for c, e3, gs in by_source[(b, e2)]:
                        for f, h in itertools.product(fs, gs):
                            assert tuple(h[i] for i in f) in rep[(a, c, e, e3)]


def test_m_absent_means_edges_reflected():
    for g in all_graphs(4):
        if g.order < 2:
            continue
        rep = represented_sets(g, 2)
        if not _m_represented(rep):
            for perm in bimorphism_monoid(g):
                assert all(g.adjacent(perm[u], perm[v]) == g.adjacent(u, v)
                           for u, v in itertools.combinations(g.vertices, 2))


def test_xy_examples():
    for n in (1, 2, 3, 4):
        for x in ("I", "M", "H"):
            for y in (EndoKind.A, EndoKind.B, EndoKind.I):
                assert check_xy_homogeneity(FiniteGraph.complete(n), x, y)[0]
    assert check_xy_homogeneity(C5, "I", EndoKind.A) == (True, None)
    ok, cex = check_xy_homogeneity(P3, "I", EndoKind.A)
    assert not ok
    assert len(cex.domain) == 1 and 1 in cex.image + cex.domain
    assert {cex.domain[0], cex.image[0]} in ({0, 1}, {1, 2})
    with pytest.raises(ValueError):
        check_xy_homogeneity(P3, "Q", EndoKind.A)


def test_local_morphisms_smallest_first():
    sizes = [len(f) for f in local_morphisms(P3, "M")]
    assert sizes == sorted(sizes)


def test_embedding_independence_examples():
    assert verify_embedding_independence(FiniteGraph.complete(4), 2)
    assert verify_embedding_independence(C5, 2)
    try:
        result = verify_embedding_independence(TWO_K2, 2)
    except PreconditionError:
        result = None
    assert result in (True, None)
    with pytest.raises(PreconditionError):
        verify_embedding_independence(P3, 2)


@pytest.mark.parametrize("g", [P3, C4, C5, TWO_K2, FiniteGraph.empty(4), FiniteGraph.complete(4)],
                         ids=["P3", "C4", "C5", "2K2", "E4", "K4"])
def test_searches_agree_with_brute_force(g):
    budget = SearchBudget(horizon=g.order)
    for size in range(g.order + 1):
        for xs in itertools.combinations(g.vertices, size):
            cones = [v for v in g.vertices if v not in xs and all(g.adjacent(v, x) for x in xs)]
            cocones = [v for v in g.vertices if v not in xs and not any(g.adjacent(v, x) for x in xs)]
            assert find_cone(g, xs, budget) == (cones[0] if cones else None)
            assert find_cocone(g, xs, budget) == (cocones[0] if cocones else None)


@pytest.mark.parametrize("g", [FiniteGraph.empty(4), FiniteGraph.complete(4)], ids=["E4", "K4"])
def test_engine_extension_agrees_with_xy(g):
    assert check_xy_homogeneity(g, "M", EndoKind.B)[0]
    budget = SearchBudget(horizon=g.order)
    for f in local_morphisms(g, "M"):
        p = extend_to_partial_bimorphism(g, f, g.order, budget)
        assert p.is_valid() and len(p) == g.order


def test_census_rows():
    rows = census(3)
    assert len(rows) == (1 + 1 + 2 + 4) * 3 * len(EndoKind)
    k3 = [r for r in rows if r.graph_id == K3.label()]
    assert all(r.verdict for r in k3 if r.y in ("A", "B", "I"))
