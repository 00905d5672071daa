"""Acceptance suite: one PASS/FAIL line per criterion, repeated in the terminal summary.

Run alone with ``python tests/test_acceptance.py`` or ``pytest tests/test_acceptance.py``.
"""

import itertools
import random
import time

from bimorph.classifier import MB_EVIDENCE, REFUTED, UH_EVIDENCE, WITNESSED, classify
from bimorph.duality import BijectionWitness, verify_duality_quadruple
from bimorph.extension import (
    SearchBudget,
    clique_force,
    cocone_via_star_bound,
    extend_to_partial_bimorphism,
    independent_preimage,
)
from bimorph.finite_lab import automorphism_group, bimorphism_monoid, verify_embedding_independence
from bimorph.graph_core import FiniteGraph, all_graphs, make_oracle
from bimorph.invariants import (
    IndependentSetStream,
    grow_independent_set,
    independence_number_bounded,
    is_independent,
    star_number_bounded,
)
from bimorph.morphism import random_local_isomorphism


def _line(report_line, number, ok, detail):
    report_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


def _edges(graph, xs):
    return sum(graph.adjacent(u, v) for u, v in itertools.combinations(xs, 2))


def _labeled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield FiniteGraph(n, frozenset(p for i, p in enumerate(pairs) if bits >> i & 1))


def test_criterion_1_duality_quadruple(report_line):
    start = time.perf_counter()
    cases = agree = 0
    for n in range(5):
        graphs = list(_labeled_graphs(n))
        perms = list(itertools.permutations(range(n)))
        for g, h in itertools.product(graphs, repeat=2):
            for perm in perms:
                cases += 1
                agree += verify_duality_quadruple(BijectionWitness.from_permutation(perm, g, h), g, h).consistent
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randint(5, 6)
        pairs = list(itertools.combinations(range(n), 2))
        g, h = (FiniteGraph(n, frozenset(p for p in pairs if rng.random() < 0.5)) for _ in range(2))
        cases += 1
        agree += verify_duality_quadruple(BijectionWitness.from_permutation(rng.sample(range(n), n), g, h), g, h).consistent
    elapsed = time.perf_counter() - start
    ok = agree == cases and elapsed < 10
    _line(report_line, 1, ok, f"four clauses agree in {agree}/{cases} cases, {elapsed:.2f} s (< 10 s)")
    assert ok


def test_criterion_2_bim_equals_aut(report_line):
    start = time.perf_counter()
    graphs = list(all_graphs(6))
    equal = sum(bimorphism_monoid(g) == automorphism_group(g) for g in graphs)
    elapsed = time.perf_counter() - start
    ok = equal == len(graphs) and elapsed < 60
    _line(report_line, 2, ok, f"Bim = Aut for {equal}/{len(graphs)} canonical graphs of order <= 6, {elapsed:.2f} s (< 60 s)")
    assert ok


def test_criterion_3_extension_engine(report_line):
    rado = make_oracle("rado")
    target = set(range(32))
    good, worst = 0, 0.0
    for seed in range(100):
        f = random_local_isomorphism(rado, random.Random(seed), window=32, max_size=8)
        start = time.perf_counter()
        p = extend_to_partial_bimorphism(rado, f, 32)
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        extends = all(p[u] == w for u, w in zip(f.domain, f.image))
        if extends and target <= set(p.domain) and target <= set(p.range) and p.is_valid() and elapsed < 1:
            good += 1
    ok = good == 100
    _line(report_line, 3, ok, f"{good}/100 seeded local isomorphisms extended to depth 32 and pair-checked, slowest run {worst:.3f} s (< 1 s)")
    assert ok


def test_criterion_4_clique_forcing(report_line):
    rado = make_oracle("rado")
    forced = preimaged = 0
    for seed in range(50):
        xs = random.Random(seed).sample(range(64), 6)
        stages, final = clique_force(rado, xs)
        counts, current = [_edges(rado, xs)], list(xs)
        for stage in stages:
            assert stage.is_valid()
            current = [stage[y] for y in current]
            counts.append(_edges(rado, current))
        increasing = all(a < b for a, b in zip(counts, counts[1:]))
        if (current == final and _edges(rado, final) == 15 and len(set(final)) == 6
                and len(stages) <= 15 - counts[0] and increasing):
            forced += 1
        p, ys = independent_preimage(rado, xs)
        if (len(set(ys)) == 6 and is_independent(rado, ys) and p.is_valid()
                and [p[y] for y in ys] == xs):
            preimaged += 1
    ok = forced == preimaged == 50
    _line(report_line, 4, ok, f"{forced}/50 six-sets forced onto K6 within 15 - e(X) stages, {preimaged}/50 independent preimages verified")
    assert ok


CANNED = {
    "rado": MB_EVIDENCE,
    "gnp(p=0.5,seed=0)": MB_EVIDENCE,
    "cliques(3)": UH_EVIDENCE,
    "complete": UH_EVIDENCE,
    "empty": UH_EVIDENCE,
}


def test_criterion_5_classifier_dichotomy(report_line):
    matched = coherent = 0
    specs = [*CANNED, *(f"complement({s})" for s in CANNED)]
    for spec in specs:
        report = classify(make_oracle(spec))
        if spec in CANNED and report.branch == CANNED[spec]:
            matched += 1
        if {report.m_verdict.status, report.complement_m_verdict.status} != {WITNESSED, REFUTED}:
            coherent += 1
    ok = matched == len(CANNED) and coherent == len(specs)
    _line(report_line, 5, ok, f"{matched}/{len(CANNED)} canned branches match, complement coherence {coherent}/{len(specs)}")
    assert ok


def test_criterion_6_star_number_bound(report_line):
    graph = make_oracle("cliques(3)")
    sigma = star_number_bounded(graph, 4).value
    rng = random.Random(6)
    good = 0
    for _ in range(100):
        xs = rng.sample(range(48), rng.randint(1, 6))
        vertex, audit = cocone_via_star_bound(graph, xs, IndependentSetStream(graph), sigma)
        members = set(itertools.islice(IndependentSetStream(graph), 64))
        in_i = len(set(xs) & members)
        valid = vertex is not None and vertex not in xs and not any(graph.adjacent(vertex, x) for x in xs)
        if valid and audit.blocked <= sigma * len(xs) + in_i:
            good += 1
    ok = sigma == 1 and good == 100
    _line(report_line, 6, ok, f"sigma = {sigma}; {good}/100 sets got an audited, re-validated co-cone")
    assert ok


def test_criterion_7_embedding_independence(report_line):
    graphs = {
        "K4": FiniteGraph.complete(4),
        "K5": FiniteGraph.complete(5),
        "C5": FiniteGraph.cycle(5),
        "E5": FiniteGraph.empty(5),
    }
    results = {(name, size): verify_embedding_independence(g, size) for name, g in graphs.items() for size in (2, 3)}
    ok = all(results.values())
    _line(report_line, 7, ok, f"embedding independence holds in {sum(results.values())}/{len(results)} cases (K4, K5, C5, E5 at sizes 2, 3)")
    assert ok


def test_criterion_8_grow_independent(report_line):
    budget = SearchBudget(horizon=256)
    total = grown = 0
    for spec in ("rado", "cliques(3)"):
        graph = make_oracle(spec)
        witness = independence_number_bounded(graph, 6).witness
        stream = list(itertools.islice(IndependentSetStream(graph), 6))
        found = {tuple(sorted(s)) for base in (witness, stream)
                 for k in range(1, len(base) + 1) for s in itertools.combinations(base, k)}
        for xs in sorted(found):
            total += 1
            v = grow_independent_set(graph, xs, budget)
            if v is not None and v < 256 and is_independent(graph, (*xs, v)) and v not in xs:
                grown += 1
    ok = total > 0 and grown == total
    _line(report_line, 8, ok, f"{grown}/{total} independent sets of size <= 6 grown within horizon 256")
    assert ok


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
