"""Bounded evidence for the MB-homogeneous versus ultrahomogeneous dichotomy.

The classifier never certifies homogeneity.  It reports which side of the
dichotomy the evidence gathered at the given parameters points to:

* ``MB-evidence``: m extends to a deep partial bimorphism, and sampled
  finite sets all have cones and co-cones;
* ``UH-evidence``: a registered analytic rule shows m is never
  represented, so every bimorphism is an automorphism;
* ``inconclusive``: anything else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .extension import (
    ExtensionExhausted,
    SearchBudget,
    cocone_via_star_bound,
    extend_to_partial_bimorphism,
)
from .graph_core import Cliques, Complement, Complete, CountableGraph, Empty, complement_oracle
from .invariants import (
    INVARIANT_HORIZON,
    BoundedInvariant,
    IndependentSetStream,
    PropertyVerdict,
    check_therefore_property,
    check_triangle_property,
    independence_number_bounded,
    sample_sets,
    star_number_bounded,
)
from .morphism import canonical_m

WITNESSED = "witnessed"
REFUTED = "refuted-analytic"
UNKNOWN = "unknown"

MB_EVIDENCE = "MB-evidence"
UH_EVIDENCE = "UH-evidence"
INCONCLUSIVE = "inconclusive"


def normalize(graph: CountableGraph) -> CountableGraph:
    """Collapse double complements and the degenerate generators."""
    if isinstance(graph, Cliques) and graph.k == 1:
        return Empty()
    if isinstance(graph, Complement):
        inner = normalize(graph.inner)
        if isinstance(inner, Complement):
            return inner.inner
        if isinstance(inner, Empty):
            return Complete()
        if isinstance(inner, Complete):
            return Empty()
        return Complement(inner)
    return graph


@dataclass(frozen=True)
class AnalyticRule:
    name: str
    matches: Callable[[CountableGraph], bool]
    justification: str


RULES: list[AnalyticRule] = [
    AnalyticRule(
        "no-nonedge",
        lambda g: isinstance(g, Complete),
        "the graph has no nonedge, so there is nothing for m to act on",
    ),
    AnalyticRule(
        "no-edge",
        lambda g: isinstance(g, Empty),
        "the graph has no edge, so no map can send a nonedge to an edge",
    ),
    AnalyticRule(
        "block-permutation",
        lambda g: isinstance(g, Cliques) and g.k >= 2,
        "an edge-preserving bijection sends each k-clique block onto a k-clique, "
        "which is again a block; blocks are permuted, edges are reflected, m never occurs",
    ),
    AnalyticRule(
        "complement-block-permutation",
        lambda g: isinstance(g, Complement) and isinstance(g.inner, Cliques) and g.inner.k >= 2,
        "the inverse of a bimorphism of the complement of a union of cliques is a "
        "bimorphism of the union itself, hence an automorphism; m never occurs",
    ),
]


def matching_rule(graph: CountableGraph) -> Optional[AnalyticRule]:
    g = normalize(graph)
    return next((r for r in RULES if r.matches(g)), None)


@dataclass(frozen=True)
class MVerdict:
    status: str
    depth: Optional[int] = None
    rule: Optional[str] = None
    justification: Optional[str] = None
    horizon: Optional[int] = None
    reason: Optional[str] = None
    certificate: object = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        out = {"status": self.status}
        for key in ("depth", "rule", "justification", "horizon", "reason"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


def represents_m_bounded(graph: CountableGraph, depth: int = 16,
                         budget: SearchBudget = SearchBudget(), m_horizon: int = 64) -> MVerdict:
    rule = matching_rule(graph)
    if rule is not None:
        return MVerdict(REFUTED, rule=rule.name, justification=rule.justification)
    m = canonical_m(graph, m_horizon)
    if m is None:
        return MVerdict(UNKNOWN, horizon=m_horizon, reason="no nonedge or no edge below the horizon")
    try:
        p = extend_to_partial_bimorphism(graph, m, depth, budget)
    except ExtensionExhausted as exc:
        return MVerdict(UNKNOWN, horizon=budget.horizon, reason=str(exc))
    if not p.is_valid():
        raise AssertionError("engine returned a map that does not preserve edges")
    return MVerdict(WITNESSED, depth=depth, certificate=p)


@dataclass(frozen=True)
class ClassifyParams:
    depth: int = 10
    budget: SearchBudget = SearchBudget()
    size_max: int = 3
    base: int = 7
    trials: int = 200
    seed: int = 0
    k_max: int = 5
    n_max: int = 4
    horizon: int = INVARIANT_HORIZON
    sigma_split: int = 2


@dataclass
class EvidenceReport:
    spec: str
    m_verdict: MVerdict
    complement_m_verdict: MVerdict
    triangle_verdict: PropertyVerdict
    therefore_verdict: PropertyVerdict
    therefore_method: str
    therefore_agreement: bool
    sigma: BoundedInvariant
    alpha: BoundedInvariant
    branch: str
    cross_check: bool
    artifacts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "spec": self.spec,
            "branch": self.branch,
            "m_verdict": self.m_verdict.to_json(),
            "complement_m_verdict": self.complement_m_verdict.to_json(),
            "triangle_verdict": self.triangle_verdict.to_json(),
            "therefore_verdict": self.therefore_verdict.to_json(),
            "therefore_method": self.therefore_method,
            "therefore_agreement": self.therefore_agreement,
            "sigma": self.sigma.to_json(),
            "alpha": self.alpha.to_json(),
            "cross_check": self.cross_check,
            "artifacts": self.artifacts,
        }


class CrossCheckViolation(RuntimeError):
    """m is witnessed on one side of a complement pair and analytically refuted on the other."""

    def __init__(self, report: EvidenceReport):
        super().__init__(f"complement cross-check failed for {report.spec}")
        self.report = report


def _star_bound_therefore(graph, sigma: int, params: ClassifyParams) -> PropertyVerdict:
    sets = sample_sets(params.size_max, params.base, params.trials, params.seed)
    checked = 0
    for xs in sets:
        vertex, _ = cocone_via_star_bound(graph, xs, IndependentSetStream(graph, params.budget), sigma, params.budget)
        checked += 1
        if vertex is None:
            return PropertyVerdict("failed", checked, (), xs)
    return PropertyVerdict(WITNESSED, checked)


def _revalidate(graph, verdict: PropertyVerdict, cone: bool) -> bool:
    for item in verdict.sets:
        w = item.witness
        if w is None or w in item.vertices:
            return False
        if any(graph.adjacent(w, x) != cone for x in item.vertices):
            return False
    return True


def classify(graph: CountableGraph, params: ClassifyParams = ClassifyParams()) -> EvidenceReport:
    m = represents_m_bounded(graph, params.depth, params.budget)
    mc = represents_m_bounded(complement_oracle(graph), params.depth, params.budget)
    coherent = not ({m.status, mc.status} == {WITNESSED, REFUTED})

    sampling = dict(size_max=params.size_max, trials=params.trials, budget=params.budget,
                    base=params.base, seed=params.seed)
    triangle = check_triangle_property(graph, **sampling)
    direct = check_therefore_property(graph, **sampling)
    sigma = star_number_bounded(graph, params.n_max, params.horizon)
    sigma_wide = star_number_bounded(graph, params.n_max, 2 * params.horizon)
    alpha = independence_number_bounded(graph, params.k_max, params.horizon)

    if sigma.value < params.sigma_split and sigma.value == sigma_wide.value:
        method = "star-bound"
        therefore = _star_bound_therefore(graph, sigma.value, params)
    else:
        method = "direct"
        therefore = direct
    agreement = therefore.status == direct.status

    artifacts = {"sigma_witness": list(sigma.witness), "alpha_witness": list(alpha.witness)}
    if m.certificate is not None:
        artifacts["m_trace"] = m.certificate.trace_json()

    if m.status == WITNESSED:
        sound = (
            triangle.witnessed and direct.witnessed and therefore.witnessed
            and m.certificate.is_valid()
            and _revalidate(graph, triangle, True)
            and _revalidate(graph, direct, False)
        )
        branch = MB_EVIDENCE if sound else INCONCLUSIVE
    elif m.status == REFUTED:
        branch = UH_EVIDENCE
    else:
        branch = INCONCLUSIVE

    report = EvidenceReport(
        spec=graph.spec,
        m_verdict=m,
        complement_m_verdict=mc,
        triangle_verdict=triangle,
        therefore_verdict=therefore,
        therefore_method=method,
        therefore_agreement=agreement,
        sigma=sigma,
        alpha=alpha,
        branch=branch,
        cross_check=coherent,
        artifacts=artifacts,
    )
    if not coherent:
        raise CrossCheckViolation(report)
    return report
