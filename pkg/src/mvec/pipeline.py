"""End-to-end multi-view ensemble clustering workflows.

Two layouts are provided. The two-branch layout fuses every view twice, once
per linkage method, then re-fuses the branch outputs and takes a consensus
of both cuts. The flat layout fuses all views once, each under its own
linkage, and takes a consensus over up to three cuts of the fused matrix.
Both come with a genetic-search wrapper that picks the linkage combination
by silhouette.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .consensus import LabelingSet, consensus
from .core import (
    AffinityMatrix,
    EnsembleGraph,
    EnsembleNode,
    Labeling,
    Method,
    ViewMatrix,
    ViewNode,
    affinity_to_distance,
    execute_graph,
    method_for_derived,
)
from .errors import InputError
from .fusion import FusionConfig
from .hclust import cluster
from .metrics import best_k, silhouette
from .optimizer import GaParams, GaResult, evolve


@dataclass(frozen=True)
class PipelineResult:
    labels: Labeling
    k: int
    fused: AffinityMatrix
    methods: tuple[Method, ...]
    fitness: float

    def __post_init__(self):
        if self.labels.k != self.k:
            raise InputError(
                f"labeling has {self.labels.k} clusters, expected {self.k}"
            )


def two_branch_graph(
    views: Sequence[ViewMatrix],
    hc1: Method,
    hc2: Method,
    iterations: int = 30,
) -> EnsembleGraph:
    """Ensemble graph fusing all views under hc1 and hc2 separately, then
    re-fusing the two branch outputs."""
    nodes: list[ViewNode | EnsembleNode] = []
    for branch, method in (("a", hc1), ("b", hc2)):
        leaf_ids = []
        for i, view in enumerate(views):
            node_id = f"view{i}_{branch}"
            nodes.append(ViewNode(node_id, method, data=view))
            leaf_ids.append(node_id)
        nodes.append(
            EnsembleNode(f"branch_{branch}", tuple(leaf_ids), iterations=iterations)
        )
    nodes.append(ViewNode("fused_a", hc1, source="branch_a"))
    nodes.append(ViewNode("fused_b", hc2, source="branch_b"))
    nodes.append(
        EnsembleNode("final", ("fused_a", "fused_b"), iterations=iterations)
    )
    return EnsembleGraph(tuple(nodes), output="final")


def flat_graph(
    views: Sequence[ViewMatrix],
    methods: Sequence[Method],
    iterations: int = 30,
) -> EnsembleGraph:
    """Ensemble graph fusing all views once, view i under methods[i]."""
    nodes: list[ViewNode | EnsembleNode] = []
    leaf_ids = []
    for i, (view, method) in enumerate(zip(views, methods)):
        node_id = f"view{i}"
        nodes.append(ViewNode(node_id, method, data=view))
        leaf_ids.append(node_id)
    nodes.append(EnsembleNode("fusion", tuple(leaf_ids), iterations=iterations))
    return EnsembleGraph(tuple(nodes), output="fusion")


def resolve_k(k, distances, method: Method, k_max: int) -> int:
    if k == "auto" or k is None:
        cap = min(k_max, distances.n - 1)
        if cap < 2:
            raise InputError("too few samples to choose k automatically")
        return best_k(distances, method, cap)
    k = int(k)
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    return k


def _finish(fused, cutters, k, genome) -> PipelineResult:
    # the fused matrix is a co-association derivative, so ward-family
    # cutters run as average linkage here (see method_for_derived)
    distances = affinity_to_distance(fused)
    members = tuple(
        cluster(distances, method_for_derived(m), k) for m in cutters
    )
    labels = consensus(LabelingSet(members), k)
    fitness = silhouette(distances, labels) if k >= 2 else math.nan
    return PipelineResult(
        labels=labels, k=k, fused=fused, methods=genome, fitness=fitness
    )


def parea_hc1(
    views: Sequence[ViewMatrix],
    hc1: Method = Method.WARD_D,
    hc2: Method = Method.WARD_D2,
    k: int | str | None = "auto",
    cfg: FusionConfig = FusionConfig(),
    k_max: int = 10,
) -> PipelineResult:
    """Two-branch ensemble: per-branch fusion under hc1/hc2, re-fusion of
    the branch outputs, consensus of the hc1 and hc2 cuts.

    With k="auto" the cluster count maximizing silhouette under hc1 on the
    final fused distances is chosen, scanning 2..min(k_max, n-1).
    """
    graph = two_branch_graph(views, hc1, hc2, iterations=cfg.iterations)
    fused = execute_graph(graph, cfg.seed)
    resolved = resolve_k(
        k, affinity_to_distance(fused), method_for_derived(hc1), k_max
    )
    return _finish(fused, (hc1, hc2), resolved, (hc1, hc2))


def final_stage_methods(methods: Sequence[Method]) -> tuple[Method, ...]:
    """Up to three cutters for the fused matrix: the genome's distinct
    methods in first-appearance order, cycled to min(3, #views) entries."""
    distinct: list[Method] = []
    for m in methods:
        if m not in distinct:
            distinct.append(m)
    count = min(3, len(methods))
    return tuple(distinct[i % len(distinct)] for i in range(count))


def parea_hc2(
    views: Sequence[ViewMatrix],
    methods: Sequence[Method],
    k: int | str | None = "auto",
    cfg: FusionConfig = FusionConfig(),
    k_max: int = 10,
) -> PipelineResult:
    """Flat ensemble: one fusion with per-view linkages, then consensus of
    up to three cuts of the fused matrix (see final_stage_methods)."""
    if len(methods) != len(views):
        raise InputError(
            f"{len(methods)} methods for {len(views)} views"
        )
    graph = flat_graph(views, methods, iterations=cfg.iterations)
    fused = execute_graph(graph, cfg.seed)
    cutters = final_stage_methods(methods)
    resolved = resolve_k(
        k, affinity_to_distance(fused), method_for_derived(cutters[0]), k_max
    )
    return _finish(fused, cutters, resolved, tuple(methods))


@dataclass(frozen=True)
class OptimizedResult:
    """Pipeline output of the winning genome plus the search trace."""

    result: PipelineResult
    search: GaResult


def parea_hc1_opt(
    views: Sequence[ViewMatrix],
    k: int | str | None = "auto",
    cfg: FusionConfig = FusionConfig(),
    ga: GaParams = GaParams(),
    k_max: int = 10,
) -> OptimizedResult:
    """Genetic search over (hc1, hc2) pairs for the two-branch ensemble,
    scored by the silhouette of each pair's final labeling."""
    seen: dict[tuple[Method, ...], PipelineResult] = {}

    def fitness(genome):
        result = parea_hc1(views, genome[0], genome[1], k=k, cfg=cfg, k_max=k_max)
        seen[genome] = result
        return result.fitness

    search = evolve(2, fitness, ga)
    return OptimizedResult(result=seen[search.genome], search=search)


def parea_hc2_opt(
    views: Sequence[ViewMatrix],
    k: int | str | None = "auto",
    cfg: FusionConfig = FusionConfig(),
    ga: GaParams = GaParams(),
    k_max: int = 10,
) -> OptimizedResult:
    """Genetic search over per-view linkage assignments for the flat
    ensemble, scored like parea_hc1_opt."""
    seen: dict[tuple[Method, ...], PipelineResult] = {}

    def fitness(genome):
        result = parea_hc2(views, genome, k=k, cfg=cfg, k_max=k_max)
        seen[genome] = result
        return result.fitness

    search = evolve(len(views), fitness, ga)
    return OptimizedResult(result=seen[search.genome], search=search)
