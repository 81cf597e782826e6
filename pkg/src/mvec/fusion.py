"""Multi-view fusion by shared-partition agglomeration.

All views start from the same n singletons. At every step each view proposes
its closest active cluster pair under that view's inner linkage; the merge
happens wherever the proposal is globally smallest, and the one shared
partition advances in every view. How often (and how early) two samples end
up co-clustered across steps and iterations is accumulated into a
co-association matrix, normalized to a [0, 1] affinity.

Exact ties between proposals are broken uniformly at random from a
per-iteration derived seed; tie-free inputs are therefore seed-independent
and repeated iterations redundant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import AffinityMatrix, DistanceMatrix, Method
from .errors import InputError
from .hclust import LinkageState, height_from_stored
from .seeding import derive_seed


@dataclass(frozen=True)
class FusionConfig:
    iterations: int = 30
    inner_linkage: Method = Method.AVERAGE
    seed: int = 0

    def __post_init__(self):
        if self.iterations < 1:
            raise InputError("fusion iterations must be >= 1")


def fusion_pass(
    matrices: Sequence[np.ndarray],
    methods: Sequence[Method],
    seed: int,
) -> np.ndarray:
    """One full agglomeration sweep; returns the raw co-association counts.

    A pair first co-clustered at merge step s (1-based) stays together for
    the remaining steps, contributing n - s to its count; the first merged
    pair therefore reaches the per-pass maximum of n - 1.
    """
    n = matrices[0].shape[0]
    states = [LinkageState(m, meth) for m, meth in zip(matrices, methods)]
    members: list[list[int]] = [[i] for i in range(n)]
    counts = np.zeros((n, n))
    rng = np.random.default_rng(seed)
    for step in range(1, n):
        minima = [state.min_value() for state in states]
        reports = [
            height_from_stored(v, state.method)
            for v, state in zip(minima, states)
        ]
        smallest = min(reports)
        pairs: set[tuple[int, int]] = set()
        for state, stored_min, report in zip(states, minima, reports):
            if report == smallest:
                pairs.update(state.pairs_at(stored_min))
        ordered = sorted(pairs)
        if len(ordered) > 1:
            i, j = ordered[int(rng.integers(len(ordered)))]
        else:
            (i, j) = ordered[0]
        weight = n - step
        counts[np.ix_(members[i], members[j])] += weight
        counts[np.ix_(members[j], members[i])] += weight
        for state in states:
            state.merge(i, j)
        members[i] = members[i] + members[j]
        members[j] = []
    return counts


def iteration_seed(seed: int, index: int) -> int:
    """Derived seed driving tie-breaking in one fusion iteration."""
    return derive_seed(seed, "iter", index)


def hc_fuse(
    views: Sequence[DistanceMatrix],
    cfg: FusionConfig,
    methods: Sequence[Method] | None = None,
) -> AffinityMatrix:
    """Fuse per-view distances into one co-association affinity matrix.

    `methods` optionally assigns each view its own inner linkage; by default
    every view uses `cfg.inner_linkage`. Iterations differ only through
    random tie-breaking and are averaged.
    """
    if len(views) < 1:
        raise InputError("fusion needs at least one view")
    sample_ids = views[0].sample_ids
    for v in views[1:]:
        if v.sample_ids != sample_ids:
            raise InputError("views do not share the same sample ids")
    n = len(sample_ids)
    if n < 2:
        raise InputError("fusion needs at least 2 samples")
    if methods is None:
        methods = [cfg.inner_linkage] * len(views)
    elif len(methods) != len(views):
        raise InputError(
            f"{len(methods)} inner linkages for {len(views)} views"
        )
    matrices = [v.values for v in views]
    counts = np.zeros((n, n))
    for it in range(cfg.iterations):
        counts += fusion_pass(matrices, methods, iteration_seed(cfg.seed, it))
    affinity = counts / (cfg.iterations * (n - 1))
    np.fill_diagonal(affinity, 1.0)
    return AffinityMatrix(sample_ids, affinity)


FUSERS = {"hcfused": hc_fuse}
