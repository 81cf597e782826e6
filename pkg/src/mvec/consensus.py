"""Consensus over a set of labelings via co-association evidence.

Each labeling votes on every sample pair; the fraction of labelings that
co-cluster a pair becomes its affinity, and average-linkage clustering of
the complementary distances yields the consensus partition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AffinityMatrix, Labeling, Method, affinity_to_distance
from .errors import InputError
from .hclust import cluster


@dataclass(frozen=True)
class LabelingSet:
    members: tuple[Labeling, ...]

    def __post_init__(self):
        if len(self.members) < 1:
            raise InputError("labeling set needs at least one member")
        ids = self.members[0].sample_ids
        for m in self.members[1:]:
            if m.sample_ids != ids:
                raise InputError("labelings do not share the same sample ids")

    @property
    def sample_ids(self) -> tuple[str, ...]:
        return self.members[0].sample_ids


def coassociation(labelings: LabelingSet) -> AffinityMatrix:
    """Fraction of member labelings placing each pair in the same cluster."""
    n = len(labelings.sample_ids)
    acc = np.zeros((n, n))
    for member in labelings.members:
        labels = member.labels
        acc += labels[:, None] == labels[None, :]
    return AffinityMatrix(labelings.sample_ids, acc / len(labelings.members))


def consensus(labelings: LabelingSet, k: int) -> Labeling:
    """Average-linkage cut of the co-association distances into k clusters."""
    distances = affinity_to_distance(coassociation(labelings))
    return cluster(distances, Method.AVERAGE, k)
