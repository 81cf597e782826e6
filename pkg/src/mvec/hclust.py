"""Agglomerative clustering over a precomputed distance matrix.

All eight linkage methods are driven by one merge loop that repeatedly joins
the globally closest pair of clusters and updates inter-cluster distances via
the Lance-Williams recurrence. Centroid, median and Ward-on-squares variants
run the recurrence on squared distances and report square-rooted heights; the
raw-distance Ward variant applies the same coefficients to unsquared values.

Ties on the minimal distance are broken deterministically by the smallest
(min cluster id, max cluster id) pair, with leaves numbered 0..n-1 and the
cluster created by merge step s numbered n+s.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .core import DistanceMatrix, Labeling, Method, ViewMatrix
from .errors import InputError

SQUARED_METHODS = frozenset({Method.CENTROID, Method.MEDIAN, Method.WARD_D2})


class Merge(NamedTuple):
    left: int
    right: int
    height: float
    size: int


@dataclass(frozen=True)
class Dendrogram:
    """Full merge tree: exactly n-1 merges over n leaves."""

    merges: tuple[Merge, ...]
    n_leaves: int

    def __post_init__(self):
        object.__setattr__(self, "merges", tuple(self.merges))
        n = self.n_leaves
        if len(self.merges) != n - 1:
            raise InputError(
                f"{len(self.merges)} merges for {n} leaves; expected {n - 1}"
            )

        def size_of(cid: int) -> int:
            return 1 if cid < n else self.merges[cid - n].size

        for s, m in enumerate(self.merges):
            if not (0 <= m.left < n + s and 0 <= m.right < n + s):
                raise InputError(f"merge {s} references an unborn cluster")
            if m.left == m.right:
                raise InputError(f"merge {s} joins a cluster with itself")
            if m.size != size_of(m.left) + size_of(m.right):
                raise InputError(f"merge {s} has inconsistent size")
            if not (m.height >= 0.0):
                raise InputError(f"merge {s} has negative height")


def euclidean_distances(v: ViewMatrix) -> DistanceMatrix:
    """Pairwise Euclidean distances between sample rows."""
    return DistanceMatrix(v.sample_ids, squareform(pdist(v.values)))


def stored_scale(matrix: np.ndarray, method: Method) -> np.ndarray:
    """Distances on the scale the recurrence operates on (squared for the
    centroid/median/ward_d2 family)."""
    return matrix * matrix if method in SQUARED_METHODS else matrix.copy()


def height_from_stored(value: float, method: Method) -> float:
    """Reported merge height for a stored-scale distance.

    Squared-scale values can dip below zero when centroid or median
    agglomeration inverts; heights clamp at zero.
    """
    if method in SQUARED_METHODS:
        return float(np.sqrt(max(value, 0.0)))
    return float(value)


class LinkageState:
    """Mutable slot-based state for one agglomeration run.

    Slot s of the matrix holds one active cluster; a merge keeps the lower
    slot and retires the higher one by writing +inf through its row and
    column. Shared by `linkage` and the multi-view fusion loop (which drives
    several states through one common merge schedule).
    """

    def __init__(self, matrix: np.ndarray, method: Method):
        self.method = method
        n = matrix.shape[0]
        d = stored_scale(np.asarray(matrix, dtype=float), method)
        np.fill_diagonal(d, np.inf)
        self.d = d
        self.sizes = np.ones(n, dtype=int)
        self.active = np.ones(n, dtype=bool)

    def min_value(self) -> float:
        return float(self.d.min())

    def pairs_at(self, value: float) -> list[tuple[int, int]]:
        """All active slot pairs (i < j) at exactly the given stored value."""
        rows, cols = np.nonzero(self.d == value)
        return [(int(i), int(j)) for i, j in zip(rows, cols) if i < j]

    def merge(self, i: int, j: int) -> None:
        """Join slots i and j into slot i; slot j becomes inactive."""
        d = self.d
        ni, nj = self.sizes[i], self.sizes[j]
        d_ij = d[i, j]
        others = np.flatnonzero(self.active)
        others = others[(others != i) & (others != j)]
        a, b = d[i, others], d[j, others]
        method = self.method
        if method is Method.SINGLE:
            new = np.minimum(a, b)
        elif method is Method.COMPLETE:
            new = np.maximum(a, b)
        elif method in (Method.AVERAGE, Method.CENTROID):
            new = (ni * a + nj * b) / (ni + nj)
            if method is Method.CENTROID:
                new -= ni * nj * d_ij / (ni + nj) ** 2
        elif method is Method.WEIGHTED:
            new = 0.5 * (a + b)
        elif method is Method.MEDIAN:
            new = 0.5 * a + 0.5 * b - 0.25 * d_ij
        else:  # ward_d on raw distances, ward_d2 on squares
            nk = self.sizes[others]
            new = ((ni + nk) * a + (nj + nk) * b - nk * d_ij) / (ni + nj + nk)
        d[i, others] = new
        d[others, i] = new
        d[i, i] = np.inf
        d[j, :] = np.inf
        d[:, j] = np.inf
        self.sizes[i] = ni + nj
        self.active[j] = False


def linkage(d: DistanceMatrix, method: Method) -> Dendrogram:
    """Agglomerate the full merge tree for one linkage method."""
    n = d.n
    if n < 2:
        raise InputError("linkage needs at least 2 samples")
    state = LinkageState(d.values, method)
    ids = np.arange(n)
    merges = []
    for step in range(n - 1):
        value = state.min_value()
        pairs = state.pairs_at(value)
        i, j = min(
            pairs,
            key=lambda p: (
                min(ids[p[0]], ids[p[1]]),
                max(ids[p[0]], ids[p[1]]),
            ),
        )
        left = int(min(ids[i], ids[j]))
        right = int(max(ids[i], ids[j]))
        size = int(state.sizes[i] + state.sizes[j])
        state.merge(i, j)
        ids[i] = n + step
        merges.append(Merge(left, right, height_from_stored(value, method), size))
    return Dendrogram(tuple(merges), n)


def cut(t: Dendrogram, k: int) -> Labeling:
    """Flat partition from undoing the last k-1 merges.

    Labels are renumbered 0..k-1 in order of first appearance along the
    sample axis.
    """
    return cut_with_ids(t, k, tuple(f"s{i}" for i in range(t.n_leaves)))


def cut_with_ids(t: Dendrogram, k: int, sample_ids: tuple[str, ...]) -> Labeling:
    n = t.n_leaves
    if not 1 <= k <= n:
        raise InputError(f"k={k} out of range 1..{n}")
    clusters: dict[int, list[int]] = {i: [i] for i in range(n)}
    for s, m in enumerate(t.merges[: n - k]):
        clusters[n + s] = clusters.pop(m.left) + clusters.pop(m.right)
    roots = np.empty(n, dtype=int)
    for cid, members in clusters.items():
        roots[members] = cid
    return Labeling.from_assignments(sample_ids, roots)


def cluster(d: DistanceMatrix, method: Method, k: int) -> Labeling:
    """Convenience composition: linkage then cut, keeping sample ids."""
    return cut_with_ids(linkage(d, method), k, d.sample_ids)
