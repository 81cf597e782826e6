"""Shared domain types and the layered view/ensemble graph.

A view is a samples-by-features matrix tied to a linkage method; an ensemble
node fuses the structure of its child views into a sample-by-sample affinity
matrix, which can itself be wrapped as a view of a deeper ensemble. The graph
formalism lets arbitrary stacked architectures be declared and executed
deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ConfigError, InputError
from .seeding import derive_seed

SYMMETRY_TOL = 1e-12


class Method(str, Enum):
    """The eight admissible agglomerative linkage methods.

    Declaration order is the canonical order used for genome enumeration and
    lexicographic tie-breaking.
    """

    SINGLE = "single"
    COMPLETE = "complete"
    AVERAGE = "average"
    WEIGHTED = "weighted"
    CENTROID = "centroid"
    MEDIAN = "median"
    WARD_D = "ward_d"
    WARD_D2 = "ward_d2"

    @property
    def index(self) -> int:
        return _METHOD_INDEX[self]

    @classmethod
    def parse(cls, name: str) -> "Method":
        try:
            return cls(name)
        except ValueError:
            raise ConfigError(
                f"unknown linkage method {name!r}; expected one of "
                + ", ".join(m.value for m in cls)
            ) from None


def method_for_derived(method: "Method") -> "Method":
    """Linkage to apply when the matrix is a co-association derivative.

    Ward linkage presumes the distances embed in a squared-euclidean
    feature space. Complemented co-association affinities carry no such
    embedding, and Ward degenerates badly on them (their values are
    offset-dominated near the top of the tree), so both Ward variants fall
    back to average linkage there; the other six methods are well defined
    on arbitrary dissimilarities and pass through unchanged. Matrices
    computed directly from data keep the literal method.
    """
    if method in (Method.WARD_D, Method.WARD_D2):
        return Method.AVERAGE
    return method


_METHOD_INDEX = {m: i for i, m in enumerate(Method)}


def _check_ids(sample_ids: tuple[str, ...]) -> None:
    seen: set[str] = set()
    for sid in sample_ids:
        if sid in seen:
            raise InputError(f"duplicate sample id {sid!r}")
        seen.add(sid)


def _freeze(values: np.ndarray) -> np.ndarray:
    out = np.array(values, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class ViewMatrix:
    """One data view: n samples by p features, fully observed.

    `feature_ids` is optional metadata kept so preprocessing can round-trip
    CSV files; it plays no role in clustering.
    """

    sample_ids: tuple[str, ...]
    values: np.ndarray
    feature_ids: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "sample_ids", tuple(self.sample_ids))
        values = _freeze(self.values)
        if values.ndim != 2:
            raise InputError(f"view values must be 2-d, got shape {values.shape}")
        n, p = values.shape
        if n < 2:
            raise InputError(f"a view needs at least 2 samples, got {n}")
        if p < 1:
            raise InputError("a view needs at least 1 feature")
        if len(self.sample_ids) != n:
            raise InputError(
                f"{len(self.sample_ids)} sample ids for {n} rows"
            )
        _check_ids(self.sample_ids)
        if not np.all(np.isfinite(values)):
            raise InputError("view contains missing or non-finite values")
        if self.feature_ids is not None:
            object.__setattr__(self, "feature_ids", tuple(self.feature_ids))
            if len(self.feature_ids) != p:
                raise InputError(
                    f"{len(self.feature_ids)} feature ids for {p} columns"
                )
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    def take(self, indices) -> "ViewMatrix":
        """Row subset in the given order."""
        idx = np.asarray(indices, dtype=int)
        return ViewMatrix(
            tuple(self.sample_ids[i] for i in idx),
            self.values[idx],
            self.feature_ids,
        )


def _check_square(values: np.ndarray, what: str) -> np.ndarray:
    values = _freeze(values)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise InputError(f"{what} must be square, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise InputError(f"{what} contains non-finite values")
    if np.abs(values - values.T).max(initial=0.0) > SYMMETRY_TOL:
        raise InputError(f"{what} is not symmetric within {SYMMETRY_TOL}")
    return values


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise dissimilarities with a zero diagonal."""

    sample_ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sample_ids", tuple(self.sample_ids))
        values = _check_square(self.values, "distance matrix")
        if len(self.sample_ids) != values.shape[0]:
            raise InputError("sample id count does not match matrix size")
        _check_ids(self.sample_ids)
        if values.min(initial=0.0) < 0:
            raise InputError("distance matrix has negative entries")
        if np.abs(np.diag(values)).max(initial=0.0) > 0:
            raise InputError("distance matrix diagonal must be zero")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class AffinityMatrix:
    """Symmetric pairwise similarities in [0, 1] with a unit diagonal."""

    sample_ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sample_ids", tuple(self.sample_ids))
        values = _check_square(self.values, "affinity matrix")
        if len(self.sample_ids) != values.shape[0]:
            raise InputError("sample id count does not match matrix size")
        _check_ids(self.sample_ids)
        if values.min(initial=1.0) < 0 or values.max(initial=0.0) > 1:
            raise InputError("affinity entries must lie in [0, 1]")
        if np.abs(np.diag(values) - 1.0).max(initial=0.0) > 0:
            raise InputError("affinity diagonal must be one")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class Labeling:
    """Flat cluster assignment: labels are the contiguous range 0..k-1."""

    sample_ids: tuple[str, ...]
    labels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sample_ids", tuple(self.sample_ids))
        labels = np.array(self.labels, dtype=int)
        labels.flags.writeable = False
        if labels.ndim != 1 or len(labels) != len(self.sample_ids):
            raise InputError("labels must be one per sample id")
        _check_ids(self.sample_ids)
        uniq = np.unique(labels)
        if len(uniq) == 0 or uniq[0] != 0 or uniq[-1] != len(uniq) - 1:
            raise InputError("labels must form the contiguous range 0..k-1")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def k(self) -> int:
        return int(self.labels.max()) + 1

    @classmethod
    def from_assignments(cls, sample_ids, raw) -> "Labeling":
        """Canonicalize arbitrary hashable labels by first-occurrence order."""
        order: dict = {}
        labels = np.empty(len(raw), dtype=int)
        for i, value in enumerate(raw):
            labels[i] = order.setdefault(value, len(order))
        return cls(tuple(sample_ids), labels)


def affinity_to_distance(a: AffinityMatrix) -> DistanceMatrix:
    """Complementary dissimilarity d[i,j] = 1 - a[i,j]."""
    values = 1.0 - a.values
    # 1 - 1.0 is exactly 0.0, so the diagonal stays clean.
    return DistanceMatrix(a.sample_ids, values)


def distance_to_affinity(d: DistanceMatrix) -> AffinityMatrix:
    """Inverse of `affinity_to_distance`; requires entries in [0, 1]."""
    if d.values.max(initial=0.0) > 1.0:
        raise InputError("distance entries exceed 1; cannot map to affinity")
    return AffinityMatrix(d.sample_ids, 1.0 - d.values)


# ---------------------------------------------------------------------------
# Layered ensemble graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ViewNode:
    """A view: either raw data (a leaf) or the output of an ensemble node,
    paired with the linkage method that clusters it."""

    node_id: str
    method: Method
    data: ViewMatrix | None = None
    source: str | None = None

    def __post_init__(self):
        if (self.data is None) == (self.source is None):
            raise ConfigError(
                f"view node {self.node_id!r} needs exactly one of data/source"
            )


@dataclass(frozen=True)
class EnsembleNode:
    """Fuses its child views into one affinity matrix."""

    node_id: str
    children: tuple[str, ...]
    fuser: str = "hcfused"
    iterations: int = 30

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 1:
            raise ConfigError(f"ensemble node {self.node_id!r} has no children")
        if self.iterations < 1:
            raise ConfigError("fusion iterations must be >= 1")


@dataclass(frozen=True)
class EnsembleGraph:
    """Acyclic stack of view and ensemble nodes with a designated output."""

    nodes: tuple[ViewNode | EnsembleNode, ...]
    output: str
    _by_id: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        by_id: dict[str, ViewNode | EnsembleNode] = {}
        for node in self.nodes:
            if node.node_id in by_id:
                raise ConfigError(f"duplicate node id {node.node_id!r}")
            by_id[node.node_id] = node
        object.__setattr__(self, "_by_id", by_id)
        if self.output not in by_id:
            raise ConfigError(f"output node {self.output!r} not in graph")
        if not isinstance(by_id[self.output], EnsembleNode):
            raise ConfigError("output node must be an ensemble node")
        self._validate()

    def node(self, node_id: str) -> ViewNode | EnsembleNode:
        return self._by_id[node_id]

    def _validate(self) -> None:
        for node in self.nodes:
            if isinstance(node, EnsembleNode):
                for child in node.children:
                    ref = self._by_id.get(child)
                    if ref is None:
                        raise ConfigError(
                            f"ensemble {node.node_id!r} references missing "
                            f"node {child!r}"
                        )
                    if not isinstance(ref, ViewNode):
                        raise ConfigError(
                            f"ensemble {node.node_id!r} child {child!r} must "
                            "be a view node"
                        )
            elif node.source is not None:
                ref = self._by_id.get(node.source)
                if ref is None:
                    raise ConfigError(
                        f"view {node.node_id!r} references missing "
                        f"node {node.source!r}"
                    )
                if not isinstance(ref, EnsembleNode):
                    raise ConfigError(
                        f"view {node.node_id!r} source must be an ensemble node"
                    )
        # Cycle check by DFS from every node.
        WHITE, GREY, BLACK = 0, 1, 2
        color = {nid: WHITE for nid in self._by_id}

        def successors(nid: str) -> tuple[str, ...]:
            node = self._by_id[nid]
            if isinstance(node, EnsembleNode):
                return node.children
            return (node.source,) if node.source else ()

        def visit(nid: str) -> None:
            color[nid] = GREY
            for nxt in successors(nid):
                if color[nxt] == GREY:
                    raise ConfigError(f"graph contains a cycle through {nxt!r}")
                if color[nxt] == WHITE:
                    visit(nxt)
            color[nid] = BLACK

        for nid in self._by_id:
            if color[nid] == WHITE:
                visit(nid)
        leaf_ids = self.leaf_sample_ids()
        if leaf_ids is None:
            raise ConfigError("graph has no leaf view with data")

    def leaf_sample_ids(self) -> tuple[str, ...] | None:
        ids = None
        for node in self.nodes:
            if isinstance(node, ViewNode) and node.data is not None:
                if ids is None:
                    ids = node.data.sample_ids
                elif node.data.sample_ids != ids:
                    raise InputError(
                        "leaf views do not share the same sample ids"
                    )
        return ids


def execute_graph(graph: EnsembleGraph, seed: int) -> AffinityMatrix:
    """Evaluate the graph bottom-up and return the output node's affinity.

    Each ensemble node fuses its child views with its registered fuser; a
    child backed by another ensemble contributes that ensemble's affinity
    converted to a distance matrix. Per-node seeds are derived from the root
    seed and the node id, so results do not depend on evaluation order.
    """
    from .fusion import FUSERS, FusionConfig
    from .hclust import euclidean_distances

    cache: dict[str, AffinityMatrix] = {}

    def eval_ensemble(node: EnsembleNode) -> AffinityMatrix:
        if node.node_id in cache:
            return cache[node.node_id]
        views: list[DistanceMatrix] = []
        methods: list[Method] = []
        for child_id in node.children:
            child = graph.node(child_id)
            assert isinstance(child, ViewNode)
            if child.data is not None:
                views.append(euclidean_distances(child.data))
                methods.append(child.method)
            else:
                source = graph.node(child.source)
                views.append(affinity_to_distance(eval_ensemble(source)))
                methods.append(method_for_derived(child.method))
        try:
            fuse = FUSERS[node.fuser]
        except KeyError:
            raise ConfigError(f"unknown fuser id {node.fuser!r}") from None
        cfg = FusionConfig(
            iterations=node.iterations,
            seed=derive_seed(seed, "node", node.node_id),
        )
        result = fuse(views, cfg, methods=methods)
        cache[node.node_id] = result
        return result

    return eval_ensemble(graph.node(graph.output))
