"""Internal and external clustering quality measures, plus survival tests."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.special import gammaincc

from .core import DistanceMatrix, Labeling, Method
from .errors import InputError, ParseError
from .hclust import cut_with_ids, linkage


def silhouette(distances: DistanceMatrix, labeling: Labeling) -> float:
    """Mean silhouette width of a labeling over a precomputed distance matrix.

    Members of singleton clusters score 0, as do samples whose own-cluster
    and nearest-other-cluster mean distances are both 0.
    """
    if distances.sample_ids != labeling.sample_ids:
        raise InputError("distance matrix and labeling sample ids differ")
    k = labeling.k
    if k < 2:
        raise InputError("silhouette needs at least 2 clusters")
    d = distances.values
    labels = labeling.labels
    n = len(labels)
    sizes = np.bincount(labels, minlength=k)
    # sums[i, c] = total distance from sample i to the members of cluster c
    sums = np.zeros((n, k))
    for c in range(k):
        sums[:, c] = d[:, labels == c].sum(axis=1)
    own = sizes[labels]
    idx = np.arange(n)
    with np.errstate(invalid="ignore"):
        a = np.where(own > 1, sums[idx, labels] / (own - 1), 0.0)
    mean_other = sums / sizes
    mean_other[idx, labels] = np.inf
    b = mean_other.min(axis=1)
    denom = np.maximum(a, b)
    s = np.where((own > 1) & (denom > 0), (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
    return float(s.mean())


def best_k(distances: DistanceMatrix, method: Method, k_max: int) -> int:
    """Cluster count in [2, k_max] maximizing silhouette under one linkage.

    Cuts one dendrogram at every candidate k; ties go to the smallest k.
    """
    n = distances.n
    if not 2 <= k_max <= n - 1:
        raise InputError(f"k_max must be in [2, {n - 1}], got {k_max}")
    tree = linkage(distances, method)
    best, best_score = None, -np.inf
    for k in range(2, k_max + 1):
        score = silhouette(
            distances, cut_with_ids(tree, k, distances.sample_ids)
        )
        if score > best_score:
            best, best_score = k, score
    return best


def _contingency(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ka = int(a.max()) + 1
    kb = int(b.max()) + 1
    table = np.zeros((ka, kb), dtype=np.int64)
    np.add.at(table, (a, b), 1)
    return table


def _pairs(x) -> int:
    return int((x.astype(np.int64) * (x.astype(np.int64) - 1) // 2).sum())


def ari(a: Labeling, b: Labeling) -> float:
    """Adjusted Rand index between two labelings of the same samples.

    Kept in integer arithmetic until the final division, so rational
    results like -0.5 come out exact.
    """
    if len(a.labels) != len(b.labels):
        raise InputError("labelings have different lengths")
    table = _contingency(a.labels, b.labels)
    n = int(table.sum())
    index = _pairs(table)
    row = _pairs(table.sum(axis=1))
    col = _pairs(table.sum(axis=0))
    total = n * (n - 1) // 2
    # (index - expected) / (max - expected), scaled through by 2 * total
    numerator = 2 * (total * index - row * col)
    denominator = total * (row + col) - 2 * row * col
    if denominator == 0:
        # both partitions all-singleton or both single-cluster: identical
        return 1.0
    return numerator / denominator


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def nmi(a: Labeling, b: Labeling, average: str = "arithmetic") -> float:
    """Normalized mutual information between two labelings.

    `average` picks the normalizer: "arithmetic" (default), "geometric",
    "min", or "max" of the two marginal entropies.
    """
    if len(a.labels) != len(b.labels):
        raise InputError("labelings have different lengths")
    table = _contingency(a.labels, b.labels)
    n = int(table.sum())
    row = table.sum(axis=1)
    col = table.sum(axis=0)
    h_a = _entropy(row, n)
    h_b = _entropy(col, n)
    if h_a == 0.0 and h_b == 0.0:
        return 1.0
    if h_a == 0.0 or h_b == 0.0:
        return 0.0
    nz = table > 0
    nij = table[nz].astype(float)
    outer = np.outer(row, col)[nz].astype(float)
    mi = float((nij / n * np.log(n * nij / outer)).sum())
    if average == "arithmetic":
        norm = (h_a + h_b) / 2.0
    elif average == "geometric":
        norm = float(np.sqrt(h_a * h_b))
    elif average == "min":
        norm = min(h_a, h_b)
    elif average == "max":
        norm = max(h_a, h_b)
    else:
        raise InputError(f"unknown nmi average {average!r}")
    return float(np.clip(mi / norm, 0.0, 1.0))


@dataclass(frozen=True)
class SurvivalRecord:
    time: float
    event: bool
    group: int

    def __post_init__(self):
        if not np.isfinite(self.time) or self.time < 0:
            raise InputError(f"survival time must be finite and >= 0, got {self.time}")


def logrank_test(records: Sequence[SurvivalRecord]) -> tuple[float, float]:
    """Log-rank test across the groups present in `records`.

    Returns (chi-squared statistic, p-value) with G - 1 degrees of freedom
    for G groups, using the hypergeometric variance at each distinct event
    time. With no events at all the statistic is 0 and p is 1.
    """
    groups = sorted({r.group for r in records})
    g = len(groups)
    if g < 2:
        raise InputError("log-rank test needs at least 2 groups")
    index = {label: i for i, label in enumerate(groups)}
    times = np.array([r.time for r in records])
    events = np.array([r.event for r in records], dtype=bool)
    gidx = np.array([index[r.group] for r in records])
    if not events.any():
        return 0.0, 1.0
    observed = np.zeros(g)
    expected = np.zeros(g)
    variance = np.zeros((g, g))
    for t in np.unique(times[events]):
        at_risk = times >= t
        n_t = int(at_risk.sum())
        dying = events & (times == t)
        d_t = int(dying.sum())
        n_per_group = np.bincount(gidx[at_risk], minlength=g)
        observed += np.bincount(gidx[dying], minlength=g)
        share = n_per_group / n_t
        expected += d_t * share
        if n_t > 1:
            scale = d_t * (n_t - d_t) / (n_t - 1)
            variance += scale * (np.diag(share) - np.outer(share, share))
    u = (observed - expected)[: g - 1]
    v = variance[: g - 1, : g - 1]
    chi2 = float(u @ np.linalg.pinv(v) @ u)
    chi2 = max(chi2, 0.0)
    p = float(gammaincc((g - 1) / 2.0, chi2 / 2.0))
    return chi2, p


def load_survival_csv(path) -> dict[str, tuple[float, bool]]:
    """Read sample_id,time,event rows into {id: (time, event)}.

    The event column accepts 0/1, true/false (any case). A header row is
    required.
    """
    table: dict[str, tuple[float, bool]] = {}
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ParseError(f"{path}: empty survival file")
        wanted = [h.strip().lower() for h in header]
        try:
            id_col = wanted.index("sample_id")
            time_col = wanted.index("time")
            event_col = wanted.index("event")
        except ValueError as exc:
            raise ParseError(
                f"{path}: header must contain sample_id, time, event"
            ) from exc
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            sample = row[id_col].strip()
            if sample in table:
                raise ParseError(f"{path}:{lineno}: duplicate sample id {sample!r}")
            try:
                time = float(row[time_col])
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: bad time {row[time_col]!r}") from exc
            raw_event = row[event_col].strip().lower()
            if raw_event in ("1", "true"):
                event = True
            elif raw_event in ("0", "false"):
                event = False
            else:
                raise ParseError(f"{path}:{lineno}: bad event flag {row[event_col]!r}")
            table[sample] = (time, event)
    if not table:
        raise ParseError(f"{path}: no survival rows")
    return table


def survival_records(
    labeling: Labeling, survival: Mapping[str, tuple[float, bool]]
) -> list[SurvivalRecord]:
    """Join cluster assignments with survival outcomes by sample id."""
    records = []
    for sample, label in zip(labeling.sample_ids, labeling.labels):
        if sample not in survival:
            raise InputError(f"no survival data for sample {sample!r}")
        time, event = survival[sample]
        records.append(SurvivalRecord(time=time, event=event, group=int(label)))
    return records
