"""Data preparation: CSV ingestion, missing-value filtering, k-NN
imputation, variance-based feature selection, and z-scoring."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .core import ViewMatrix
from .errors import DegenerateDataError, InputError, ParseError

MISSING_TOKENS = ("", "NA")


@dataclass(frozen=True)
class RawViewMatrix:
    """A samples-by-features table that may still contain missing entries
    (stored as NaN)."""

    sample_ids: tuple[str, ...]
    feature_ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "sample_ids", tuple(self.sample_ids))
        object.__setattr__(self, "feature_ids", tuple(self.feature_ids))
        if values.ndim != 2:
            raise InputError("raw view values must be 2-dimensional")
        n, p = values.shape
        if len(self.sample_ids) != n:
            raise InputError(f"{len(self.sample_ids)} sample ids for {n} rows")
        if len(self.feature_ids) != p:
            raise InputError(f"{len(self.feature_ids)} feature ids for {p} columns")
        for ids, kind in ((self.sample_ids, "sample"), (self.feature_ids, "feature")):
            seen = set()
            for name in ids:
                if name in seen:
                    raise InputError(f"duplicate {kind} id {name!r}")
                seen.add(name)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    @property
    def missing(self) -> np.ndarray:
        return np.isnan(self.values)


def load_csv(path, has_header: bool = True) -> RawViewMatrix:
    """Read a comma-separated view; first column is the sample id.

    Empty cells and "NA" count as missing. Rows must all have the same
    width; violations are reported with their line number.
    """
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise ParseError(f"{path}: empty file")
    if has_header:
        header, data = rows[0], rows[1:]
        feature_ids = tuple(name.strip() for name in header[1:])
        first_data_line = 2
    else:
        data = rows
        feature_ids = None
        first_data_line = 1
    if not data:
        raise ParseError(f"{path}: no data rows")
    width = len(data[0])
    if width < 2:
        raise ParseError(f"{path}: rows need a sample id and at least one value")
    if feature_ids is None:
        feature_ids = tuple(f"f{j}" for j in range(width - 1))
    elif len(feature_ids) != width - 1:
        raise ParseError(
            f"{path}:1: header has {len(feature_ids) + 1} columns, "
            f"data rows have {width}"
        )
    sample_ids = []
    values = np.empty((len(data), width - 1))
    for offset, row in enumerate(data):
        lineno = first_data_line + offset
        if len(row) != width:
            raise ParseError(
                f"{path}:{lineno}: expected {width} columns, found {len(row)}"
            )
        sample_ids.append(row[0].strip())
        for j, cell in enumerate(row[1:]):
            token = cell.strip()
            if token in MISSING_TOKENS:
                values[offset, j] = np.nan
            else:
                try:
                    values[offset, j] = float(token)
                except ValueError as exc:
                    raise ParseError(
                        f"{path}:{lineno}: cannot parse {cell!r} as a number"
                    ) from exc
    seen = set()
    for name in sample_ids:
        if name in seen:
            raise ParseError(f"{path}: duplicate sample id {name!r}")
        seen.add(name)
    return RawViewMatrix(tuple(sample_ids), feature_ids, values)


def filter_missing(m: RawViewMatrix, max_frac: float = 0.2) -> RawViewMatrix:
    """Drop samples, then features, missing in more than `max_frac` of
    their entries (strict inequality; feature fractions are recomputed
    after the sample drop)."""
    if not 0.0 <= max_frac <= 1.0:
        raise InputError(f"max_frac must be in [0, 1], got {max_frac}")
    missing = m.missing
    keep_rows = missing.mean(axis=1) <= max_frac
    if not keep_rows.any():
        raise DegenerateDataError("every sample exceeds the missing-value threshold")
    reduced = missing[keep_rows]
    keep_cols = reduced.mean(axis=0) <= max_frac
    if not keep_cols.any():
        raise DegenerateDataError("every feature exceeds the missing-value threshold")
    return RawViewMatrix(
        tuple(s for s, keep in zip(m.sample_ids, keep_rows) if keep),
        tuple(f for f, keep in zip(m.feature_ids, keep_cols) if keep),
        m.values[np.ix_(keep_rows, keep_cols)],
    )


def _mutual_distances(values: np.ndarray) -> np.ndarray:
    """Pairwise Euclidean row distances restricted to coordinates observed
    in both rows; inf when two rows share no observed coordinate."""
    observed = ~np.isnan(values)
    filled = np.where(observed, values, 0.0)
    sq = filled**2
    cross = filled @ filled.T
    own = sq @ observed.T
    d2 = own + own.T - 2.0 * cross
    np.maximum(d2, 0.0, out=d2)
    shared = observed @ observed.T
    d2[shared == 0] = np.inf
    return np.sqrt(d2)


def knn_impute(m: RawViewMatrix, k: int = 5) -> ViewMatrix:
    """Fill each missing cell with the mean of that feature over the k
    nearest samples observed there, by Euclidean distance on mutually
    observed coordinates. A feature observed nowhere is degenerate.
    """
    if not 1 <= k < m.n:
        raise InputError(f"k must be in [1, {m.n - 1}], got {k}")
    missing = m.missing
    values = m.values.copy()
    if missing.any():
        distances = _mutual_distances(m.values)
        for j in range(m.p):
            holes = np.nonzero(missing[:, j])[0]
            if holes.size == 0:
                continue
            donors = np.nonzero(~missing[:, j])[0]
            if donors.size == 0:
                raise DegenerateDataError(
                    f"feature {m.feature_ids[j]!r} has no observed values"
                )
            for i in holes:
                order = donors[np.argsort(distances[i, donors], kind="stable")]
                values[i, j] = m.values[order[:k], j].mean()
    return ViewMatrix(m.sample_ids, values, feature_ids=m.feature_ids)


def top_variance_select(m: ViewMatrix, n_keep: int = 5000) -> ViewMatrix:
    """Keep the n_keep features of largest sample variance (n-1
    denominator), in their original column order; ties favor earlier
    columns."""
    if n_keep < 1:
        raise InputError(f"n_keep must be >= 1, got {n_keep}")
    if n_keep >= m.p:
        return m
    variances = m.values.var(axis=0, ddof=1)
    ranked = np.argsort(-variances, kind="stable")
    keep = np.sort(ranked[:n_keep])
    feature_ids = None
    if m.feature_ids is not None:
        feature_ids = tuple(m.feature_ids[int(j)] for j in keep)
    return ViewMatrix(m.sample_ids, m.values[:, keep], feature_ids=feature_ids)


def zscore_normalize(m: ViewMatrix) -> ViewMatrix:
    """Center every feature and scale to unit sample standard deviation;
    zero-variance features are centered only."""
    mean = m.values.mean(axis=0)
    sd = m.values.std(axis=0, ddof=1)
    scale = np.where(sd > 0, sd, 1.0)
    return ViewMatrix(
        m.sample_ids, (m.values - mean) / scale, feature_ids=m.feature_ids
    )
