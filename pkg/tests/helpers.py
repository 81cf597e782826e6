"""Synthetic data generators shared across the test modules.

All generators are pure functions of their seed so every test is
reproducible in isolation.
"""

from __future__ import annotations

import numpy as np

from mvec.core import Labeling, ViewMatrix
from mvec.preprocess import RawViewMatrix


def sample_ids(n: int) -> tuple[str, ...]:
    return tuple(f"s{i:03d}" for i in range(n))


def random_view(seed: int, n: int, p: int) -> ViewMatrix:
    rng = np.random.default_rng(seed)
    return ViewMatrix(sample_ids(n), rng.normal(size=(n, p)))


def blob_view(seed: int, k: int, n_per: int = 12, shift: float = 8.0) -> ViewMatrix:
    """k tight Gaussian blobs at fixed well-separated centers."""
    rng = np.random.default_rng(seed)
    centers = np.zeros((k, 3))
    for i in range(k):
        centers[i, i % 3] = shift * (1 + i // 3)
    x = np.vstack([rng.normal(size=(n_per, 3)) + centers[i] for i in range(k)])
    return ViewMatrix(sample_ids(k * n_per), x)


def planted_views(
    seed: int, n_per: int = 20, shift: float = 5.0, dims=(6, 4)
) -> tuple[list[ViewMatrix], Labeling]:
    """Multi-view dataset with two planted groups sharing the same split."""
    rng = np.random.default_rng(seed)
    n = n_per * 2
    groups = np.repeat([0, 1], n_per)
    ids = sample_ids(n)
    views = []
    for p in dims:
        x = rng.normal(size=(n, p))
        x[groups == 1, :2] += shift
        views.append(ViewMatrix(ids, x))
    return views, Labeling(ids, groups)


def survival_views(
    seed: int,
    n: int = 100,
    shift: float = 2.5,
    hazard_ratio: float = 3.0,
    missing_rate: float = 0.02,
):
    """Three raw views with two planted groups and matching survival data.

    Group 1 carries a mean shift on a subset of features in every view and
    an exponential event hazard `hazard_ratio` times higher than group 0;
    censoring times are exponential as well. A sprinkle of missing entries
    leaves real work for imputation.

    Returns (raw_views, truth_labeling, times, events).
    """
    rng = np.random.default_rng(seed)
    groups = np.repeat([0, 1], n // 2)
    ids = sample_ids(n)
    views = []
    for p, informative in ((60, 15), (50, 12), (40, 10)):
        x = rng.normal(size=(n, p))
        x[groups == 1, :informative] += shift
        mask = rng.random((n, p)) < missing_rate
        x[mask] = np.nan
        views.append(RawViewMatrix(ids, tuple(f"f{j}" for j in range(p)), x))
    lam = np.where(groups == 1, 0.1 * hazard_ratio, 0.1)
    times = rng.exponential(1.0 / lam)
    censor = rng.exponential(25.0, size=n)
    observed = np.minimum(times, censor)
    events = times <= censor
    return views, Labeling(ids, groups), observed, events


def random_labels(seed: int, n: int, k_hint: int = 4) -> np.ndarray:
    """Arbitrary label vector, not necessarily using every value."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, k_hint, size=n)
