import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvec.core import DistanceMatrix, Labeling, Method, ViewMatrix
from mvec.errors import InputError, ParseError
from mvec.hclust import euclidean_distances
from mvec.metrics import (
    SurvivalRecord,
    ari,
    best_k,
    load_survival_csv,
    logrank_test,
    nmi,
    silhouette,
    survival_records,
)

from helpers import blob_view, random_labels, sample_ids
from oracles import counter_nmi, loop_silhouette, pair_count_ari


def labeling(raw) -> Labeling:
    return Labeling.from_assignments(sample_ids(len(raw)), raw)


def line_distance(points_1d) -> DistanceMatrix:
    x = np.asarray(points_1d, dtype=float)
    return DistanceMatrix(sample_ids(len(x)), np.abs(x[:, None] - x[None, :]))


# ---------------------------------------------------------------------------
# silhouette
# ---------------------------------------------------------------------------


def test_silhouette_hand_value():
    d = line_distance([0.0, 1.0, 5.0, 6.0])
    got = silhouette(d, labeling([0, 0, 1, 1]))
    # per sample: 1 - 1/((5+6)/2) = 9/11, twice by symmetry, and the
    # mirrored pair gives the same, so the mean is (9/11 + 7/9) avg
    assert got == pytest.approx(0.79798, abs=1e-5)


def test_silhouette_perfect_separation():
    d = line_distance([0.0, 0.0, 100.0, 100.0])
    assert silhouette(d, labeling([0, 0, 1, 1])) == 1.0


def test_silhouette_zero_when_neighbors_tie():
    d = line_distance([0.0, 1.0, 1.0, 2.0])
    # sample 1's own-cluster mate and nearest rival are equidistant
    assert silhouette(d, labeling([0, 0, 1, 1])) == pytest.approx(
        loop_silhouette(d.values, [0, 0, 1, 1])
    )


def test_silhouette_singletons_score_zero():
    d = line_distance([0.0, 1.0, 50.0])
    got = silhouette(d, labeling([0, 0, 1]))
    assert got == pytest.approx(loop_silhouette(d.values, [0, 0, 1]))


def test_silhouette_scale_invariant():
    d = line_distance([0.0, 1.0, 5.0, 6.0])
    scaled = DistanceMatrix(d.sample_ids, d.values * 37.0)
    lab = labeling([0, 0, 1, 1])
    assert silhouette(d, lab) == silhouette(scaled, lab)


def test_silhouette_validates_inputs():
    d = line_distance([0.0, 1.0, 2.0])
    with pytest.raises(InputError):
        silhouette(d, labeling([0, 0, 0]))
    other = Labeling.from_assignments(("x", "y", "z"), [0, 0, 1])
    with pytest.raises(InputError):
        silhouette(d, other)


@given(st.integers(0, 2**32 - 1), st.integers(4, 20))
@settings(max_examples=40, deadline=None)
def test_silhouette_matches_loop_reference(seed, n):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(n, 3))
    labels = rng.integers(0, 3, size=n)
    if len(set(labels.tolist())) < 2:
        labels[0] = (labels[0] + 1) % 3
    d = euclidean_distances(ViewMatrix(sample_ids(n), pts))
    got = silhouette(d, labeling(labels))
    assert got == pytest.approx(loop_silhouette(d.values, labels), abs=1e-12)


# ---------------------------------------------------------------------------
# best_k
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("planted", [2, 3])
def test_best_k_recovers_blob_count(planted):
    for seed in range(5):
        d = euclidean_distances(blob_view(seed, planted))
        assert best_k(d, Method.AVERAGE, 10) == planted


def test_best_k_single_candidate():
    d = line_distance([0.0, 1.0, 5.0])
    assert best_k(d, Method.AVERAGE, 2) == 2


def test_best_k_validates_range():
    d = line_distance([0.0, 1.0, 5.0])
    with pytest.raises(InputError):
        best_k(d, Method.AVERAGE, 1)
    with pytest.raises(InputError):
        best_k(d, Method.AVERAGE, 3)


# ---------------------------------------------------------------------------
# ari / nmi
# ---------------------------------------------------------------------------


def test_ari_hand_value_is_exact():
    assert ari(labeling([0, 0, 1, 1]), labeling([0, 1, 0, 1])) == -0.5


def test_ari_identity_and_renaming():
    a = labeling([0, 0, 1, 2])
    assert ari(a, a) == 1.0
    assert ari(a, labeling([2, 2, 0, 1])) == 1.0


def test_ari_length_mismatch():
    with pytest.raises(InputError):
        ari(labeling([0, 1]), labeling([0, 1, 0]))


def test_nmi_hand_values():
    assert nmi(labeling([0, 0, 1, 1]), labeling([0, 1, 0, 1])) == 0.0
    a = labeling([0, 0, 1, 1])
    assert nmi(a, a) == 1.0
    assert nmi(a, labeling([0, 0, 0, 0])) == 0.0
    both_flat = labeling([0, 0, 0])
    assert nmi(both_flat, both_flat) == 1.0


def test_nmi_rejects_unknown_average():
    a = labeling([0, 1])
    with pytest.raises(InputError):
        nmi(a, a, average="median")


@given(st.integers(0, 2**32 - 1), st.integers(2, 30))
@settings(max_examples=60, deadline=None)
def test_pair_metrics_match_reference_and_are_symmetric(seed, n):
    rng = np.random.default_rng(seed)
    la = rng.integers(0, 4, size=n)
    lb = rng.integers(0, 3, size=n)
    a, b = labeling(la), labeling(lb)
    assert ari(a, b) == pytest.approx(pair_count_ari(la, lb), abs=1e-12)
    assert ari(a, b) == ari(b, a)
    for avg in ("arithmetic", "geometric", "min", "max"):
        assert nmi(a, b, avg) == pytest.approx(counter_nmi(la, lb, avg), abs=1e-12)
        # symmetric up to summation order of the mutual-information terms
        assert nmi(a, b, avg) == pytest.approx(nmi(b, a, avg), abs=1e-12)
    assert ari(a, b) <= 1.0
    assert 0.0 <= nmi(a, b) <= 1.0


# ---------------------------------------------------------------------------
# log-rank
# ---------------------------------------------------------------------------


def test_logrank_hand_value():
    records = [
        SurvivalRecord(1.0, True, 0),
        SurvivalRecord(2.0, True, 1),
    ]
    chi2, p = logrank_test(records)
    assert chi2 == pytest.approx(1.0, abs=1e-12)
    assert p == pytest.approx(0.3173, abs=1e-4)


def test_logrank_identical_groups():
    records = [
        SurvivalRecord(t, e, g)
        for g in (0, 1)
        for t, e in ((1.0, True), (2.0, False), (3.0, True))
    ]
    chi2, p = logrank_test(records)
    assert chi2 == pytest.approx(0.0, abs=1e-12)
    assert p == pytest.approx(1.0, abs=1e-12)


def test_logrank_without_events():
    records = [SurvivalRecord(1.0, False, 0), SurvivalRecord(2.0, False, 1)]
    assert logrank_test(records) == (0.0, 1.0)


def test_logrank_censored_group_bounds():
    records = [
        SurvivalRecord(1.0, True, 0),
        SurvivalRecord(2.0, True, 0),
        SurvivalRecord(1.5, False, 1),
        SurvivalRecord(2.5, False, 1),
    ]
    chi2, p = logrank_test(records)
    assert chi2 >= 0.0
    assert 0.0 < p <= 1.0


def test_logrank_needs_two_groups():
    with pytest.raises(InputError):
        logrank_test([SurvivalRecord(1.0, True, 0)])


def test_logrank_three_groups_runs():
    rng = np.random.default_rng(0)
    records = [
        SurvivalRecord(float(t), True, g)
        for g, t in zip(rng.integers(0, 3, size=30), rng.exponential(5.0, 30))
    ]
    chi2, p = logrank_test(records)
    assert chi2 >= 0.0 and 0.0 < p <= 1.0


def test_survival_record_validates_time():
    with pytest.raises(InputError):
        SurvivalRecord(-1.0, True, 0)
    with pytest.raises(InputError):
        SurvivalRecord(math.nan, True, 0)


# ---------------------------------------------------------------------------
# survival csv
# ---------------------------------------------------------------------------


def test_survival_csv_roundtrip(tmp_path):
    path = tmp_path / "survival.csv"
    path.write_text("sample_id,time,event\na,1.5,1\nb,2.0,0\nc,3.0,true\n")
    table = load_survival_csv(path)
    assert table == {"a": (1.5, True), "b": (2.0, False), "c": (3.0, True)}


def test_survival_csv_errors(tmp_path):
    bad_header = tmp_path / "h.csv"
    bad_header.write_text("id,time,event\na,1,1\n")
    with pytest.raises(ParseError):
        load_survival_csv(bad_header)
    dup = tmp_path / "d.csv"
    dup.write_text("sample_id,time,event\na,1,1\na,2,0\n")
    with pytest.raises(ParseError, match="duplicate"):
        load_survival_csv(dup)
    bad_event = tmp_path / "e.csv"
    bad_event.write_text("sample_id,time,event\na,1,yes\n")
    with pytest.raises(ParseError, match="event"):
        load_survival_csv(bad_event)
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ParseError):
        load_survival_csv(empty)


def test_survival_records_join():
    lab = labeling([0, 1])
    table = {"s000": (1.0, True), "s001": (2.0, False)}
    records = survival_records(lab, table)
    assert [(r.time, r.event, r.group) for r in records] == [
        (1.0, True, 0),
        (2.0, False, 1),
    ]
    with pytest.raises(InputError):
        survival_records(lab, {"s000": (1.0, True)})
