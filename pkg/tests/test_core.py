import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvec.core import (
    AffinityMatrix,
    DistanceMatrix,
    EnsembleGraph,
    EnsembleNode,
    Labeling,
    Method,
    ViewMatrix,
    ViewNode,
    affinity_to_distance,
    distance_to_affinity,
    method_for_derived,
)
from mvec.errors import ConfigError, InputError
from mvec.seeding import derive_seed, rng_for

from helpers import random_view, sample_ids


def test_method_declaration_order():
    assert tuple(m.value for m in Method) == (
        "single",
        "complete",
        "average",
        "weighted",
        "centroid",
        "median",
        "ward_d",
        "ward_d2",
    )
    assert [m.index for m in Method] == list(range(8))


def test_method_parse():
    assert Method.parse("ward_d2") is Method.WARD_D2
    with pytest.raises(ConfigError):
        Method.parse("ward.D2")


def test_ward_family_falls_back_to_average_on_derived_matrices():
    assert method_for_derived(Method.WARD_D) is Method.AVERAGE
    assert method_for_derived(Method.WARD_D2) is Method.AVERAGE
    for m in Method:
        if m not in (Method.WARD_D, Method.WARD_D2):
            assert method_for_derived(m) is m


def test_view_matrix_validates():
    ids = sample_ids(3)
    with pytest.raises(InputError):
        ViewMatrix(("a", "a", "b"), np.zeros((3, 2)))
    with pytest.raises(InputError):
        ViewMatrix(ids, np.array([[1.0, np.nan], [0, 0], [0, 0]]))
    with pytest.raises(InputError):
        ViewMatrix(ids[:1], np.zeros((1, 2)))
    with pytest.raises(InputError):
        ViewMatrix(ids, np.zeros((3, 2)), feature_ids=("only_one",))


def test_view_matrix_take_reorders_rows():
    v = random_view(0, 5, 2)
    sub = v.take([4, 1])
    assert sub.sample_ids == (v.sample_ids[4], v.sample_ids[1])
    assert np.array_equal(sub.values, v.values[[4, 1]])


def test_view_matrix_values_are_frozen():
    v = random_view(0, 4, 2)
    with pytest.raises(ValueError):
        v.values[0, 0] = 9.0


def test_distance_matrix_validates():
    ids = sample_ids(2)
    with pytest.raises(InputError):
        DistanceMatrix(ids, np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(InputError):
        DistanceMatrix(ids, np.array([[0.0, -1.0], [-1.0, 0.0]]))
    with pytest.raises(InputError):
        DistanceMatrix(ids, np.array([[0.5, 1.0], [1.0, 0.0]]))


def test_affinity_matrix_validates():
    ids = sample_ids(2)
    with pytest.raises(InputError):
        AffinityMatrix(ids, np.array([[1.0, 1.5], [1.5, 1.0]]))
    with pytest.raises(InputError):
        AffinityMatrix(ids, np.array([[0.9, 0.2], [0.2, 1.0]]))


def test_affinity_distance_roundtrip():
    ids = sample_ids(3)
    a = AffinityMatrix(
        ids, np.array([[1.0, 0.25, 0.0], [0.25, 1.0, 0.5], [0.0, 0.5, 1.0]])
    )
    d = affinity_to_distance(a)
    assert np.array_equal(d.values, 1.0 - a.values)
    back = distance_to_affinity(d)
    assert np.array_equal(back.values, a.values)


def test_distance_to_affinity_rejects_large_entries():
    ids = sample_ids(2)
    d = DistanceMatrix(ids, np.array([[0.0, 2.0], [2.0, 0.0]]))
    with pytest.raises(InputError):
        distance_to_affinity(d)


def test_labeling_requires_contiguous_labels():
    ids = sample_ids(3)
    with pytest.raises(InputError):
        Labeling(ids, np.array([0, 2, 2]))
    with pytest.raises(InputError):
        Labeling(ids, np.array([1, 1, 2]))


def test_labeling_from_assignments_canonicalizes():
    lab = Labeling.from_assignments(sample_ids(4), ["b", "b", "a", "c"])
    assert lab.labels.tolist() == [0, 0, 1, 2]
    assert lab.k == 3


@given(st.lists(st.integers(0, 5), min_size=1, max_size=30))
def test_labeling_from_assignments_accepts_any_ints(raw):
    lab = Labeling.from_assignments(sample_ids(len(raw)), raw)
    assert sorted(set(lab.labels.tolist())) == list(range(lab.k))
    # equal raw values stay equal, distinct stay distinct
    for i in range(len(raw)):
        for j in range(i + 1, len(raw)):
            assert (raw[i] == raw[j]) == (lab.labels[i] == lab.labels[j])


def test_derive_seed_is_stable_and_path_sensitive():
    assert derive_seed(0, "iter", 0) == derive_seed(0, "iter", 0)
    assert derive_seed(0, "iter", 0) != derive_seed(0, "iter", 1)
    assert derive_seed(0, "iter", 0) != derive_seed(1, "iter", 0)
    assert derive_seed(0, "a") != derive_seed(0, "b")


def test_rng_for_reproduces_streams():
    a = rng_for(7, "x").integers(0, 1000, size=5)
    b = rng_for(7, "x").integers(0, 1000, size=5)
    assert np.array_equal(a, b)


def test_view_node_needs_exactly_one_input():
    v = random_view(0, 3, 2)
    with pytest.raises(ConfigError):
        ViewNode("v", Method.AVERAGE)
    with pytest.raises(ConfigError):
        ViewNode("v", Method.AVERAGE, data=v, source="e")


def test_graph_rejects_missing_and_cyclic_references():
    v = random_view(0, 3, 2)
    leaf = ViewNode("leaf", Method.AVERAGE, data=v)
    with pytest.raises(ConfigError):
        EnsembleGraph((leaf, EnsembleNode("e", ("ghost",))), output="e")
    # a view fed by the ensemble that consumes it
    loop_view = ViewNode("loop", Method.AVERAGE, source="e")
    with pytest.raises(ConfigError):
        EnsembleGraph(
            (leaf, loop_view, EnsembleNode("e", ("leaf", "loop"))), output="e"
        )


def test_graph_output_must_be_ensemble():
    v = random_view(0, 3, 2)
    leaf = ViewNode("leaf", Method.AVERAGE, data=v)
    with pytest.raises(ConfigError):
        EnsembleGraph((leaf, EnsembleNode("e", ("leaf",))), output="leaf")


def test_graph_leaves_must_share_sample_ids():
    a = random_view(0, 3, 2)
    b = ViewMatrix(("x", "y", "z"), np.zeros((3, 2)))
    with pytest.raises(InputError):
        EnsembleGraph(
            (
                ViewNode("a", Method.AVERAGE, data=a),
                ViewNode("b", Method.AVERAGE, data=b),
                EnsembleNode("e", ("a", "b")),
            ),
            output="e",
        )
