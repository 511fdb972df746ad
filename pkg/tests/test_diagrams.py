from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_addable, brute_removable, partition_count, plane_partitions
from yk.diagrams import (Box, DiagramError, GrowthPath, Partition2D, PlanePartition, addable_boxes,
                         all_paths, axis_permutations, canonical_path, enumerate_pp, format_shape,
                         h_weight, parse_shape, removable_boxes, transform)
from yk.scalar import ZERO, h1, h2, h3

ONE_BOX = PlanePartition(((1,),))


def test_enumerate_small():
    assert list(enumerate_pp(0, 1)) == [PlanePartition(())]
    assert len(enumerate_pp(2, 1)) == 2
    assert len(enumerate_pp(2, 2)) == 3


@pytest.mark.parametrize("d", range(8))
def test_partition_counts(d):
    assert len(enumerate_pp(d, 1)) == partition_count(d)


@pytest.mark.parametrize("d", range(6))
@pytest.mark.parametrize("N", [1, 2, 3, None])
def test_enumeration_matches_brute_force(d, N):
    got = sorted(p.heights for p in enumerate_pp(d, N))
    assert got == sorted(plane_partitions(d, N))
    assert len(set(got)) == len(got)


def test_enumeration_deterministic():
    assert enumerate_pp(5, 3) == enumerate_pp(5, 3)
    assert enumerate_pp.__wrapped__(5, 3) == enumerate_pp(5, 3)


def test_addable_examples():
    empty = PlanePartition(())
    assert addable_boxes(empty) == [Box(0, 0, 0)]
    assert removable_boxes(empty) == []
    assert set(addable_boxes(ONE_BOX, 1)) == {Box(1, 0, 0), Box(0, 1, 0)}
    assert set(addable_boxes(ONE_BOX, 2)) == {Box(1, 0, 0), Box(0, 1, 0), Box(0, 0, 1)}


@pytest.mark.parametrize("d", range(6))
def test_addable_removable_brute_force(d):
    for N in (1, 2, None):
        for pi in enumerate_pp(d, N):
            assert set(addable_boxes(pi, N)) == brute_addable(pi.heights, N)
            assert set(removable_boxes(pi)) == brute_removable(pi.heights)


def test_h_weight():
    assert h_weight(Box(0, 0, 0)) == ZERO
    assert h_weight(Box(0, 1, 0)) == h1
    assert h_weight(Box(1, 0, 0)) == h2
    assert h_weight(Box(0, 0, 1)) == h3


def test_canonical_path_examples():
    p21 = Partition2D((2, 1)).to_plane()
    assert tuple(canonical_path(p21)) == (Box(0, 0, 0), Box(0, 1, 0), Box(1, 0, 0))
    # it passes through the row (2)
    assert GrowthPath(canonical_path(p21)[:2]).shape() == Partition2D((2,)).to_plane()
    assert tuple(canonical_path(PlanePartition(((2,),)))) == (Box(0, 0, 0), Box(0, 0, 1))
    assert tuple(canonical_path(PlanePartition(()))) == ()


@pytest.mark.parametrize("d", range(7))
def test_canonical_prefixes_valid(d):
    for pi in enumerate_pp(d, 3):
        path = canonical_path(pi)
        for k in range(len(path) + 1):
            PlanePartition.from_boxes(path[:k])  # raises if invalid
        assert GrowthPath(path).shape() == pi


def test_growth_path_rejects_invalid_prefix():
    with pytest.raises(DiagramError):
        GrowthPath([Box(0, 1, 0)])
    with pytest.raises(DiagramError):
        GrowthPath([Box(0, 0, 0), Box(0, 0, 0)])


def test_all_paths_count():
    # standard Young tableaux of (2,1): 2; of (3,2): 5
    assert len(list(all_paths(Partition2D((2, 1)).to_plane()))) == 2
    assert len(list(all_paths(Partition2D((3, 2)).to_plane()))) == 5


def test_transform_examples():
    row = Partition2D((2,)).to_plane()
    assert transform(row, "xy") == Partition2D((1, 1)).to_plane()
    # the column (1,1) becomes a height-2 stack, which one layer cannot hold
    with pytest.raises(DiagramError):
        transform(Partition2D((1, 1)).to_plane(), "xz", 1)
    assert transform(PlanePartition(((2,),)), "xz", 1) == Partition2D((1, 1)).to_plane()
    pi = PlanePartition(((3, 1), (2,)))
    assert transform(pi, "id") == pi


_SWAP = {"xy": {h1: h2, h2: h1, h3: h3}, "xz": {h1: h1, h2: h3, h3: h2},
         "yz": {h1: h3, h3: h1, h2: h2}}


def _weights(pi):
    return Counter(str(h_weight(b)) for b in pi.boxes())


@pytest.mark.parametrize("d", range(6))
@pytest.mark.parametrize("perm", ["xy", "xz", "yz"])
def test_transform_involution_and_weights(d, perm):
    for pi in enumerate_pp(d):
        t = transform(pi, perm)
        assert transform(t, perm) == pi
        assert t.size == pi.size
        # weights permute with the matching permutation of (h1, h2, h3)
        sw = _SWAP[perm]
        mapped = Counter()
        for b in pi.boxes():
            x, y, z = b
            mapped[str(y * sw[h1] + x * sw[h2] + z * sw[h3])] += 1
        assert mapped == _weights(t)


def test_axis_permutations_are_six():
    assert len(axis_permutations()) == 6


def test_shape_text():
    assert format_shape(Partition2D((3, 1)).to_plane()) == "3,1"
    assert format_shape(PlanePartition(((2,),))) == "2;"
    assert format_shape(PlanePartition(((2, 1), (1,)))) == "2,1;1"
    assert parse_shape("3,1") == Partition2D((3, 1)).to_plane()
    assert parse_shape("2;") == PlanePartition(((2,),))
    assert parse_shape("2", three_d=True) == PlanePartition(((2,),))
    assert parse_shape("0") == PlanePartition(())
    for bad in ("1,2", "2,x", "1;2", "1;;1"):
        with pytest.raises((DiagramError, ValueError)):
            parse_shape(bad)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 6), st.integers(1, 3), st.data())
def test_shape_text_round_trip(d, N, data):
    pi = data.draw(st.sampled_from(enumerate_pp(d, N)))
    assert parse_shape(format_shape(pi)) == pi


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.data())
def test_add_remove_inverse(d, data):
    pi = data.draw(st.sampled_from(enumerate_pp(d, 3)))
    for b in addable_boxes(pi, 3):
        assert pi.add(b).remove(b) == pi
        assert b in removable_boxes(pi.add(b))
    for b in removable_boxes(pi):
        assert pi.remove(b).add(b) == pi


def test_invalid_heights_rejected():
    with pytest.raises(DiagramError):
        PlanePartition(((1, 2),))
    with pytest.raises(DiagramError):
        PlanePartition(((1,), (2,)))
    with pytest.raises(DiagramError):
        PlanePartition(((2,),), max_height=1)
