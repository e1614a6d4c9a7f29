import math

import pytest
from hypothesis import given, strategies as st

from cangroth.partitions import (
    Partition,
    SkewShape,
    conjugate,
    contains,
    corner_removals,
    intersection,
    maya,
    parse_partition,
    partitions_in_box,
    partitions_of,
    subsets,
    supersets,
)

partitions = st.lists(st.integers(1, 6), max_size=6).map(lambda xs: Partition(sorted(xs, reverse=True)))


def cells_transposed(lam):
    return sorted((j, i) for i, j in Partition(lam).cells())


def test_partition_drops_trailing_zeros():
    assert Partition((2, 1, 0, 0)) == Partition((2, 1))
    assert Partition((2, 1)).padded(4) == (2, 1, 0, 0)
    assert Partition((2,)).part(5) == 0


@pytest.mark.parametrize("bad", [(1, 2), (2, -1)])
def test_partition_rejects_bad_parts(bad):
    with pytest.raises(ValueError):
        Partition(bad)


def test_parse_partition_forms():
    assert parse_partition("3,1") == Partition((3, 1))
    assert parse_partition("[3,1]") == Partition((3, 1))
    assert parse_partition("") == Partition()
    with pytest.raises(ValueError, match="entry 1"):
        parse_partition("3,x")


def test_conjugate_examples():
    assert conjugate(Partition((5, 4, 3, 2, 1))) == Partition((5, 4, 3, 2, 1))
    assert conjugate(Partition()) == Partition()
    assert conjugate(Partition((3, 1))) == Partition((2, 1, 1))


@given(partitions)
def test_conjugate_is_transpose_of_cells(lam):
    assert sorted(conjugate(lam).cells()) == cells_transposed(lam)


@given(partitions)
def test_conjugate_involution_and_size(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size() == lam.size()


def test_contains_examples():
    assert contains(Partition((2, 2)), Partition((1,)))
    assert not contains(Partition((1,)), Partition((2,)))
    assert contains(Partition((2, 1)), Partition((2, 1)))


@given(partitions, partitions)
def test_intersection_is_largest_common_subshape(lam, mu):
    nu = intersection(lam, mu)
    assert contains(lam, nu) and contains(mu, nu)
    assert set(nu.cells()) == set(lam.cells()) & set(mu.cells())


def test_skew_cells():
    assert SkewShape(Partition((2, 1)), Partition((1,))).cells() == [(1, 2), (2, 1)]
    # outer not containing inner: the overhanging rows contribute nothing
    assert SkewShape(Partition((1,)), Partition((2,))).cells() == []


def test_corner_removals_examples():
    assert corner_removals(Partition((1,))) == [(Partition((1,)), frozenset()), (Partition(), frozenset({(1, 1)}))]
    assert corner_removals(Partition()) == [(Partition(), frozenset())]
    out = corner_removals(Partition((2, 1)))
    assert len(out) == 4
    assert set().union(*(cells for _, cells in out)) == {(1, 2), (2, 1)}


@given(partitions)
def test_corner_removals_count_and_containment(mu):
    out = corner_removals(mu)
    assert len(out) == 2 ** len(mu.corners())
    for nu, cells in out:
        assert contains(mu, nu)
        assert set(mu.cells()) - set(nu.cells()) == set(cells)


@pytest.mark.parametrize("rows,cols", [(0, 3), (2, 2), (3, 3), (2, 3)])
def test_box_count_is_binomial(rows, cols):
    assert len(partitions_in_box(rows, cols)) == math.comb(rows + cols, rows)


def test_partitions_of_counts():
    assert [len(list(partitions_of(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


@given(partitions)
def test_subsets_are_all_contained_shapes(lam):
    box = partitions_in_box(len(lam), lam.part(0))
    assert subsets(lam) == [p for p in box if contains(lam, p)]


def test_supersets_bounded_by_size():
    out = supersets(Partition((1,)), 3)
    assert sorted(out) == sorted(Partition(p) for p in [(1,), (1, 1), (2,), (1, 1, 1), (2, 1), (3,)])


def test_maya_examples():
    assert maya(Partition(), 0, (-4, 4)).positions() == [-1, -2, -3, -4]
    assert maya(Partition((1,)), 0, (-4, 4)).positions() == [0, -2, -3, -4]


def test_maya_window_too_small():
    with pytest.raises(ValueError):
        maya(Partition((5,)), 0, (-4, 4))


@pytest.mark.parametrize("lam", partitions_in_box(4, 4))
def test_maya_conjugation_law(lam):
    # the 01-sequence of the conjugate is the reversed sequence with bits swapped
    m = maya(lam, 0, (-5, 5))
    assert m.reflect() == maya(conjugate(lam), 0, (-5, 5))
    assert m.partition() == lam and m.charge() == 0
