import random

import pytest

from schur_toeplitz.errors import IndexSetError, NegativePartError, PartitionError, ShapeMismatch
from schur_toeplitz.partitions import (
    IndexSet,
    Partition,
    SkewPartition,
    all_index_sets,
    complement,
    complement_closed_form,
    conjugate,
    flip,
    is_contained,
    lr_special,
    minor_shapes,
    partitions_in_box,
    partitions_of,
    skew_pieri,
)


def test_partition_canonical_form():
    assert Partition((5, 5, 3, 0, 0)) == Partition((5, 5, 3))
    assert Partition((5, 3)).part(3) == 0
    assert Partition.rectangle(4, 3) == (4, 4, 4)
    with pytest.raises(PartitionError):
        Partition((1, 2))
    with pytest.raises(NegativePartError):
        Partition((2, -1))


def test_conjugate():
    assert conjugate((5, 3)) == (2, 2, 2, 1, 1)
    assert conjugate(()) == ()
    for lam in partitions_of(7):
        assert conjugate(conjugate(lam)) == lam


def test_containment_and_skew_validity():
    assert is_contained((2, 1), (3, 1))
    assert not is_contained((2, 2), (3, 1))
    assert not SkewPartition.of((1,), (1, 1)).is_valid
    sp = SkewPartition.of((3, 2), (1,))
    assert sp.size == 4
    assert SkewPartition.from_json(sp.to_json()) == sp


def test_flip_example():
    assert flip(SkewPartition.of((6, 6, 3, 1), (3, 2, 2))) == SkewPartition.of((6, 4, 4, 3), (5, 3))


def test_flip_is_an_involution_on_nested_pairs():
    rng = random.Random(3)
    for _ in range(200):
        lam = Partition(sorted((rng.randint(1, 6) for _ in range(rng.randint(1, 4))), reverse=True))
        mu = Partition(sorted((rng.randint(0, x) for x in lam), reverse=True))
        if not is_contained(mu, lam):
            continue
        sp = SkewPartition(lam, mu)
        f = flip(sp)
        # a second flip restores the pair up to columns removed from both shapes
        g = flip(f)
        assert g.size == sp.size
        assert f.is_valid


def test_index_sets():
    s = IndexSet(10, (1, 3, 4, 6, 9, 10))
    assert complement(s) == (2, 5, 7, 8)
    assert complement_closed_form(s) == (2, 5, 7, 8)
    for size in range(5):
        for t in all_index_sets(5, size):
            assert complement_closed_form(t) == complement(t)
    with pytest.raises(IndexSetError):
        IndexSet(3, (2, 2))
    with pytest.raises(IndexSetError):
        IndexSet(3, (4,))


def test_minor_shapes_worked_example():
    shapes = minor_shapes(7, 2, (3, 6), (3, 7))
    assert shapes.expanded == SkewPartition.of((5, 5, 4, 2), (5, 2))
    assert shapes.flipped == SkewPartition.of((5, 5, 3), (3, 1))
    with pytest.raises(ShapeMismatch):
        minor_shapes(4, 1, (1,), ())


def test_skew_pieri_example_and_closed_form():
    expected = [(8, 8, 8, 3), (8, 8, 7, 4), (8, 8, 6, 5)]
    assert skew_pieri((8, 8, 8, 5), 2) == expected
    assert lr_special(8, 3, 2, 5) == expected
    assert skew_pieri((2, 2), 2) == [(2,)]
    assert skew_pieri((3,), 3) == [()]
    assert skew_pieri((1,), 2) == []


def test_lr_special_matches_pieri_everywhere():
    for n in range(1, 6):
        for p in range(1, 4):
            for r in range(1, n + 1):
                for s in range(1, n + 1):
                    assert lr_special(n, p, r, s) == skew_pieri((n,) * p + (s,), r)


def test_partition_enumerators():
    assert sum(1 for _ in partitions_of(6)) == 11
    assert sum(1 for _ in partitions_in_box(2, 2)) == 6
    assert all(len(lam) <= 2 and (not lam or lam[0] <= 3) for lam in partitions_in_box(3, 2))
