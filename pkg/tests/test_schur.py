import random

import pytest

from schur_toeplitz.errors import DegenerateDenominator
from schur_toeplitz.oracle import ssyt_skew_schur
from schur_toeplitz.partitions import SkewPartition, flip, partitions_of
from schur_toeplitz.scalars import XFloat, relative_deviation
from schur_toeplitz.schur import (
    det_scalar,
    factored_applicable,
    pieri_expansion_value,
    rectangle_schur_factored,
    schur,
    schur_bialternant,
    skew_schur,
    skew_schur_dual,
    skew_schur_factored,
)
from schur_toeplitz.symcore import HomSeq, RootList, elem_from_roots

from .helpers import rational_roots_sample


def test_det_scalar_both_backends():
    assert det_scalar([]) == 1
    assert det_scalar([[-3, 2], [1, -3]]) == 7
    assert complex(det_scalar([[-3.0, 2], [1, -3]])) == pytest.approx(7)
    assert det_scalar([[1, 2], [2, 4]]) == 0


def test_small_values():
    h = HomSeq(roots=[1, 2])
    assert schur((1,), h) == 3
    assert schur((2, 1), h) == 6
    assert schur_bialternant((2, 1), [1, 2]) == 6
    assert skew_schur_dual(SkewPartition.of((2, 1)), elem_from_roots([1, 2])) == 6
    assert schur_bialternant((1,), [3, 3]) == 6
    assert skew_schur(SkewPartition.of((2, 1), (2, 1)), h) == 1
    assert skew_schur(SkewPartition.of((1,), (2,)), h) == 0


def test_confluent_bialternant_matches_jt(rng):
    for _ in range(30):
        zs = rational_roots_sample(rng, 3, distinct=False, span=3)
        zs.append(zs[0])
        h = HomSeq(e=elem_from_roots(zs))
        for lam in partitions_of(rng.randint(0, 6), max_len=4):
            assert schur_bialternant(lam, zs) == schur(lam, h)


def test_factored_forms_match_exact(rng):
    for _ in range(100):
        zs = rational_roots_sample(rng, rng.randint(1, 5))
        rl = RootList(zs)
        h = HomSeq(roots=rl)
        lam = sorted((rng.randint(0, 6) for _ in range(rng.randint(0, 4))), reverse=True)
        mu = sorted((rng.randint(0, 3) for _ in range(rng.randint(0, len(lam)))), reverse=True)
        sp = SkewPartition.of(lam, mu)
        if factored_applicable(sp, rl):
            assert skew_schur_factored(sp, rl) == skew_schur(sp, h)
        n, p = rng.randint(1, 7), rng.randint(0, 4)
        assert rectangle_schur_factored(n, p, rl) == schur((n,) * p, h)


def test_float_factored_survives_spread_roots():
    # moduli spanning [0.3, 3]; the plain h-determinant loses every digit here
    zs = [XFloat(0.3), XFloat(-0.5j), XFloat(0.7 + 0.1j), XFloat(1.6), XFloat(-2.4), XFloat(3.0j)]
    n, p = 400, 3
    got = rectangle_schur_factored(n, p, zs)
    ref = schur_bialternant((n,) * p, zs)
    assert relative_deviation(got, ref) <= 1e-10


def test_degenerate_vandermonde_reported():
    with pytest.raises(DegenerateDenominator):
        schur_bialternant((1,), RootList([XFloat(1.0), XFloat(1.0 + 2e-8), XFloat(1.0 + 4e-8)]))


def test_ssyt_matches_straight_shapes(rng):
    for w in range(1, 4):
        zs = rational_roots_sample(rng, w)
        for size in range(7):
            for lam in partitions_of(size):
                assert ssyt_skew_schur(SkewPartition.of(lam), zs) == schur_bialternant(lam, zs)


def test_flip_invariance_and_pieri(rng):
    zs = rational_roots_sample(rng, 4)
    h = HomSeq(roots=zs)
    local = random.Random(9)
    for _ in range(100):
        lam = sorted((local.randint(1, 5) for _ in range(local.randint(1, 4))), reverse=True)
        mu = sorted((local.randint(0, x) for x in lam), reverse=True)
        sp = SkewPartition.of(lam, mu)
        assert skew_schur(flip(sp), h) == skew_schur(sp, h)
        r = local.randint(1, 3)
        assert skew_schur(SkewPartition.of(lam, (r,)), h) == pieri_expansion_value(lam, r, h)
