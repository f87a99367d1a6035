import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from schur_toeplitz.errors import (
    InputError,
    InvalidIndex,
    MethodUnavailable,
    NonConvergence,
    RequiresPositiveP,
    RootsUnavailable,
    SeriesTruncation,
    ShapeMismatch,
    SingularMatrix,
)
from schur_toeplitz.oracle import adj_cofactor, det_laplace
from schur_toeplitz.partitions import SkewPartition
from schur_toeplitz.scalars import XFloat, relative_deviation
from schur_toeplitz.schur import skew_schur
from schur_toeplitz.symcore import HomSeq
from schur_toeplitz.toeplitz import (
    ADJUGATE_METHODS,
    DETERMINANT_METHODS,
    EigenRequest,
    LaurentSpec,
    MinorRequest,
    adj_first_column,
    adjugate_entries,
    adjugate_entry,
    banded_determinant,
    determinant,
    eigen_residual,
    eigenvector,
    eigenvector_entries,
    find_roots,
    geometric_form,
    inverse_entries,
    inverse_entry,
    minor,
    rational_roots,
    schur_sum_shapes,
    skew_schur_as_minor,
    summand_count,
    toeplitz_matrix,
)

from .helpers import rational_roots_sample

TRI = LaurentSpec.from_coeffs(1, [2, -3, 1])


def test_symbol_payloads_agree():
    by_roots = LaurentSpec.from_roots(1, 1, [1, 2])
    by_eseq = LaurentSpec.from_eseq(1, 1, [1, 3, 2, 0, 0, 0])
    assert TRI.coeffs == by_roots.coeffs == [2, -3, 1]
    assert [by_eseq.coeff(k) for k in (1, 0, -1, -2)] == [1, -3, 2, 0]
    assert TRI.w == 2 and by_eseq.w is None


def test_toeplitz_matrix_examples():
    assert toeplitz_matrix(TRI, 3) == [[-3, 2, 0], [1, -3, 2], [0, 1, -3]]
    assert toeplitz_matrix(TRI, 1) == [[-3]]
    upper = LaurentSpec.from_coeffs(0, [5, 2, 1])
    T = toeplitz_matrix(upper, 4)
    assert all(T[j][k] == 0 for j in range(4) for k in range(j))
    with pytest.raises(SeriesTruncation):
        toeplitz_matrix(LaurentSpec.from_eseq(1, 1, [1, 3]), 3)


def test_invalid_symbols():
    with pytest.raises(InputError):
        LaurentSpec.from_coeffs(1, [1, 0])
    with pytest.raises(InputError):
        LaurentSpec.from_coeffs(-1, [1])


def test_minor_examples():
    assert minor(TRI, MinorRequest(3)) == -15
    assert minor(TRI, MinorRequest(3, (1, 2, 3), (1, 2, 3))) == 1
    with pytest.raises(ShapeMismatch):
        MinorRequest(3, (1,), ())


def test_minor_matches_laplace(rng):
    for p in range(0, 4):
        zs = rational_roots_sample(rng, 3)
        a = LaurentSpec.from_roots(p, Fraction(2, 3), zs)
        n = 4
        T = toeplitz_matrix(a, n)
        for d in range(n + 1):
            for xi in itertools.combinations(range(1, n + 1), d):
                for eta in itertools.combinations(range(1, n + 1), d):
                    rows = [j for j in range(1, n + 1) if j not in xi]
                    cols = [k for k in range(1, n + 1) if k not in eta]
                    ref = det_laplace([[T[j - 1][k - 1] for k in cols] for j in rows])
                    req = MinorRequest(n, xi, eta)
                    assert minor(a, req) == ref
                    assert minor(a, req, "flipped") == ref


def test_determinant_methods_agree(rng):
    for _ in range(20):
        p, w = rng.randint(0, 3), rng.randint(1, 4)
        a = LaurentSpec.from_roots(p, Fraction(rng.randint(1, 4), rng.randint(1, 3)), rational_roots_sample(rng, w, distinct=False))
        for n in range(1, 9):
            values = {m: determinant(a, n, m) for m in DETERMINANT_METHODS}
            assert len(set(values.values())) == 1, values


def test_determinant_examples():
    for m in DETERMINANT_METHODS:
        assert determinant(TRI, 3, m) == -15
        assert determinant(TRI, 1, m) == -3
    upper = LaurentSpec.from_coeffs(0, [1, 7])
    assert determinant(upper, 5) == 7**5
    with pytest.raises(InputError):
        determinant(TRI, 3, "laplace")


def test_trench_needs_roots():
    irreducible = LaurentSpec.from_coeffs(1, [1, 0, 1])
    with pytest.raises(RootsUnavailable):
        determinant(irreducible, 3, "trench")
    with pytest.raises(RootsUnavailable):
        determinant(LaurentSpec.from_eseq(1, 1, [1, 0, 1, 0, 0]), 3, "trench")


def test_series_mode_matches_roots(rng):
    zs = rational_roots_sample(rng, 3)
    finite = LaurentSpec.from_roots(2, 1, zs)
    series = LaurentSpec.from_eseq(2, 1, list(finite.e.coeffs) + [0] * 12)
    for n in range(1, 7):
        assert determinant(series, n) == determinant(finite, n, "trench")
        assert adjugate_entry(series, n, 1, n) == adjugate_entry(finite, n, 1, n)


def test_series_mode_truncation_is_reported():
    short = LaurentSpec.from_eseq(2, 1, [1, 2, 1])
    with pytest.raises(SeriesTruncation):
        determinant(short, 4, "schur")


def test_adjugate_examples():
    assert adjugate_entry(TRI, 2, 1, 1) == -3
    for m in ADJUGATE_METHODS:
        assert adjugate_entry(TRI, 2, 1, 1, m) == -3
    with pytest.raises(InvalidIndex):
        adjugate_entry(TRI, 2, 3, 1)
    upper = LaurentSpec.from_coeffs(0, [2, -1, 3])
    with pytest.raises(MethodUnavailable):
        adjugate_entry(upper, 3, 1, 1, "schur_sum")


def test_adjugate_matches_cofactors(rng):
    for p in range(0, 4):
        for w in range(1, 4):
            a = LaurentSpec.from_roots(p, Fraction(3, 2), rational_roots_sample(rng, w))
            for n in range(1, 6):
                ref = adj_cofactor(toeplitz_matrix(a, n))
                methods = [m for m in ADJUGATE_METHODS if p or m != "schur_sum"]
                for r in range(1, n + 1):
                    for s in range(1, n + 1):
                        for m in methods:
                            assert adjugate_entry(a, n, r, s, m) == ref[r - 1][s - 1], (p, w, n, r, s, m)


def test_upper_triangular_adjugate_band():
    a = LaurentSpec.from_roots(0, 3, [1, 2])
    h = HomSeq(roots=[1, 2])
    n = 4
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            assert adjugate_entry(a, n, r, s) == 3 ** (n - 1) * h[s - r]
            if s < r:
                assert adjugate_entry(a, n, r, s) == 0


def test_summand_counts():
    for n in range(1, 8):
        for r in range(1, n + 1):
            for s in range(1, n + 1):
                assert len(schur_sum_shapes(n, 2, r, s)) == summand_count(n, r, s)


def test_inverse_entries():
    assert inverse_entry(TRI, 2, 1, 1) == Fraction(-3, 7)
    assert inverse_entry(TRI, 1, 1, 1) == Fraction(-1, 3)
    upper = LaurentSpec.from_coeffs(0, [4, 1, 5])
    assert all(inverse_entry(upper, 3, r, r) == Fraction(1, 5) for r in (1, 2, 3))
    singular = LaurentSpec.from_roots(1, 1, [1, -1])
    with pytest.raises(SingularMatrix):
        inverse_entry(singular, 3, 1, 1)


def test_batch_producers_are_ordered_and_deterministic(monkeypatch):
    a = LaurentSpec.from_roots(2, 1, [1, 2, Fraction(-1, 2)])
    seq = list(adjugate_entries(a, 4, workers=1))
    monkeypatch.setenv("SCHUR_TOEPLITZ_THREADS", "4")
    par = list(adjugate_entries(a, 4))
    assert seq == par
    assert [(r, s) for r, s, _ in seq] == [(r, s) for r in range(1, 5) for s in range(1, 5)]
    det = determinant(a, 4)
    assert [v for *_, v in inverse_entries(a, 4, workers=3)] == [v / det for *_, v in seq]


def test_adj_first_column():
    assert adj_first_column(TRI, 2) == [-3, -1]
    assert adj_first_column(TRI, 1) == [1]
    a = LaurentSpec.from_roots(2, 1, [1, 2, 3])
    assert adj_first_column(a, 5) == [adjugate_entry(a, 5, r, 1) for r in range(1, 6)]


def test_eigenvector_examples():
    a = LaurentSpec.from_coeffs(1, [1, 0, 1])
    v = eigenvector(a, EigenRequest(2, 1))
    assert v == [1, 1]
    assert eigen_residual(a, 1, v) == [0, 0]
    assert eigenvector(a, EigenRequest(1, 0)) == [1]
    with pytest.raises(RequiresPositiveP):
        eigenvector(LaurentSpec.from_coeffs(0, [1, 2]), EigenRequest(2, 1))


def test_hessenberg_eigenvector_is_h_sequence():
    # p = 1: v_r = h_{n-r} of the roots of a - x
    b = LaurentSpec.from_roots(1, 1, [1, -1, 2])
    x = Fraction(5, 2)
    a = b.shift(-x)
    v = eigenvector(a, EigenRequest(5, x, (1, -1, 2)))
    h = HomSeq(roots=[1, -1, 2])
    assert v == [h[5 - r] for r in range(1, 6)]


def test_eigen_residual_is_determinant_times_e1(rng):
    zs = rational_roots_sample(rng, 3)
    a = LaurentSpec.from_roots(2, 1, zs)
    x = Fraction(1, 3)
    n = 4
    v = eigenvector(a, EigenRequest(n, x))
    res = eigen_residual(a, x, v)
    assert res[1:] == [0] * (n - 1)
    assert res[0] == determinant(a.shift(x), n)


def test_shift_checks_supplied_roots():
    with pytest.raises(InputError):
        TRI.shift(1, roots=[1, 2])
    assert TRI.shift(0, roots=[1, 2]).roots is not None


def test_geometric_form_exact_and_confluent():
    b = LaurentSpec.from_roots(2, 1, [1, -1, 2, 3])
    a = b.shift(-7)
    req = EigenRequest(5, 7, (1, -1, 2, 3))
    gf = geometric_form(a, req)
    assert gf.path == "simple"
    assert gf.vector == eigenvector(a, req)
    conf = EigenRequest(5, 7, (2, 2, -1, 3))
    b2 = LaurentSpec.from_roots(2, 1, [2, 2, -1, 3])
    a2 = b2.shift(-7)
    gf2 = geometric_form(a2, conf)
    assert gf2.path == "confluent"
    assert gf2.vector == eigenvector(a2, conf)


def test_geometric_single_progression():
    a = LaurentSpec.from_roots(1, 1, [3])
    gf = geometric_form(a, EigenRequest(4, 0, (3,)))
    assert gf.vector == [27, 9, 3, 1]


def test_geometric_form_rejects_series():
    with pytest.raises(MethodUnavailable):
        geometric_form(LaurentSpec.from_eseq(1, 1, [1, 1, 1, 0]), EigenRequest(2, 0))


def test_skew_schur_as_minor(rng):
    assert skew_schur_as_minor(SkewPartition.of((1,)), [1, 2]) == 3
    assert skew_schur_as_minor(SkewPartition.of((2, 1), (2, 1)), [1, 2]) == 1
    zs = rational_roots_sample(rng, 5)
    h = HomSeq(roots=zs)
    sp = SkewPartition.of((5, 4, 2), (2,))
    assert skew_schur_as_minor(sp, zs) == skew_schur(sp, h)
    for _ in range(50):
        lam = sorted((rng.randint(1, 5) for _ in range(rng.randint(1, 3))), reverse=True)
        mu = sorted((rng.randint(0, x) for x in lam), reverse=True)
        sp = SkewPartition.of(lam, mu)
        assert skew_schur_as_minor(sp, zs[:3]) == skew_schur(sp, HomSeq(roots=zs[:3]))


def test_find_roots():
    roots = sorted(complex(z).real for z in find_roots(LaurentSpec.from_coeffs(1, [2.0, -3.0, 1.0])))
    assert roots == pytest.approx([1.0, 2.0], abs=1e-12)
    (z,) = find_roots(LaurentSpec.from_coeffs(1, [6.0, 2.0]))
    assert complex(z) == pytest.approx(-3.0)
    multi = find_roots(LaurentSpec.from_roots(1, 1.0, [1.0, 1.0, 1.0, 2.0]))
    assert len(multi) == 4
    rng = np.random.default_rng(0)
    for w in range(1, 9):
        zs = list(rng.normal(size=w) + 1j * rng.normal(size=w))
        found = find_roots(LaurentSpec.from_roots(2, 1.0, [XFloat(z) for z in zs]))
        got = [complex(z) for z in found.roots]
        for z in zs:
            assert min(abs(z - g) for g in got) < 1e-8


def test_find_roots_iteration_cap():
    with pytest.raises(NonConvergence):
        find_roots(LaurentSpec.from_coeffs(1, [2.0, -3.0, 1.0]), max_iter=0)


def test_rational_roots():
    assert sorted(rational_roots(TRI).roots) == [1, 2]
    assert rational_roots(LaurentSpec.from_coeffs(1, [1, 0, 1])) is None
    a = LaurentSpec.from_roots(2, 1, [Fraction(-2, 3), 0, 5, 5])
    assert sorted(rational_roots(LaurentSpec.from_coeffs(2, a.coeffs)).roots) == sorted([Fraction(-2, 3), 0, 5, 5])


def test_banded_determinant_against_numpy():
    rng = random.Random(4)
    for _ in range(50):
        p, w, n = rng.randint(0, 5), rng.randint(1, 5), rng.randint(1, 15)
        vals = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(w + 1)]
        a = LaurentSpec.from_coeffs(p, vals)
        T = np.array([[complex(x) for x in row] for row in toeplitz_matrix(a, n)])
        assert relative_deviation(banded_determinant(a, n), XFloat(np.linalg.det(T))) <= 1e-9


def test_float_determinant_large_order():
    a = LaurentSpec.from_roots(2, 1.0, [XFloat(0.5), XFloat(-0.25j), XFloat(1.5), XFloat(-2.0 + 0.5j)])
    n = 3000
    assert relative_deviation(determinant(a, n), banded_determinant(a, n)) <= 1e-9
    assert relative_deviation(determinant(a, n), determinant(a, n, "trench")) <= 1e-9


def test_float_eigenvector_entries_match():
    a = LaurentSpec.from_coeffs(1, [1.0, 0.3, 1.0])
    req = EigenRequest(6, 0.1)
    v = eigenvector(a, req)
    assert [val for _, val in eigenvector_entries(a, req, workers=2)] == v
