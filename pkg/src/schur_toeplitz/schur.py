"""Skew Schur polynomial evaluation.

Three evaluators share one scalar layer:

* :func:`skew_schur` - Jacobi-Trudi determinant in complete homogeneous h's;
* :func:`skew_schur_dual` - dual Jacobi-Trudi determinant in elementary e's;
* :func:`schur_bialternant` - ratio of generalized Vandermonde determinants,
  with derivative columns for repeated roots.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateDenominator
from .partitions import Partition, SkewPartition, conjugate, skew_pieri
from .scalars import FLOAT, XFloat, as_xfloat, backend_of
from .symcore import ElemSeq, HomSeq, RootList, _as_rootlist

Matrix = Sequence[Sequence]

# |det V| below this multiple of the Hadamard bound counts as singular
_FLOAT_SINGULAR_RTOL = 1e-14


def _zero(backend: str):
    return XFloat(0.0) if backend == FLOAT else Fraction(0)


def _one(backend: str):
    return XFloat(1.0) if backend == FLOAT else Fraction(1)


def det_scalar(M: Matrix):
    """Determinant over either backend.

    Exact entries: fraction-free (Bareiss) elimination. Float entries:
    Gaussian elimination with partial pivoting on magnitude. The empty
    matrix has determinant 1; a singular matrix gives 0.
    """
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ValueError("det_scalar needs a square matrix")
    if n == 0:
        return 1
    backend = backend_of(x for row in M for x in row)
    if backend == FLOAT:
        return _det_pivoting([[as_xfloat(x) for x in row] for row in M])
    return _det_bareiss([[Fraction(x) for x in row] for row in M])


def _det_bareiss(A: list[list[Fraction]]) -> Fraction:
    n = len(A)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) / prev
        prev = akk
    return sign * A[n - 1][n - 1]


def _det_pivoting(A: list[list[XFloat]]) -> XFloat:
    n = len(A)
    det = XFloat(1.0)
    for k in range(n):
        piv = max(range(k, n), key=lambda i: A[i][k].log2abs())
        if A[piv][k].m == 0:
            return XFloat(0.0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        akk = A[k][k]
        det = det * akk
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            if rowi[k].m == 0:
                continue
            f = rowi[k] / akk
            for j in range(k + 1, n):
                if rowk[j].m != 0:
                    rowi[j] = rowi[j] - f * rowk[j]
    return det


def jt_matrix(sp: SkewPartition, h: HomSeq) -> list[list]:
    """``[h_{lam_j - mu_k - j + k}]`` of order ``len(lam)``, ``mu`` zero-padded."""
    lam, mu = sp.outer, sp.inner
    L = len(lam)
    if len(mu) > L:
        raise ValueError("inner shape longer than outer; no Jacobi-Trudi matrix")
    mu_pad = mu.padded(L)
    degrees = [[lam[j] - mu_pad[k] - j + k for k in range(L)] for j in range(L)]
    if L:
        h.prefetch(max(0, min(map(min, degrees))), max(map(max, degrees)))
    return [[h[d] for d in row] for row in degrees]


def skew_schur(sp: SkewPartition, h: HomSeq):
    """``s_{lam/mu}`` by the Jacobi-Trudi determinant; 0 when ``mu`` is not
    inside ``lam`` (the determinant vanishes there anyway)."""
    sp = SkewPartition.of(*sp) if not isinstance(sp, SkewPartition) else sp
    if not sp.is_valid:
        return _zero(h.backend)
    if not sp.outer:
        return _one(h.backend)
    return _typed(det_scalar(jt_matrix(sp, h)), h.backend)


def skew_schur_dual(sp: SkewPartition, e: ElemSeq):
    """``s_{lam/mu} = det[e_{lam'_j - mu'_k - j + k}]`` of order ``lam_1``."""
    sp = SkewPartition.of(*sp) if not isinstance(sp, SkewPartition) else sp
    if not sp.is_valid:
        return _zero(e.backend)
    lam_c, mu_c = conjugate(sp.outer), conjugate(sp.inner)
    L = len(lam_c)
    if L == 0:
        return _one(e.backend)
    mu_pad = mu_c.padded(L)
    M = [[e[lam_c[j] - mu_pad[k] - j + k] for k in range(L)] for j in range(L)]
    return _typed(det_scalar(M), e.backend)


def _typed(x, backend: str):
    if backend == FLOAT:
        return as_xfloat(x)
    return Fraction(x)


def _falling(m: int, q: int) -> int:
    # d^q/dt^q t^m = m!/(m-q)! t^(m-q)
    if q > m:
        return 0
    out = 1
    for i in range(q):
        out *= m - i
    return out


def vandermonde_columns(roots: RootList) -> list[tuple[object, int]]:
    """Column descriptors ``(root, derivative order)``, one per root slot."""
    cols = []
    for z, mult in roots.groups:
        cols.extend((z, q) for q in range(mult))
    return cols


def column_entry(z, q: int, exponent: int):
    """Entry of the ``q``-th derivative of ``t -> t^exponent`` at ``z``."""
    c = _falling(exponent, q)
    if c == 0:
        return 0
    return c * z ** (exponent - q)


def generalized_vandermonde(exponents: Sequence[int], roots) -> list[list]:
    """Rows ``t^exponents[j]`` evaluated on the (confluent) columns of ``roots``."""
    roots = _as_rootlist(roots)
    cols = vandermonde_columns(roots)
    return [[column_entry(z, q, ex) for (z, q) in cols] for ex in exponents]


def bialternant_exponents(lam: Partition, w: int) -> list[int]:
    lam_pad = lam.padded(w)
    return [lam_pad[j] + w - 1 - j for j in range(w)]


def vandermonde_det(roots) -> object:
    """(Confluent) Vandermonde determinant ``det A_{(0^w)}``."""
    roots = _as_rootlist(roots)
    w = roots.w
    return det_scalar(generalized_vandermonde(list(range(w - 1, -1, -1)), roots))


def _hadamard_log2(M: Matrix) -> float:
    total = 0.0
    n = len(M)
    for k in range(n):
        col = [as_xfloat(M[j][k]) for j in range(n)]
        top = max(x.log2abs() for x in col)
        if top == -math.inf:
            return -math.inf
        s = sum(2.0 ** (2 * (x.log2abs() - top)) for x in col if x.m != 0)
        total += top + 0.5 * math.log2(s)
    return total


def check_denominator(V, A: Matrix, backend: str):
    if V == 0:
        raise DegenerateDenominator("Vandermonde determinant vanished; roots are not grouped consistently")
    if backend == FLOAT:
        bound = _hadamard_log2(A)
        if as_xfloat(V).log2abs() < bound + math.log2(_FLOAT_SINGULAR_RTOL):
            raise DegenerateDenominator(
                "Vandermonde determinant is numerically zero; tighten or loosen the root grouping"
            )


def schur_bialternant(lam, roots):
    """``s_lam(z) = det A_lam / det A_{(0^w)}``, confluent when roots repeat."""
    lam = Partition(lam)
    roots = _as_rootlist(roots)
    w = roots.w
    backend = roots.backend
    if len(lam) > w:
        return _zero(backend)
    if w == 0:
        return _one(backend)
    denom_matrix = generalized_vandermonde(list(range(w - 1, -1, -1)), roots)
    V = det_scalar(denom_matrix)
    check_denominator(V, denom_matrix, backend)
    num = det_scalar(generalized_vandermonde(bialternant_exponents(lam, w), roots))
    return _typed(num, backend) / _typed(V, backend)


def _nonzero_simple(roots: RootList) -> list | None:
    # zero variables do not change a symmetric function; drop them
    if not roots.is_simple:
        return None
    return [z for z in roots.roots if z != 0]


def _closed_weights(zs: list) -> list:
    # h_r = sum_l c_l z_l^r for r >= -(w-1)
    w = len(zs)
    out = []
    for j, zj in enumerate(zs):
        denom = 1
        for k, zk in enumerate(zs):
            if k != j:
                denom = denom * (zj - zk)
        out.append(zj ** (w - 1) / denom)
    return out


def _subsets(w: int, size: int):
    return itertools.combinations(range(w), size)


def factored_applicable(sp: SkewPartition, roots: RootList) -> bool:
    """True when :func:`skew_schur_factored` can evaluate ``sp`` at ``roots``."""
    zs = _nonzero_simple(roots)
    if zs is None or not sp.is_valid:
        return False
    L = len(sp.outer)
    if L == 0:
        return True
    w = len(zs)
    mu = sp.inner.padded(L)
    lowest = sp.outer[L - 1] - mu[0] - L + 1
    return lowest >= -(w - 1) and math.comb(w, min(L, w)) <= FACTORED_MAX_TERMS


FACTORED_MAX_TERMS = 20000


def skew_schur_factored(sp: SkewPartition, roots):
    """Jacobi-Trudi determinant through the factorization of its h-matrix.

    With simple nonzero roots, ``h_r = sum_l c_l z_l^r`` for every degree in
    the matrix, so ``JT = X diag(c) Y`` with ``X[j,l] = z_l^(lam_j - j)`` and
    ``Y[l,k] = z_l^(k - mu_k)``; Cauchy-Binet turns the determinant into a sum
    over ``len(lam)``-subsets of roots. Every term is a product, so large
    cancellations between h's of very different size never occur.
    """
    roots = _as_rootlist(roots)
    sp = sp if isinstance(sp, SkewPartition) else SkewPartition.of(*sp)
    backend = roots.backend
    if not sp.is_valid:
        return _zero(backend)
    if not factored_applicable(sp, roots):
        raise ValueError(f"factored evaluation does not apply to {sp} at these roots")
    lam = sp.outer
    L = len(lam)
    if L == 0:
        return _one(backend)
    zs = _nonzero_simple(roots)
    w = len(zs)
    if L > w:
        return _zero(backend)
    mu = sp.inner.padded(L)
    c = _closed_weights(zs)
    X = [[z ** (lam[j] - (j + 1)) for z in zs] for j in range(L)]
    Y = [[z ** ((k + 1) - mu[k]) for k in range(L)] for z in zs]
    total = _zero(backend)
    for S in _subsets(w, L):
        left = det_scalar([[X[j][l] for l in S] for j in range(L)])
        if left == 0:
            continue
        right = det_scalar([Y[l] for l in S])
        term = left * right
        for l in S:
            term = term * c[l]
        total = total + term
    return _typed(total, backend)


def rectangle_schur_factored(n: int, p: int, roots):
    """``s_{(n^p)}`` as ``(-1)^(p(p-1)/2) sum_S prod_{l in S} c_l z_l^(n-p+1)
    prod_{a<b in S} (z_a - z_b)^2`` (Cauchy-Binet with Vandermonde factors)."""
    roots = _as_rootlist(roots)
    backend = roots.backend
    if p == 0 or n == 0:
        return _one(backend)
    zs = _nonzero_simple(roots)
    if zs is None:
        raise ValueError("factored rectangle evaluation needs simple roots")
    w = len(zs)
    if p > w:
        return _zero(backend)
    if n - p + 1 < -(w - 1):
        raise ValueError("degrees fall outside the closed-form range")
    if math.comb(w, p) > FACTORED_MAX_TERMS:
        raise ValueError("too many subsets for factored evaluation")
    c = _closed_weights(zs)
    F = [cl * z ** (n - p + 1) for cl, z in zip(c, zs)]
    Q = [[(za - zb) * (za - zb) for zb in zs] for za in zs]
    total = _zero(backend)

    def walk(start: int, chosen: list, acc):
        nonlocal total
        if len(chosen) == p:
            total = total + acc
            return
        for l in range(start, w - (p - len(chosen)) + 1):
            term = acc * F[l]
            for a in chosen:
                term = term * Q[a][l]
            chosen.append(l)
            walk(l + 1, chosen, term)
            chosen.pop()

    walk(0, [], _one(backend))
    if (p * (p - 1) // 2) % 2:
        total = -total
    return _typed(total, backend)


def schur(lam, h: HomSeq):
    """Straight-shape ``s_lam`` via Jacobi-Trudi."""
    return skew_schur(SkewPartition.of(lam), h)


def pieri_expansion_value(lam, r: int, h: HomSeq):
    """``sum_nu s_nu`` over the horizontal-strip expansion of ``lam/(r)``."""
    total = _zero(h.backend)
    for nu in skew_pieri(lam, r):
        total = total + schur(nu, h)
    return total


__all__ = [
    "det_scalar",
    "jt_matrix",
    "skew_schur",
    "skew_schur_dual",
    "schur_bialternant",
    "schur",
    "generalized_vandermonde",
    "vandermonde_det",
    "vandermonde_columns",
    "column_entry",
    "bialternant_exponents",
    "pieri_expansion_value",
    "skew_schur_factored",
    "rectangle_schur_factored",
    "factored_applicable",
]
