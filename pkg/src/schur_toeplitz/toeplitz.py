"""Banded Toeplitz symbols and closed forms for their minors, determinants,
adjugates, inverses and eigenvectors.

A symbol ``a(t) = sum_{k=p-w}^{p} a_k t^k = a_p t^(p-w) prod_j (t - z_j)``
generates ``T_n(a) = [a_{j-k}]``. Every quantity below is a skew Schur
polynomial evaluated at the roots ``z_j``, or equivalently through the
e-sequence ``e_k = (-1)^k a_{p-k} / a_p``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
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
from .partitions import IndexSet, Partition, SkewPartition, minor_shapes
from .scalars import EXACT, FLOAT, XFloat, backend_of, to_backend
from .schur import (
    column_entry,
    det_scalar,
    factored_applicable,
    generalized_vandermonde,
    rectangle_schur_factored,
    skew_schur,
    skew_schur_dual,
    skew_schur_factored,
    schur_bialternant,
    vandermonde_columns,
    vandermonde_det,
    check_denominator,
)
from .symcore import ElemSeq, HomSeq, RootList, elem_from_roots

DETERMINANT_METHODS = ("schur", "baxter_schmidt", "trench", "dense")
ADJUGATE_METHODS = ("skew", "skew_flipped", "schur_sum", "trench")
MINOR_VARIANTS = ("expanded", "flipped")


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class LaurentSpec:
    """Immutable banded symbol.

    Build with :meth:`from_coeffs`, :meth:`from_roots` or :meth:`from_eseq`.
    ``w`` is ``None`` for a series-mode symbol (a semi-infinite tail of
    negative powers given only through a prefix of its e-sequence).
    """

    def __init__(self, p: int, a_p, e: ElemSeq, roots: RootList | None = None):
        if p < 0:
            raise InputError(f"p must be nonnegative, got {p}")
        backend = e.backend if roots is None else roots.backend
        if backend_of([a_p]) == FLOAT:
            backend = FLOAT
        a_p = to_backend(a_p, backend)
        if a_p == 0:
            raise InputError("leading coefficient a_p must be nonzero")
        if e.backend != backend:
            e = ElemSeq(e.coeffs, series=e.series, backend=backend)
        if roots is not None and roots.backend != backend:
            roots = RootList(roots.roots, backend=backend)
        self.p = p
        self.a_p = a_p
        self.e = e
        self.roots = roots
        self.backend = backend
        self._h: HomSeq | None = None

    @classmethod
    def from_coeffs(cls, p: int, values: Sequence, backend: str | None = None) -> "LaurentSpec":
        """Coefficients ``a_{p-w}, ..., a_p`` in increasing power order."""
        values = list(values)
        if not values:
            raise InputError("a symbol needs at least one coefficient")
        if backend is None:
            backend = backend_of(values)
        values = [to_backend(v, backend) for v in values]
        a_p = values[-1]
        if a_p == 0:
            raise InputError("leading coefficient a_p must be nonzero")
        w = len(values) - 1
        # e_k = (-1)^k a_{p-k} / a_p; a_{p-k} sits at position w - k
        e = [to_backend(1, backend)] + [_sign(k) * values[w - k] / a_p for k in range(1, w + 1)]
        return cls(p, a_p, ElemSeq(e, backend=backend))

    @classmethod
    def from_roots(cls, p: int, a_p, roots: Sequence, backend: str | None = None) -> "LaurentSpec":
        raw = list(roots)
        if backend is None:
            backend = backend_of(raw + [a_p])
        rl = RootList(raw, backend=backend)
        return cls(p, a_p, elem_from_roots(rl), rl)

    @classmethod
    def from_eseq(cls, p: int, a_p, e: Sequence, backend: str | None = None) -> "LaurentSpec":
        """Series mode: ``e_0 = 1, e_1, ...`` known only up to the given degree."""
        e = list(e)
        if backend is None:
            backend = backend_of(e + [a_p])
        return cls(p, a_p, ElemSeq(e, series=True, backend=backend))

    @property
    def series(self) -> bool:
        return self.e.series

    @property
    def w(self) -> int | None:
        return self.e.w

    @property
    def h(self) -> HomSeq:
        if self._h is None:
            self._h = HomSeq(e=self.e, roots=self.roots)
        return self._h

    def coeff(self, k: int):
        """``a_k = (-1)^(p-k) a_p e_{p-k}``."""
        if k > self.p:
            return to_backend(0, self.backend)
        j = self.p - k
        return to_backend(_sign(j) * self.a_p * self.e[j], self.backend)

    @property
    def coeffs(self) -> list:
        if self.series:
            raise SeriesTruncation("a series-mode symbol has no finite coefficient list")
        return [self.coeff(k) for k in range(self.p - self.w, self.p + 1)]

    def require_roots(self) -> RootList:
        if self.roots is None:
            if self.series:
                raise RootsUnavailable("series-mode symbols have no roots")
            if self.backend == FLOAT:
                return find_roots(self)
            roots = rational_roots(self)
            if roots is None:
                raise RootsUnavailable(
                    "exact symbol does not split over the rationals; supply roots or use the float backend"
                )
            return roots
        return self.roots

    def with_roots(self) -> "LaurentSpec":
        """Same symbol with roots attached (computed numerically if needed)."""
        if self.roots is not None:
            return self
        roots = self.require_roots()
        return LaurentSpec(self.p, self.a_p, self.e, roots)

    def shift(self, x, roots: Sequence | None = None) -> "LaurentSpec":
        """The symbol ``a - x``; optional ``roots`` belong to ``a - x``.

        Exact roots are checked against the shifted coefficients.
        """
        backend = self.backend if backend_of([x]) == EXACT else FLOAT
        x = to_backend(x, backend)
        if self.p == 0:
            a_p = to_backend(self.a_p, backend) - x
            if a_p == 0:
                raise InputError("shifting by a_0 removes the leading coefficient when p = 0")
            scale = to_backend(self.a_p, backend) / a_p
            coeffs = [to_backend(c, backend) * (scale if k else 1) for k, c in enumerate(self.e.coeffs)]
        else:
            a_p = to_backend(self.a_p, backend)
            coeffs = [to_backend(c, backend) for c in self.e.coeffs]
            if len(coeffs) <= self.p:
                if self.series:
                    raise SeriesTruncation(f"shifting needs e_{self.p}; the series stops at e_{len(coeffs) - 1}")
                coeffs += [to_backend(0, backend)] * (self.p + 1 - len(coeffs))
            # a_0 = (-1)^p a_p e_p
            coeffs[self.p] = coeffs[self.p] - _sign(self.p) * x / a_p
        e = ElemSeq(coeffs, series=self.series, backend=backend)
        rl = None
        if roots is not None:
            rl = RootList(list(roots), backend=backend)
            if len(rl) != len(coeffs) - 1 or self.series:
                raise InputError(f"a - x has {len(coeffs) - 1} roots; {len(rl)} were supplied")
            if backend == EXACT and elem_from_roots(rl).coeffs != e.coeffs:
                raise InputError("supplied roots are not the roots of a - x")
        return LaurentSpec(self.p, a_p, e, rl)

    def __repr__(self):
        payload = f"e={list(self.e.coeffs)}" + (" (series)" if self.series else "")
        return f"LaurentSpec(p={self.p}, a_p={self.a_p!r}, {payload})"


# ---------------------------------------------------------------------------
# requests
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorRequest:
    n: int
    struck_rows: IndexSet
    struck_cols: IndexSet

    def __init__(self, n: int, struck_rows=(), struck_cols=()):
        rows, cols = IndexSet(n, struck_rows), IndexSet(n, struck_cols)
        if len(rows) != len(cols):
            raise ShapeMismatch(f"{len(rows)} struck rows but {len(cols)} struck columns")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "struck_rows", rows)
        object.__setattr__(self, "struck_cols", cols)

    @property
    def d(self) -> int:
        return len(self.struck_rows)

    @property
    def m(self) -> int:
        return self.n - self.d

    @property
    def kept_rows(self) -> IndexSet:
        return self.struck_rows.complement()

    @property
    def kept_cols(self) -> IndexSet:
        return self.struck_cols.complement()


@dataclass(frozen=True)
class EigenRequest:
    n: int
    x: object
    shifted_roots: tuple | None = field(default=None)


# ---------------------------------------------------------------------------
# matrices and evaluation helpers
# ---------------------------------------------------------------------------


def toeplitz_matrix(a: LaurentSpec, n: int) -> list[list]:
    """Dense ``T_n(a) = [a_{j-k}]``."""
    if n < 1:
        raise InputError(f"order must be positive, got {n}")
    if a.series and a.e.known_degree < a.p + n - 1:
        raise SeriesTruncation(
            f"order {n} needs e up to e_{a.p + n - 1}; the series stops at e_{a.e.known_degree}"
        )
    diag = {k: a.coeff(k) for k in range(-(n - 1), n)}
    return [[diag[j - k] for k in range(n)] for j in range(n)]


def _skew_value(a: LaurentSpec, sp: SkewPartition):
    # float with simple roots: the factored sum avoids cancellation in the h-determinant
    if a.backend == FLOAT and a.roots is not None and factored_applicable(sp, a.roots):
        return skew_schur_factored(sp, a.roots)
    return skew_schur(sp, a.h)


def _rectangle_value(a: LaurentSpec, n: int, p: int):
    """``s_{(n^p)}`` by the p x p h-determinant (factored in float)."""
    if p == 0 or n == 0:
        return to_backend(1, a.backend)
    if a.backend == FLOAT and a.roots is not None and a.roots.is_simple:
        try:
            return rectangle_schur_factored(n, p, a.roots)
        except ValueError:
            pass
    return skew_schur(SkewPartition.of((n,) * p), a.h)


# ---------------------------------------------------------------------------
# minors and determinants
# ---------------------------------------------------------------------------


def minor(a: LaurentSpec, req: MinorRequest, variant: str = "expanded"):
    """Minor of ``T_n(a)`` with rows ``req.struck_rows`` and columns
    ``req.struck_cols`` deleted."""
    if variant not in MINOR_VARIANTS:
        raise InputError(f"unknown minor variant {variant!r}")
    m = req.m
    if m == 0:
        return to_backend(1, a.backend)
    shapes = minor_shapes(req.n, a.p, req.struck_rows, req.struck_cols)
    sp = shapes.expanded if variant == "expanded" else shapes.flipped
    # |rho| + |xi| = n(n+1)/2 = |sigma| + |eta|, so |rho| + |sigma| and
    # |xi| + |eta| have the same parity and the complements are never built
    sign = _sign(a.p * m + req.struck_rows.total + req.struck_cols.total)
    return sign * a.a_p ** m * _skew_value(a, sp)


def _prefactor(a: LaurentSpec, n: int):
    return _sign(a.p * n) * a.a_p ** n


def determinant(a: LaurentSpec, n: int, method: str = "baxter_schmidt"):
    """``det T_n(a) = (-1)^(pn) a_p^n s_{(n^p)}``."""
    if method not in DETERMINANT_METHODS:
        raise InputError(f"unknown determinant method {method!r}")
    if n < 1:
        raise InputError(f"order must be positive, got {n}")
    p = a.p
    if p == 0:
        return to_backend(a.a_p ** n, a.backend)
    if method == "dense":
        return dense_determinant(a, n)
    if method == "schur":
        value = skew_schur_dual(SkewPartition.of((n,) * p), a.e)
    elif method == "baxter_schmidt":
        value = _rectangle_value(a, n, p)
    else:
        if a.series:
            raise RootsUnavailable("the bialternant form needs roots; series-mode symbols have none")
        roots = a.roots if a.roots is not None else a.require_roots()
        value = schur_bialternant((n,) * p, roots)
    return _prefactor(a, n) * value


def dense_determinant(a: LaurentSpec, n: int):
    """Elimination on the matrix itself: Bareiss (exact) or banded LU (float)."""
    if a.backend == FLOAT and not a.series:
        return banded_determinant(a, n)
    return to_backend(det_scalar(toeplitz_matrix(a, n)), a.backend)


def banded_determinant(a: LaurentSpec, n: int) -> XFloat:
    """Float determinant by LAPACK banded LU with partial pivoting (``zgbtrf``).

    The product of pivots is accumulated in :class:`XFloat`, so it does not
    overflow at large ``n``.
    """
    from scipy.linalg import lapack

    if a.series:
        raise SeriesTruncation("banded elimination needs a finite band")
    w, p = a.w, a.p
    kl, ku = max(p, 0), max(w - p, 0)
    kl, ku = min(kl, n - 1), min(ku, n - 1)
    coeffs = {k: complex(a.coeff(k)) for k in range(-ku, kl + 1)}
    real = all(c.imag == 0 for c in coeffs.values())
    dtype = float if real else complex
    ab = np.zeros((2 * kl + ku + 1, n), dtype=dtype)
    for k, c in coeffs.items():
        # A[i, j] = a_{i-j} lives in band row kl + ku + i - j
        if c == 0:
            continue
        row = kl + ku + k
        if k >= 0:
            ab[row, : n - k] = c.real if real else c
        else:
            ab[row, -k:] = c.real if real else c
    factor = lapack.dgbtrf if real else lapack.zgbtrf
    lu, piv, info = factor(ab, kl, ku)
    if info < 0:
        raise ValueError(f"banded LU rejected argument {-info}")
    diag = lu[kl + ku, :]
    if np.any(diag == 0):
        return XFloat(0.0)
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    total = float(np.sum(np.log2(np.abs(diag))))
    if real:
        swaps += int(np.count_nonzero(diag < 0))
        unit = 1.0
    else:
        # product of unit phases, renormalized in blocks to stop drift
        unit = 1.0 + 0j
        for block in np.array_split(diag / np.abs(diag), max(1, n // 256)):
            unit *= complex(np.prod(block))
            unit /= abs(unit)
    e = math.floor(total)
    value = XFloat(2.0 ** (total - e) * unit, e)
    return -value if swaps % 2 else value


# ---------------------------------------------------------------------------
# adjugate and inverse
# ---------------------------------------------------------------------------


def _check_index(n: int, r: int, s: int):
    if n < 1:
        raise InputError(f"order must be positive, got {n}")
    if not (1 <= r <= n and 1 <= s <= n):
        raise InvalidIndex(f"entry ({r}, {s}) outside 1..{n}")


def schur_sum_shapes(n: int, p: int, r: int, s: int) -> list[Partition]:
    """Straight shapes whose Schur values sum to the ``(r, s)`` adjugate entry."""
    lo, hi = max(0, s - r), min(n - r, s - 1)
    return [Partition((n - 1,) * (p - 1) + (n + s - r - 1 - k, k)) for k in range(lo, hi + 1)]


def adjugate_entry(a: LaurentSpec, n: int, r: int, s: int, method: str = "skew"):
    """``adj(T_n(a))_{r,s}``, i.e. ``(-1)^(r+s)`` times the minor without row s, column r."""
    if method not in ADJUGATE_METHODS:
        raise InputError(f"unknown adjugate method {method!r}")
    _check_index(n, r, s)
    p = a.p
    if p == 0:
        if method == "schur_sum":
            raise MethodUnavailable("the Schur-sum adjugate form needs p >= 1")
        # inverse of an upper triangular Toeplitz matrix: h_{s-r} on the band
        return a.a_p ** (n - 1) * a.h[s - r]
    pre = _sign(p * (n - 1)) * a.a_p ** (n - 1)
    if method == "skew":
        sp = SkewPartition.of((n - 1,) * p + (s - 1,), (r - 1,))
        return pre * _skew_value(a, sp)
    if method == "skew_flipped":
        sp = SkewPartition.of((n - 1,) * p + (n - r,), (n - s,))
        return pre * _skew_value(a, sp)
    if method == "schur_sum":
        total = to_backend(0, a.backend)
        for nu in schur_sum_shapes(n, p, r, s):
            total = total + _skew_value(a, SkewPartition.of(nu))
        return pre * total
    # h_{s-r-p} s_{(n^p)} - sum_k (-1)^k h_{s+k-p} s_{(n^{p-k-1}, (n-1)^k, n-r)}
    h = a.h
    total = h[s - r - p] * _rectangle_value(a, n, p) if s - r - p >= 0 else to_backend(0, a.backend)
    for k in range(p):
        hk = h[s + k - p]
        if hk == 0:
            continue
        lam = (n,) * (p - k - 1) + (n - 1,) * k + (n - r,)
        term = hk * _skew_value(a, SkewPartition.of(lam))
        total = total - term if k % 2 == 0 else total + term
    return _sign(p * n) * a.a_p ** (n - 1) * total


def summand_count(n: int, r: int, s: int) -> int:
    """Number of Schur terms in the Schur-sum adjugate form."""
    return min(r, s, n + 1 - r, n + 1 - s)


def _is_singular(det) -> bool:
    return det == 0


def inverse_entry(a: LaurentSpec, n: int, r: int, s: int, method: str = "skew", det=None):
    _check_index(n, r, s)
    if det is None:
        det = determinant(a, n)
    if _is_singular(det):
        raise SingularMatrix(f"T_{n}(a) is singular")
    return adjugate_entry(a, n, r, s, method) / det


def adj_first_column(a: LaurentSpec, n: int) -> list:
    """Column 1 of the adjugate: ``(-1)^(p(n-1)) a_p^(n-1) s_{((n-1)^(p-1), n-r)}``."""
    if n < 1:
        raise InputError(f"order must be positive, got {n}")
    p = a.p
    if p == 0:
        return [a.a_p ** (n - 1) * a.h[1 - r] for r in range(1, n + 1)]
    pre = _sign(p * (n - 1)) * a.a_p ** (n - 1)
    return [pre * _skew_value(a, SkewPartition.of((n - 1,) * (p - 1) + (n - r,))) for r in range(1, n + 1)]


# ---------------------------------------------------------------------------
# eigenvectors
# ---------------------------------------------------------------------------


def _shifted(a: LaurentSpec, req: EigenRequest) -> LaurentSpec:
    if a.p < 1:
        raise RequiresPositiveP("eigenvector formula needs p >= 1")
    if req.n < 1:
        raise InputError(f"order must be positive, got {req.n}")
    b = a.shift(req.x, req.shifted_roots)
    if b.roots is None and b.backend == FLOAT and not b.series:
        b = b.with_roots()
    return b


def eigenvector(a: LaurentSpec, req: EigenRequest) -> list:
    """``v_r = s_{((n-1)^(p-1), n-r)}`` at the roots of ``a - x``.

    ``T_n(a) v - x v = det T_n(a - x) * e_1``, so ``v`` is an eigenvector
    exactly when ``x`` is an eigenvalue. ``v`` may vanish identically.
    """
    b = _shifted(a, req)
    n, p = req.n, a.p
    return [_skew_value(b, SkewPartition.of((n - 1,) * (p - 1) + (n - r,))) for r in range(1, n + 1)]


class GeometricForm(NamedTuple):
    coefficients: list
    vector: list
    path: str
    roots: RootList


def _cofactor_first_column(D: list[list], j: int):
    # (adj D)_{j,1} = (-1)^(1+j) det(D without row 1 and column j), 1-based j
    minor_matrix = [row[:j - 1] + row[j:] for row in D[1:]]
    return _sign(1 + j) * det_scalar(minor_matrix) if minor_matrix else 1


def geometric_form(a: LaurentSpec, req: EigenRequest) -> GeometricForm:
    """Eigenvector as ``v_r = sum_j C_j z_j^(n-r+w-p)``; derivative columns
    (``q``-th derivative of ``t^k``) replace repeated roots."""
    if a.series:
        raise MethodUnavailable("the geometric-progression form needs a finite band")
    b = _shifted(a, req)
    roots = b.require_roots()
    w, p, n = b.w, a.p, req.n
    if not 1 <= p <= w:
        raise MethodUnavailable(f"the geometric-progression form needs 1 <= p <= w (p={p}, w={w})")
    exponents = [n + w - 1 - j if j < p else w - 1 - j for j in range(w)]
    D = generalized_vandermonde(exponents, roots)
    V = vandermonde_det(roots)
    check_denominator(V, generalized_vandermonde(list(range(w - 1, -1, -1)), roots), roots.backend)
    sign = _sign(p - 1)
    C = [to_backend(sign * _cofactor_first_column(D, j) / V, roots.backend) for j in range(1, w + 1)]
    cols = vandermonde_columns(roots)
    v = []
    for r in range(1, n + 1):
        total = to_backend(0, roots.backend)
        for c, (z, q) in zip(C, cols):
            total = total + c * column_entry(z, q, n - r + w - p)
        v.append(total)
    path = "simple" if roots.is_simple else "confluent"
    return GeometricForm(C, v, path, roots)


def eigen_residual(a: LaurentSpec, x, v: Sequence) -> list:
    """``T_n(a) v - x v`` by direct banded multiplication."""
    n = len(v)
    backend = FLOAT if a.backend == FLOAT or backend_of(list(v) + [x]) == FLOAT else EXACT
    lo = a.p - a.w if not a.series else -(n - 1)
    out = []
    for j in range(n):
        acc = to_backend(0, backend) - x * v[j]
        for k in range(max(0, j - a.p), min(n, j - lo + 1)):
            c = a.coeff(j - k)
            if c != 0:
                acc = acc + c * v[k]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# skew Schur values as Toeplitz minors
# ---------------------------------------------------------------------------


def skew_schur_as_minor(sp: SkewPartition, roots) -> object:
    """``s_{lam/mu}`` as a signed minor of the upper triangular ``T_n`` with
    ``a(t) = prod(1 - z_j / t)`` (``p = 0``), ``n = lam_1 + len(lam)``.

    The minor is taken by elimination on the struck matrix, so this does
    not reuse the minor formula.
    """
    sp = sp if isinstance(sp, SkewPartition) else SkewPartition.of(*sp)
    if not sp.is_valid:
        rl = roots if isinstance(roots, RootList) else RootList(list(roots))
        return to_backend(0, rl.backend)
    lam, mu = sp.outer, sp.inner
    L = len(lam)
    if L == 0:
        rl = roots if isinstance(roots, RootList) else RootList(list(roots))
        return to_backend(1, rl.backend)
    a = LaurentSpec.from_roots(0, 1, list(roots))
    n = lam[0] + L
    mu_pad = mu.padded(L)
    xi = [lam[L - j] + j for j in range(1, L + 1)]
    eta = [mu_pad[L - j] + j for j in range(1, L + 1)]
    IndexSet(n, xi), IndexSet(n, eta)
    T = toeplitz_matrix(a, n)
    rows = [j for j in range(1, n + 1) if j not in set(xi)]
    cols = [k for k in range(1, n + 1) if k not in set(eta)]
    sub = [[T[j - 1][k - 1] for k in cols] for j in rows]
    value = det_scalar(sub) if sub else 1
    return to_backend(_sign(lam.weight + mu.weight) * value, a.backend)


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------


def find_roots(a: LaurentSpec, tol: float = 1e-12, max_iter: int = 500) -> RootList:
    """Roots of ``prod(t - z_j)`` by Aberth-Ehrlich iteration.

    Starts from points on a circle of radius ``|e_w|^(1/w)``; stops once
    every ``|P(z)| <= tol * sum_k |c_k| |z|^k``.
    """
    if a.series:
        raise RootsUnavailable("series-mode symbols have no roots")
    # monic P(t) = sum_k (-1)^k e_k t^(w-k), descending powers
    e = [complex(to_backend(c, FLOAT)) for c in a.e.coeffs]
    zeros = 0
    while len(e) > 1 and e[-1] == 0:
        e.pop()
        zeros += 1
    w = len(e) - 1
    coeffs = np.array([_sign(k) * e[k] for k in range(w + 1)], dtype=complex)
    found: list = []
    if w == 1:
        found = [-coeffs[1]]
    elif w > 1:
        found = list(_snap_clusters(_aberth(coeffs, tol, max_iter), coeffs))
    real_input = all(c.imag == 0 for c in e)
    cleaned = []
    for z in found:
        z = complex(z)
        if real_input and abs(z.imag) <= 1e-13 * max(1.0, abs(z)):
            z = complex(z.real, 0.0)
        cleaned.append(XFloat(z))
    cleaned += [XFloat(0.0)] * zeros
    return RootList(cleaned, backend=FLOAT)


# divisor enumeration stops being cheap past this size
_RATIONAL_ROOT_LIMIT = 10**12


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small, large = [], []
    d = 1
    while d * d <= k:
        if k % d == 0:
            small.append(d)
            if d * d != k:
                large.append(k // d)
        d += 1
    return small + large[::-1]


def rational_roots(a: LaurentSpec) -> RootList | None:
    """All roots as exact rationals when ``prod(t - z_j)`` splits over Q,
    else None (also None when the coefficients are too large to search)."""
    if a.series or a.backend != EXACT:
        return None
    # ascending coefficients of the monic polynomial, cleared to integers
    e = [Fraction(c) for c in a.e.coeffs]
    w = len(e) - 1
    poly = [_sign(k) * e[k] for k in range(w, -1, -1)]
    lcm = 1
    for c in poly:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    poly = [int(c * lcm) for c in poly]
    found: list[Fraction] = []
    while poly and poly[0] == 0:
        found.append(Fraction(0))
        poly = poly[1:]
    while len(poly) > 1:
        lead, const = poly[-1], poly[0]
        if abs(lead) > _RATIONAL_ROOT_LIMIT or abs(const) > _RATIONAL_ROOT_LIMIT:
            return None
        root = None
        for num in _divisors(const):
            for den in _divisors(lead):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if sum(c * cand ** k for k, c in enumerate(poly)) == 0:
                        root = cand
                        break
                if root is not None:
                    break
            if root is not None:
                break
        if root is None:
            return None
        # synthetic division by (t - root), descending
        desc = poly[::-1]
        out = [Fraction(desc[0])]
        for c in desc[1:-1]:
            out.append(c + root * out[-1])
        den = 1
        for c in out:
            den = den * c.denominator // math.gcd(den, c.denominator)
        poly = [int(c * den) for c in reversed(out)]
        found.append(root)
    return RootList(found, backend=EXACT)


# candidate multiple-root clusters: members within this relative distance
_CLUSTER_RTOL = 1e-3
# derivative residual accepted at a cluster mean, relative to its scale
_CLUSTER_DERIV_RTOL = 1e-11


def _snap_clusters(z: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Replace a cluster of approximations to one multiple root by its mean.

    Simple iteration scatters a root of multiplicity k over a circle of radius
    about eps^(1/k). The mean is polished by Newton steps on P^(k-1), where
    the root is simple, and the cluster is accepted only if P, P', ...,
    P^(k-1) all vanish there to working accuracy.
    """
    z = np.array(z, dtype=complex)
    w = len(z)
    scale = max(1.0, float(np.max(np.abs(z))))
    parent = list(range(w))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(w):
        for j in range(i):
            if abs(z[i] - z[j]) <= _CLUSTER_RTOL * scale:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(w):
        groups.setdefault(find(i), []).append(i)
    for members in groups.values():
        k = len(members)
        if k == 1:
            continue
        centre = complex(np.mean(z[members]))
        top = coeffs
        for _ in range(k - 1):
            top = np.polyder(top)
        slope = np.polyder(top)
        for _ in range(20):
            d = np.polyval(slope, centre)
            if d == 0:
                break
            step = np.polyval(top, centre) / d
            centre -= step
            if abs(step) <= 1e-16 * max(1.0, abs(centre)):
                break
        poly, absc, ok = coeffs, np.abs(coeffs), True
        for _ in range(k):
            if abs(np.polyval(poly, centre)) > _CLUSTER_DERIV_RTOL * np.polyval(absc, abs(centre)):
                ok = False
                break
            poly, absc = np.polyder(poly), np.polyder(absc)
        if ok:
            z[members] = centre
    return z


def _aberth(coeffs: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    w = len(coeffs) - 1
    deriv = np.polyder(coeffs)
    radius = abs(coeffs[-1]) ** (1.0 / w)
    if radius == 0 or not math.isfinite(radius):
        radius = 1.0
    # an offset angle keeps guesses off the real axis for real polynomials
    z = radius * np.exp(1j * (2 * np.pi * np.arange(w) / w + 0.4))
    absc = np.abs(coeffs)
    for _ in range(max_iter):
        pz = np.polyval(coeffs, z)
        scale = np.polyval(absc, np.abs(z))
        if np.all(np.abs(pz) <= tol * scale):
            return z
        dz = np.polyval(deriv, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        repulsion = (1.0 / diff).sum(axis=1) - 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dz
            step = ratio / (1.0 - ratio * repulsion)
        step = np.where(np.isfinite(step), step, 0.0)
        step = np.where(np.abs(pz) <= tol * scale, 0.0, step)
        z = z - step
    raise NonConvergence(f"Aberth iteration did not converge in {max_iter} steps")


# ---------------------------------------------------------------------------
# batch producers
# ---------------------------------------------------------------------------


def worker_count() -> int:
    env = os.environ.get("SCHUR_TOEPLITZ_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"SCHUR_TOEPLITZ_THREADS must be an integer, got {env!r}") from None
    return min(8, os.cpu_count() or 1)


def _ordered_map(fn, items: list, workers: int | None) -> Iterator:
    workers = worker_count() if workers is None else max(1, workers)
    if workers == 1 or len(items) < 2:
        for item in items:
            yield item, fn(*item)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves input order, so output matches the sequential run
        yield from zip(items, pool.map(lambda args: fn(*args), items))


def adjugate_entries(a: LaurentSpec, n: int, method: str = "skew", workers: int | None = None) -> Iterator:
    """Yield ``(r, s, adj_{r,s})`` in row-major order."""
    if n < 1:
        raise InputError(f"order must be positive, got {n}")
    a.h  # build the shared h cache before fanning out
    items = [(r, s) for r in range(1, n + 1) for s in range(1, n + 1)]
    for (r, s), value in _ordered_map(lambda r, s: adjugate_entry(a, n, r, s, method), items, workers):
        yield r, s, value


def inverse_entries(a: LaurentSpec, n: int, method: str = "skew", workers: int | None = None) -> Iterator:
    det = determinant(a, n)
    if _is_singular(det):
        raise SingularMatrix(f"T_{n}(a) is singular")
    for r, s, value in adjugate_entries(a, n, method, workers):
        yield r, s, value / det


def eigenvector_entries(a: LaurentSpec, req: EigenRequest, workers: int | None = None) -> Iterator:
    """Yield ``(r, v_r)`` in order."""
    b = _shifted(a, req)
    n, p = req.n, a.p
    b.h
    items = [(r,) for r in range(1, n + 1)]

    def one(r):
        return _skew_value(b, SkewPartition.of((n - 1,) * (p - 1) + (n - r,)))

    for (r,), value in _ordered_map(one, items, workers):
        yield r, value


__all__ = [
    "LaurentSpec",
    "MinorRequest",
    "EigenRequest",
    "GeometricForm",
    "DETERMINANT_METHODS",
    "ADJUGATE_METHODS",
    "MINOR_VARIANTS",
    "toeplitz_matrix",
    "minor",
    "determinant",
    "dense_determinant",
    "banded_determinant",
    "adjugate_entry",
    "schur_sum_shapes",
    "summand_count",
    "inverse_entry",
    "adj_first_column",
    "eigenvector",
    "geometric_form",
    "eigen_residual",
    "skew_schur_as_minor",
    "find_roots",
    "rational_roots",
    "worker_count",
    "adjugate_entries",
    "inverse_entries",
    "eigenvector_entries",
]
