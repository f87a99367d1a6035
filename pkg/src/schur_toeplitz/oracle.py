"""Brute-force references for the test suite.

Nothing here calls the fast evaluators; each function follows a textbook
definition directly and refuses inputs beyond desk scale.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import OrderTooLarge, SizeTooLarge
from .partitions import SkewPartition

LAPLACE_MAX_ORDER = 10
COFACTOR_MAX_ORDER = 8
SSYT_MAX_CELLS = 10
SSYT_MAX_VARS = 4
BRUTE_MAX_VARS = 4
BRUTE_MAX_DEGREE = 8


def _check_square(M: Sequence[Sequence]) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    return n


def _laplace(M: list[list]):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for k in range(n):
        if M[0][k] == 0:
            continue
        sub = [row[:k] + row[k + 1:] for row in M[1:]]
        term = M[0][k] * _laplace(sub)
        total = total + term if k % 2 == 0 else total - term
    return total


def det_laplace(M: Sequence[Sequence]):
    """Cofactor expansion along the first row."""
    n = _check_square(M)
    if n > LAPLACE_MAX_ORDER:
        raise OrderTooLarge(f"Laplace expansion limited to order {LAPLACE_MAX_ORDER}, got {n}")
    return _laplace([list(row) for row in M])


def adj_cofactor(M: Sequence[Sequence]) -> list[list]:
    """``adj(M)[r][s] = (-1)^(r+s) det(M without row s and column r)``."""
    n = _check_square(M)
    if n > COFACTOR_MAX_ORDER:
        raise OrderTooLarge(f"cofactor adjugate limited to order {COFACTOR_MAX_ORDER}, got {n}")
    rows = [list(row) for row in M]
    out = []
    for r in range(n):
        line = []
        for s in range(n):
            sub = [row[:r] + row[r + 1:] for j, row in enumerate(rows) if j != s]
            value = _laplace(sub)
            line.append(value if (r + s) % 2 == 0 else -value)
        out.append(line)
    return out


class Tableau(NamedTuple):
    """Semistandard filling of a skew shape; ``rows[j]`` fills row ``j`` from
    column ``inner[j]`` onward."""

    shape: SkewPartition
    rows: tuple[tuple[int, ...], ...]

    def is_semistandard(self) -> bool:
        outer, inner = self.shape.outer, self.shape.inner.padded(len(self.shape.outer))
        cell = {}
        for j, row in enumerate(self.rows):
            if len(row) != outer[j] - inner[j]:
                return False
            for i, v in enumerate(row):
                cell[(j, inner[j] + i)] = v
        for (j, c), v in cell.items():
            if (j, c + 1) in cell and cell[(j, c + 1)] < v:
                return False
            if (j + 1, c) in cell and cell[(j + 1, c)] <= v:
                return False
        return True


def semistandard_tableaux(sp: SkewPartition, w: int):
    """All semistandard fillings with entries in ``1..w``, row by row."""
    outer = sp.outer
    inner = sp.inner.padded(len(outer)) if len(sp.inner) <= len(outer) else None
    if inner is None or any(i > o for i, o in zip(inner, outer)):
        return

    def rows_from(j: int, above: dict):
        if j == len(outer):
            yield ()
            return
        lo_col, hi_col = inner[j], outer[j]
        for row in _row_fillings(lo_col, hi_col, w, above):
            here = {lo_col + i: v for i, v in enumerate(row)}
            for rest in rows_from(j + 1, here):
                yield (row,) + rest

    for rows in rows_from(0, {}):
        yield Tableau(sp, rows)


def _row_fillings(lo_col: int, hi_col: int, w: int, above: dict):
    def rec(col: int, prev: int):
        if col == hi_col:
            yield ()
            return
        start = max(prev, above.get(col, 0) + 1)
        for v in range(start, w + 1):
            for rest in rec(col + 1, v):
                yield (v,) + rest

    yield from rec(lo_col, 1)


def ssyt_skew_schur(sp: SkewPartition, roots: Sequence):
    """``sum over semistandard tableaux T of prod_{cells} z_{T(cell)}``."""
    sp = sp if isinstance(sp, SkewPartition) else SkewPartition.of(*sp)
    roots = list(roots)
    if sp.outer.weight > SSYT_MAX_CELLS or len(roots) > SSYT_MAX_VARS:
        raise SizeTooLarge(
            f"tableau enumeration limited to |outer| <= {SSYT_MAX_CELLS} and w <= {SSYT_MAX_VARS}"
        )
    total = 0
    for T in semistandard_tableaux(sp, len(roots)):
        term = 1
        for row in T.rows:
            for v in row:
                term = term * roots[v - 1]
        total = total + term
    return total


def sym_bruteforce(kind: str, r: int, roots: Sequence):
    """``e_r`` (sum over r-subsets) or ``h_r`` (sum over r-multisets) by enumeration."""
    roots = list(roots)
    if len(roots) > BRUTE_MAX_VARS or r > BRUTE_MAX_DEGREE:
        raise SizeTooLarge(f"enumeration limited to w <= {BRUTE_MAX_VARS} and r <= {BRUTE_MAX_DEGREE}")
    if r < 0:
        return 0
    if kind == "e":
        combos = itertools.combinations(roots, r)
    elif kind == "h":
        combos = itertools.combinations_with_replacement(roots, r)
    else:
        raise ValueError(f"kind must be 'e' or 'h', got {kind!r}")
    total = 0
    for combo in combos:
        term = 1
        for z in combo:
            term = term * z
        total = total + term
    return total


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


__all__ = [
    "det_laplace",
    "adj_cofactor",
    "Tableau",
    "semistandard_tableaux",
    "ssyt_skew_schur",
    "sym_bruteforce",
    "mat_mul",
]
