"""Partitions, skew shapes, index sets and the shape rules for Toeplitz minors.

Partitions are stored in canonical form (trailing zeros stripped), so
``Partition((5, 5, 3, 0)) == Partition((5, 5, 3))``. Index sets are 1-based.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, NamedTuple

from .errors import IndexSetError, NegativePartError, PartitionError, ShapeMismatch


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative integers, zeros stripped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        for x in parts:
            if x < 0:
                raise NegativePartError(f"negative part in {parts}")
        for x, y in zip(parts, parts[1:]):
            if x < y:
                raise PartitionError(f"{parts} is not weakly decreasing")
        end = len(parts)
        while end and parts[end - 1] == 0:
            end -= 1
        return super().__new__(cls, parts[:end])

    @classmethod
    def rectangle(cls, width: int, height: int) -> "Partition":
        return cls((width,) * height)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def weight(self) -> int:
        return sum(self)

    def part(self, j: int) -> int:
        """1-based part, zero beyond the length."""
        return self[j - 1] if 1 <= j <= len(self) else 0

    def padded(self, length: int) -> tuple[int, ...]:
        if length < len(self):
            raise ValueError(f"cannot pad {self} to length {length}")
        return tuple(self) + (0,) * (length - len(self))

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def __repr__(self):
        return f"Partition({tuple(self)})"


class SkewPartition(NamedTuple):
    """A pair outer/inner. Pairs with inner not inside outer are allowed."""

    outer: Partition
    inner: Partition

    @classmethod
    def of(cls, outer: Iterable[int], inner: Iterable[int] = ()) -> "SkewPartition":
        return cls(Partition(outer), Partition(inner))

    @property
    def is_valid(self) -> bool:
        return is_contained(self.inner, self.outer)

    @property
    def size(self) -> int:
        return self.outer.weight - self.inner.weight

    def to_json(self) -> dict:
        return {"outer": list(self.outer), "inner": list(self.inner)}

    @classmethod
    def from_json(cls, doc) -> "SkewPartition":
        if isinstance(doc, dict):
            return cls.of(doc.get("outer", ()), doc.get("inner", ()))
        return cls.of(doc)

    def __str__(self):
        outer = ",".join(map(str, self.outer))
        return f"({outer})/({','.join(map(str, self.inner))})" if self.inner else f"({outer})"


class IndexSet(tuple):
    """Strictly increasing tuple of indices in ``{1, ..., n}``."""

    def __new__(cls, n: int, entries: Iterable[int] = ()):
        entries = tuple(int(x) for x in entries)
        if n < 0:
            raise IndexSetError(f"ambient size must be nonnegative, got {n}")
        for x in entries:
            if not 1 <= x <= n:
                raise IndexSetError(f"index {x} outside 1..{n}")
        for x, y in zip(entries, entries[1:]):
            if x >= y:
                raise IndexSetError(f"{entries} is not strictly increasing")
        obj = super().__new__(cls, entries)
        obj.n = n
        return obj

    def __reduce__(self):
        return (IndexSet, (self.n, tuple(self)))

    @property
    def total(self) -> int:
        return sum(self)

    def complement(self) -> "IndexSet":
        return complement(self)

    def __repr__(self):
        return f"IndexSet({self.n}, {tuple(self)})"


def conjugate(lam: Iterable[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for x in lam if x >= k) for k in range(1, lam[0] + 1))


def is_contained(mu: Iterable[int], lam: Iterable[int]) -> bool:
    mu, lam = Partition(mu), Partition(lam)
    if len(mu) > len(lam):
        return False
    return all(x <= y for x, y in zip(mu, lam))


def flip(sp: SkewPartition) -> SkewPartition:
    """Rectangle-complement-and-reverse map; preserves the skew Schur value.

    With ``L = len(outer)`` and ``w = outer[0]``: the new outer shape is
    ``w - reversed(inner)`` and the new inner shape is ``w - reversed(outer)``
    (``inner`` zero-padded to ``L``). An inner shape longer than ``outer`` is
    already a zero-valued pair; it is returned with the defect kept.
    """
    lam, mu = sp.outer, sp.inner
    length = len(lam)
    if len(mu) > length:
        # keep the defect visible: the flipped pair is again not nested
        return SkewPartition(Partition(), mu)
    if length == 0:
        return SkewPartition(Partition(), Partition())
    top = lam[0]
    mu_pad = mu.padded(length)
    return SkewPartition(
        Partition(top - x for x in reversed(mu_pad)),
        Partition(top - x for x in reversed(lam)),
    )


def complement(s: IndexSet) -> IndexSet:
    present = set(s)
    return IndexSet(s.n, (k for k in range(1, s.n + 1) if k not in present))


def complement_closed_form(s: IndexSet) -> IndexSet:
    """Same set as :func:`complement`, via ``xi_j = j + #{k : rho_k - k < j}``."""
    d = s.n - len(s)
    shifted = [r - k for k, r in enumerate(s, start=1)]
    return IndexSet(s.n, (j + sum(1 for x in shifted if x < j) for j in range(1, d + 1)))


def all_index_sets(n: int, size: int) -> Iterator[IndexSet]:
    for combo in itertools.combinations(range(1, n + 1), size):
        yield IndexSet(n, combo)


class MinorShapes(NamedTuple):
    expanded: SkewPartition
    flipped: SkewPartition


def minor_shapes(n: int, p: int, xi: Iterable[int], eta: Iterable[int]) -> MinorShapes:
    """Skew shapes attached to the minor of ``T_n(a)`` with rows ``xi`` and
    columns ``eta`` struck out, for a symbol with ``p`` subdiagonals.

    Returns ``lambda/mu`` (expanded form) and ``alpha/beta`` (the flipped
    form); both give the same skew Schur value.
    """
    if p < 0:
        raise ValueError("p must be nonnegative")
    xi, eta = IndexSet(n, xi), IndexSet(n, eta)
    if len(xi) != len(eta):
        raise ShapeMismatch(f"{len(xi)} struck rows but {len(eta)} struck columns")
    d = len(xi)
    m = n - d
    lam = (m,) * p + tuple(xi[j - 1] - j for j in range(d, 0, -1))
    mu = tuple(eta[j - 1] - j for j in range(d, 0, -1))
    alpha = (m,) * p + tuple(m + j - eta[j - 1] for j in range(1, d + 1))
    beta = tuple(m + j - xi[j - 1] for j in range(1, d + 1))
    return MinorShapes(SkewPartition.of(lam, mu), SkewPartition.of(alpha, beta))


def skew_pieri(lam: Iterable[int], r: int) -> list[Partition]:
    """All ``nu`` with ``lam/nu`` a horizontal strip of size ``r``.

    Output is in lexicographically decreasing order.
    """
    lam = Partition(lam)
    if r < 1:
        raise ValueError("r must be positive")
    target = lam.weight - r
    if target < 0:
        return []
    length = len(lam)
    out: list[Partition] = []

    def extend(j: int, prefix: list[int], remaining: int):
        if j == length:
            if remaining == 0:
                out.append(Partition(prefix))
            return
        lo = lam[j + 1] if j + 1 < length else 0
        hi = lam[j]
        # the rest can contribute at most sum(lam[j+1:])
        room = sum(lam[j + 1:])
        for v in range(min(hi, remaining), lo - 1, -1):
            if remaining - v > room:
                break
            prefix.append(v)
            extend(j + 1, prefix, remaining - v)
            prefix.pop()

    extend(0, [], target)
    return out


def lr_special(n: int, p: int, r: int, s: int) -> list[Partition]:
    """Closed-form Pieri expansion of ``(n^p, s)/(r)``; matches :func:`skew_pieri`."""
    if n < 1 or p < 1 or not (1 <= r <= n) or not (1 <= s <= n):
        raise ValueError("need n, p >= 1 and 1 <= r, s <= n")
    return [
        Partition((n,) * (p - 1) + (n + s - r - k, k))
        for k in range(max(0, s - r), min(n - r, s) + 1)
    ]


def partitions_of(size: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[Partition]:
    """Partitions of ``size`` in lexicographically decreasing order."""
    if max_part is None:
        max_part = size
    if size == 0:
        yield Partition()
        return
    if max_len == 0:
        return
    for first in range(min(size, max_part), 0, -1):
        for rest in partitions_of(size - first, first, None if max_len is None else max_len - 1):
            yield Partition((first,) + tuple(rest))


def partitions_in_box(width: int, height: int) -> Iterator[Partition]:
    """Every partition fitting in a ``height x width`` rectangle."""
    def rec(prefix: tuple[int, ...], cap: int):
        yield Partition(prefix)
        if len(prefix) == height:
            return
        for x in range(min(cap, width), 0, -1):
            yield from rec(prefix + (x,), x)

    yield from rec((), width)
