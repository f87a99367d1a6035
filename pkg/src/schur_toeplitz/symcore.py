"""Elementary and complete homogeneous symmetric polynomial sequences."""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .errors import RepeatedRoots, SeriesTruncation
from .scalars import EXACT, XFloat, backend_of, to_backend

# float roots closer than this (relative to max(1, max|z|)) are merged
ROOT_GROUP_RTOL = 1e-8


class RootList:
    """Roots ``z_1..z_w`` with their multiplicity grouping.

    Roots are reordered so that equal roots are contiguous (groups appear in
    order of first occurrence). Exact roots group by equality; float roots
    group when ``|z_i - z_j| <= 1e-8 * max(1, max_k |z_k|)``, and every member
    of a float group is replaced by the group mean.
    """

    def __init__(self, roots: Iterable, backend: str | None = None):
        raw = list(roots)
        if backend is None:
            backend = backend_of(raw)
        self.backend = backend
        values = [to_backend(z, backend) for z in raw]
        groups: list[list] = []
        if backend == EXACT:
            for z in values:
                for g in groups:
                    if g[0] == z:
                        g.append(z)
                        break
                else:
                    groups.append([z])
        else:
            scale = max([1.0] + [abs(complex(z)) for z in values])
            tol = ROOT_GROUP_RTOL * scale
            cz = [complex(z) for z in values]
            parent = list(range(len(values)))

            def find(i):
                while parent[i] != i:
                    parent[i] = parent[parent[i]]
                    i = parent[i]
                return i

            for i in range(len(cz)):
                for j in range(i):
                    if abs(cz[i] - cz[j]) <= tol:
                        parent[find(i)] = find(j)
            order: dict[int, list[int]] = {}
            for i in range(len(cz)):
                order.setdefault(find(i), []).append(i)
            for members in order.values():
                if len(members) == 1:
                    groups.append([values[members[0]]])
                else:
                    mean = XFloat(sum(cz[i] for i in members) / len(members))
                    groups.append([mean] * len(members))
        self.groups: list[tuple[object, int]] = [(g[0], len(g)) for g in groups]
        self.roots: tuple = tuple(z for g in groups for z in g)

    @property
    def w(self) -> int:
        return len(self.roots)

    @property
    def gamma(self) -> int:
        return len(self.groups)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.groups)

    @property
    def is_simple(self) -> bool:
        return self.gamma == self.w

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, k):
        return self.roots[k]

    def __repr__(self):
        return f"RootList({list(self.roots)!r})"


def _as_rootlist(roots) -> RootList:
    return roots if isinstance(roots, RootList) else RootList(roots)


class ElemSeq:
    """``e_0 = 1, e_1, ..., e_w``; zero outside ``0..w``.

    With ``series=True`` the supplied values are only a prefix of an infinite
    sequence, and indices past the prefix raise :class:`SeriesTruncation`.
    """

    def __init__(self, coeffs: Sequence, series: bool = False, backend: str | None = None):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("an e-sequence needs at least e_0")
        if backend is None:
            backend = backend_of(coeffs)
        self.backend = backend
        self.coeffs = tuple(to_backend(c, backend) for c in coeffs)
        if self.coeffs[0] != 1:
            raise ValueError(f"e_0 must be 1, got {coeffs[0]!r}")
        self.series = series

    @property
    def w(self) -> int | None:
        return None if self.series else len(self.coeffs) - 1

    @property
    def known_degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, r: int):
        if r < 0:
            return 0
        if r < len(self.coeffs):
            return self.coeffs[r]
        if self.series:
            raise SeriesTruncation(
                f"e_{r} requested but the series was supplied only up to e_{self.known_degree}"
            )
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        tag = ", series" if self.series else ""
        return f"ElemSeq({list(self.coeffs)!r}{tag})"


def elem_from_roots(roots) -> ElemSeq:
    """Coefficients of ``prod(1 + z_j t) = sum e_r t^r``."""
    roots = _as_rootlist(roots)
    e: list = [to_backend(1, roots.backend)]
    for z in roots:
        nxt = e + [0]
        for r in range(len(e), 0, -1):
            nxt[r] = nxt[r] + z * e[r - 1]
        e = nxt
    return ElemSeq(e, backend=roots.backend)


def h_at_distinct_roots(r: int, roots):
    """``h_r`` at pairwise distinct roots via the divided-difference formula.

    ``sum_j z_j^(r+w-1) / prod_{k != j} (z_j - z_k)``; powers by binary
    exponentiation.
    """
    roots = _as_rootlist(roots)
    if not roots.is_simple:
        raise RepeatedRoots(f"roots have multiplicities {roots.multiplicities}")
    if r < 0:
        return 0
    w = roots.w
    if w == 0:
        return to_backend(1 if r == 0 else 0, roots.backend)
    total = 0
    for j, zj in enumerate(roots):
        denom = 1
        for k, zk in enumerate(roots):
            if k != j:
                denom = denom * (zj - zk)
        total = total + zj ** (r + w - 1) / denom
    return total


class HomSeq:
    """Lazily grown ``h_0, h_1, ...`` for an e-sequence or root list.

    Strategy: the divided-difference closed form when simple roots are
    available; otherwise the convolution recurrence
    ``h_j = sum_{k=1..j} (-1)^(k+1) e_k h_{j-k}``, which also covers series
    mode. The recurrence cache is append-only and grows geometrically.
    Reads and extensions are serialized by a lock; extension is idempotent.
    """

    def __init__(self, e: ElemSeq | None = None, roots: RootList | None = None):
        if e is None and roots is None:
            raise ValueError("HomSeq needs an e-sequence or roots")
        if roots is not None:
            roots = _as_rootlist(roots)
        if e is None:
            e = elem_from_roots(roots)
        self.e = e
        self.roots = roots
        self.backend = roots.backend if roots is not None else e.backend
        self._lock = threading.Lock()
        self._cache: list = [to_backend(1, self.backend)]
        self._closed: dict[int, object] = {}
        self._weights = None
        self.strategy = "closed_form" if roots is not None and roots.is_simple else "recurrence"

    # ``h_r = sum_j c_j z_j^r`` with ``c_j = z_j^(w-1) / prod_{k != j}(z_j - z_k)``
    def _closed_weights(self):
        if self._weights is None:
            zs = self.roots.roots
            w = len(zs)
            weights = []
            for j, zj in enumerate(zs):
                denom = 1
                for k, zk in enumerate(zs):
                    if k != j:
                        denom = denom * (zj - zk)
                weights.append(zj ** (w - 1) / denom)
            self._weights = weights
        return self._weights

    def _extend_to(self, degree: int):
        cache = self._cache
        if degree < len(cache):
            return
        target = max(degree + 1, 2 * len(cache))
        e = self.e
        w = e.w
        if e.series:
            # grow only as far as the series allows, but still report the request
            target = min(target, e.known_degree + 1)
            if degree > e.known_degree:
                raise SeriesTruncation(
                    f"h_{degree} needs e up to e_{degree}; supplied only up to e_{e.known_degree}"
                )
        for j in range(len(cache), target):
            acc = 0
            top = j if w is None else min(j, w)
            for k in range(1, top + 1):
                term = e[k] * cache[j - k]
                acc = acc + term if k % 2 else acc - term
            cache.append(to_backend(acc, self.backend))

    def __getitem__(self, r: int):
        if r < 0:
            return 0
        if self.strategy == "closed_form":
            with self._lock:
                cached = self._closed.get(r)
                if cached is None:
                    cached = self._closed_value(r)
                    self._closed[r] = cached
            return cached
        with self._lock:
            self._extend_to(r)
            return self._cache[r]

    def _closed_value(self, r: int):
        if r == 0:
            return to_backend(1, self.backend)
        total = to_backend(0, self.backend)
        for c, z in zip(self._closed_weights(), self.roots.roots):
            total = total + c * z ** r
        return total

    def prefetch(self, lo: int, hi: int):
        """Fill degrees ``lo..hi`` using one binary power per root plus
        repeated multiplication, for the closed-form strategy."""
        lo = max(lo, 0)
        if hi < lo:
            return
        if self.strategy != "closed_form":
            with self._lock:
                self._extend_to(hi)
            return
        with self._lock:
            missing = [r for r in range(lo, hi + 1) if r not in self._closed]
            if not missing:
                return
            weights = self._closed_weights()
            zs = self.roots.roots
            start = missing[0]
            powers = [c * z ** start for c, z in zip(weights, zs)]
            for r in range(start, hi + 1):
                if r not in self._closed:
                    total = to_backend(0, self.backend)
                    for term in powers:
                        total = total + term
                    self._closed[r] = to_backend(1, self.backend) if r == 0 else total
                if r < hi:
                    powers = [t * z for t, z in zip(powers, zs)]

    def values(self, upto: int) -> list:
        self.prefetch(0, upto)
        return [self[r] for r in range(upto + 1)]

    def __repr__(self):
        return f"HomSeq(strategy={self.strategy!r}, backend={self.backend!r})"


def h_from_e(e: ElemSeq, degmax: int) -> HomSeq:
    """HomSeq from an e-sequence via the convolution recurrence, filled to ``degmax``."""
    if degmax < 0:
        raise ValueError("degmax must be nonnegative")
    h = HomSeq(e=e)
    h.prefetch(0, degmax)
    return h


def h_provider(symbol) -> HomSeq:
    """HomSeq for a symbol (anything with ``e`` and ``roots`` attributes)."""
    return HomSeq(e=symbol.e, roots=symbol.roots)


def e_h_residual(e: ElemSeq, h: HomSeq, j: int):
    """``sum_{k=0..j} (-1)^k e_k h_{j-k}``; equals 1 for j = 0 and 0 otherwise."""
    acc = 0
    for k in range(j + 1):
        term = e[k] * h[j - k]
        acc = acc + term if k % 2 == 0 else acc - term
    return acc


__all__ = [
    "ROOT_GROUP_RTOL",
    "RootList",
    "ElemSeq",
    "HomSeq",
    "elem_from_roots",
    "h_from_e",
    "h_at_distinct_roots",
    "h_provider",
    "e_h_residual",
]
