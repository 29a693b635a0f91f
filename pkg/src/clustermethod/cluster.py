"""Cluster numbers r_{n,k}: generic computation and pattern-specific fast paths."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import cache
from .config import settings
from .errors import InvalidInput, ResourceLimit
from .perm import PatternSet, Permutation, all_patterns, as_pattern_set, is_non_overlapping, reduce
from .poset import (
    ClusterPoset,
    OccurrenceLayout,
    build_cluster_poset,
    count_linear_extensions,
    try_build_cluster_poset,
)
from .transfer import transfer_counts


@dataclass(frozen=True)
class ClusterPolynomial:
    """r_n(t) = sum_k r_{n,k} t^k for one length n; ``terms`` are sorted (k, r_{n,k})."""

    n: int
    terms: tuple = ()

    @classmethod
    def from_dict(cls, n: int, coeffs: dict) -> "ClusterPolynomial":
        return cls(n, tuple(sorted((int(k), int(v)) for k, v in coeffs.items() if v)))

    @property
    def coefficients(self) -> dict:
        return dict(self.terms)

    def __getitem__(self, k: int) -> int:
        return self.coefficients.get(k, 0)

    def __call__(self, t):
        return sum((c * t**k for k, c in self.terms), t * 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total(self) -> int:
        return sum(c for _, c in self.terms)

    def to_json(self) -> dict:
        return {str(k): str(c) for k, c in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*t^{k}" if c != 1 else f"t^{k}" for k, c in self.terms)


@dataclass(frozen=True)
class FeetTable:
    """Refined 2143 cluster numbers: ``values[l]`` counts k-clusters of length n with pi_1 = l + 2."""

    n: int
    k: int
    values: dict

    def total(self) -> int:
        return sum(self.values.values())


# -- layouts ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _overlap_ok(left: Permutation, right: Permutation, overlap: int) -> bool:
    return reduce(left[len(left) - overlap :]) == reduce(right[:overlap])


def _successors(pset: PatternSet, start: int, idx: int, n: int):
    lengths = [len(p) for p in pset]
    end = start + lengths[idx] - 1
    for nxt in range(start + 1, end + 1):
        for j, m in enumerate(lengths):
            new_end = nxt + m - 1
            if new_end > end and new_end <= n and _overlap_ok(pset[idx], pset[j], end - nxt + 1):
                yield nxt, j


def iter_layouts(patterns, n: int) -> Iterator[OccurrenceLayout]:
    """Cluster layouts of total length n in lexicographic order of (start, pattern)."""
    pset = as_pattern_set(patterns)
    lengths = [len(p) for p in pset]
    marks = []

    def extend(start, idx):
        marks.append((start, idx))
        if start + lengths[idx] - 1 == n:
            yield OccurrenceLayout(tuple(marks), n)
        else:
            for nxt, j in _successors(pset, start, idx, n):
                yield from extend(nxt, j)
        marks.pop()

    for j, m in enumerate(lengths):
        if m <= n:
            yield from extend(1, j)


def enumerate_layouts(patterns, n: int) -> list:
    """Every occurrence layout of length n; for one pattern the gaps range over its overlap set."""
    return list(iter_layouts(patterns, n))


def count_layouts(patterns, n: int) -> int:
    pset = as_pattern_set(patterns)
    lengths = [len(p) for p in pset]

    @lru_cache(maxsize=None)
    def ways(start, idx):
        if start + lengths[idx] - 1 == n:
            return 1
        return sum(ways(nxt, j) for nxt, j in _successors(pset, start, idx, n))

    return sum(ways(1, j) for j, m in enumerate(lengths) if m <= n)


# -- generic cluster polynomials --------------------------------------------

_memo: dict = {}


def _poset_polynomial(pset: PatternSet, n: int, budget: int | None = None) -> ClusterPolynomial:
    coeffs: dict = {}
    for layout in iter_layouts(pset, n):
        poset = try_build_cluster_poset(pset, layout)
        if poset is None:
            continue
        coeffs[layout.k] = coeffs.get(layout.k, 0) + count_linear_extensions(poset, budget=budget)
    return ClusterPolynomial.from_dict(n, coeffs)


def _check_n(n: int) -> None:
    if n < 0:
        raise InvalidInput("n must be >= 0")
    if n > settings.cluster_n_max:
        raise ResourceLimit(f"n={n} exceeds cluster cap {settings.cluster_n_max}")


def cluster_polynomials(patterns, n_max: int, method: str = "auto") -> list:
    """Cluster polynomials for n = 0..n_max (index n).

    ``method`` is ``"poset"`` (layouts plus linear extensions), ``"transfer"``
    (insertion DP) or ``"auto"``: the poset route while the layout count and
    poset sizes stay small, the transfer route otherwise.  All give identical
    values.
    """
    pset = as_pattern_set(patterns)
    _check_n(n_max)
    key = pset.canonical()
    if method == "auto":
        have = _memo.get(key, [])
        if len(have) > n_max:
            return have[: n_max + 1]
        polys = _from_disk(pset, n_max)
        if polys is None:
            polys = _auto(pset, n_max)
            _to_disk(pset, polys)
        if len(polys) > len(have):
            _memo[key] = polys
        return polys[: n_max + 1]
    if method == "poset":
        return [_poset_polynomial(pset, n) for n in range(n_max + 1)]
    if method == "transfer":
        counts = transfer_counts(pset, n_max)
        return [ClusterPolynomial.from_dict(n, c) for n, c in enumerate(counts)]
    raise InvalidInput(f"unknown method {method!r}")


def _auto(pset: PatternSet, n_max: int) -> list:
    layouts = sum(count_layouts(pset, n) for n in range(pset.min_length, n_max + 1))
    if layouts <= settings.layout_budget and n_max <= settings.extension_cap:
        try:
            return [_poset_polynomial(pset, n, budget=50_000) for n in range(n_max + 1)]
        except ResourceLimit:
            pass
    counts = transfer_counts(pset, n_max)
    return [ClusterPolynomial.from_dict(n, c) for n, c in enumerate(counts)]


def _from_disk(pset: PatternSet, n_max: int):
    if not settings.cache_dir:
        return None
    polys = []
    for n in range(n_max + 1):
        rec = cache.cache_get(settings.cache_dir, pset.canonical(), n)
        if rec is None:
            return None
        polys.append(ClusterPolynomial.from_dict(n, rec))
    return polys


def _to_disk(pset: PatternSet, polys: list) -> None:
    if not settings.cache_dir:
        return
    for poly in polys:
        cache.cache_put(settings.cache_dir, pset.canonical(), poly.n, poly.coefficients)


def cluster_polynomial(patterns, n: int, method: str = "auto") -> ClusterPolynomial:
    """r_n(t): the sum of linear-extension counts over all layouts of length n."""
    if method == "poset":
        _check_n(n)
        return _poset_polynomial(as_pattern_set(patterns), n)
    return cluster_polynomials(patterns, n, method)[n]


def clear_memo() -> None:
    _memo.clear()


# -- fast paths -------------------------------------------------------------


def monotone_cluster_coeffs(m: int, N: int) -> list:
    """Expansion of t x^m / (1 - t(x + ... + x^{m-1})) through x^N, index n."""
    if m < 2:
        raise InvalidInput("m must be >= 2")
    rows: list = [dict() for _ in range(N + 1)]
    for n in range(m, N + 1):
        row: dict = {1: 1} if n == m else {}
        for d in range(1, m):
            if n - d >= m:
                for k, c in rows[n - d].items():
                    row[k + 1] = row.get(k + 1, 0) + c
        rows[n] = row
    return [ClusterPolynomial.from_dict(n, r) for n, r in enumerate(rows)]


def _binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


@lru_cache(maxsize=None)
def _nonoverlap_realizable(a: int, b: int, m: int) -> bool:
    return any(s[0] == a and s[-1] == b and is_non_overlapping(s) for s in all_patterns(m))


def nonoverlap_block_poset(a: int, b: int, m: int, k: int) -> ClusterPoset:
    """The single cluster poset of a non-overlapping pattern with first entry a and last b.

    Built from the shape alone: a central chain of m + (b-a)(k-1) elements
    with k-1 chains of m-b elements hanging above it and k-1 chains of a-1
    elements hanging below it, one of each at every shared entry.
    """
    pairs = []
    size = 0

    def new():
        nonlocal size
        size += 1
        return size

    spine = [new() for _ in range(a - 1)]
    shared = new()
    spine.append(shared)
    for j in range(k):
        for _ in range(b - a - 1):
            spine.append(new())
        top = new()
        spine.append(top)
        if j < k - 1:
            above = [new() for _ in range(m - b)]
            below = [new() for _ in range(a - 1)]
            pairs += list(zip([top] + above, above))
            pairs += list(zip(below, below[1:] + [top]))
    spine += [new() for _ in range(m - b)]
    pairs += list(zip(spine, spine[1:]))
    return ClusterPoset.from_relations(size, pairs)


def nonoverlapping_d(a: int, b: int, m: int, k: int) -> int:
    """d_k: clusters of k occurrences of a non-overlapping pattern with sigma_1=a, sigma_m=b."""
    if not (1 <= a < b <= m) or k < 1:
        raise InvalidInput(f"need 1 <= a < b <= m and k >= 1, got {(a, b, m, k)}")
    if m > 9:
        raise ResourceLimit("realizability search limited to m <= 9")
    if not _nonoverlap_realizable(a, b, m):
        raise InvalidInput(f"no non-overlapping pattern of length {m} starts with {a} and ends with {b}")
    if a == 1:
        d = 1
        for j in range(2, k + 1):
            d *= math.comb((j - 1) * (m - 1) + m - b, m - b)
        return d
    return count_linear_extensions(nonoverlap_block_poset(a, b, m, k))


def nonoverlapping_d2_closed_form(a: int, b: int, m: int) -> int:
    return math.comb(a + b - 2, a - 1) * math.comb(2 * m - a - b, m - b)


@lru_cache(maxsize=None)
def rec1423(n: int, k: int) -> int:
    """1423 cluster numbers by the block recurrence."""
    if n <= 3:
        return 1 if (n, k) == (1, 0) else 0
    if k < 1:
        return 0
    return sum(
        math.comb(n - i - 1, i - 1) * rec1423(n - 2 * i + 1, k - i + 1) for i in range(2, n // 2 + 1)
    )


@lru_cache(maxsize=None)
def rec1423_signed(n: int) -> int:
    """s_n = sum_k (-1)^k cl_{n,k}, by its own recurrence."""
    if n <= 3:
        return 1 if n == 1 else 0
    return sum(
        (-1) ** (i - 1) * math.comb(n - i - 1, i - 1) * rec1423_signed(n - 2 * i + 1)
        for i in range(2, n // 2 + 1)
    )


@lru_cache(maxsize=None)
def _cl2143(n: int, k: int, ell: int) -> int:
    # no cluster has zero occurrences, so the chain term needs k >= 1
    if k < 1 or ell < 0:
        return 0
    total = 1 if (n == 2 * k + 2 and ell == 0) else 0
    for i in range(2, n // 2 + 1):
        for j in range(max(ell - 1, 0), k - 1):
            inner = _cl2143(n - 2 * i + 1, k - i + 1, j)
            if inner:
                total += (n - 2 * i - j) * (ell + 1) * _binom(2 * i + j - ell - 3, 2 * i - 4) * inner
    return total


def rec2143(n: int, k: int) -> FeetTable:
    """2143 cluster numbers refined by the number of feet below pi_1."""
    values = {ell: _cl2143(n, k, ell) for ell in range(n)}
    return FeetTable(n, k, {ell: v for ell, v in values.items() if v})


def fuss_catalan(s: int, k: int) -> int:
    """Number of s-Dyck paths with k up-steps."""
    if s < 2 or k < 0:
        raise InvalidInput("need s >= 2 and k >= 0")
    return math.comb(s * k, k) // ((s - 1) * k + 1)


def dense_pattern(s: int, m: int) -> Permutation:
    """1 3 4 ... (s+1) 2 (s+2) ... m."""
    return Permutation([1, *range(3, s + 2), 2, *range(s + 2, m + 1)])


def dense_cluster_count(s: int, m: int, k: int) -> int:
    """Linear extensions of the dense k-cluster poset (consecutive marks s apart)."""
    if s < 2 or not (s + 2 <= m <= 2 * s) or k < 1:
        raise InvalidInput(f"need s >= 2, s+2 <= m <= 2s, k >= 1; got s={s}, m={m}, k={k}")
    sigma = dense_pattern(s, m)
    n = (k - 1) * s + m
    layout = OccurrenceLayout.single([1 + j * s for j in range(k)], n)
    return count_linear_extensions(build_cluster_poset(PatternSet([sigma]), layout))


def sigma_family_member(a: int) -> Permutation:
    """12...a (a+2)(a+3)...(2a) (a+1)."""
    if a < 2:
        raise InvalidInput("family index starts at 2")
    return Permutation([*range(1, a + 1), *range(a + 2, 2 * a + 1), a + 1])


def sigma_family_set(n: int) -> PatternSet:
    if n < 4:
        raise InvalidInput("the family has no member shorter than 4")
    return PatternSet(sigma_family_member(a) for a in range(2, n // 2 + 1))


def sigma_family_polynomial(n: int, method: str = "poset") -> ClusterPolynomial:
    """Cluster polynomial (variable h) of the family set restricted to lengths <= n."""
    pset = sigma_family_set(n)
    if method == "poset":
        _check_n(n)
        return _poset_polynomial(pset, n)
    return cluster_polynomials(pset, n, method)[n]
