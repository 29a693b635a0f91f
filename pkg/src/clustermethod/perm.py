"""Permutations, consecutive-pattern occurrences, overlap sets and the
brute-force oracle over the symmetric group."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .config import settings
from .errors import InvalidInput, ResourceLimit


class Permutation(tuple):
    """A permutation of ``{1..n}`` in one-line notation.

    Behaves like a tuple of ints; construction validates the bijection.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        values = tuple(int(v) for v in entries)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise InvalidInput(f"not a permutation of 1..{len(values)}: {values}")
        return super().__new__(cls, values)

    @property
    def length(self) -> int:
        return len(self)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for pos, v in enumerate(self, start=1):
            inv[v - 1] = pos
        return Permutation(inv)

    def reverse(self) -> "Permutation":
        return Permutation(self[::-1])

    def complement(self) -> "Permutation":
        m = len(self)
        return Permutation(m + 1 - v for v in self)

    def symmetry_orbit(self) -> frozenset:
        """The patterns reachable by reversal and complementation."""
        r = self.reverse()
        return frozenset({self, r, self.complement(), r.complement()})

    def __str__(self) -> str:
        if len(self) <= 9:
            return "".join(str(v) for v in self)
        return ",".join(str(v) for v in self)

    def __repr__(self) -> str:
        return f"Permutation('{self}')"


PatternLike = Union[Permutation, str, Sequence[int]]


def parse_pattern(text: PatternLike) -> Permutation:
    """Parse ``"1324"`` or ``"10,1,2,3,4,5,6,7,8,9"`` (or pass a sequence through)."""
    if isinstance(text, Permutation):
        return text
    if isinstance(text, str):
        s = text.strip()
        if not s:
            raise InvalidInput("empty pattern")
        try:
            if "," in s:
                values = [int(part) for part in s.split(",")]
            else:
                values = [int(ch) for ch in s]
        except ValueError:
            raise InvalidInput(f"cannot parse pattern {text!r}") from None
        return Permutation(values)
    return Permutation(text)


class PatternSet:
    """A nonempty ordered collection of distinct patterns, each of length >= 2."""

    __slots__ = ("patterns",)

    def __init__(self, patterns: Iterable[PatternLike]):
        pats = tuple(parse_pattern(p) for p in patterns)
        if not pats:
            raise InvalidInput("pattern set is empty")
        if len(set(pats)) != len(pats):
            raise InvalidInput("duplicate patterns in set")
        for p in pats:
            if len(p) < 2:
                raise InvalidInput(f"pattern {p} has length < 2")
        self.patterns = pats

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __getitem__(self, i: int) -> Permutation:
        return self.patterns[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, PatternSet) and self.patterns == other.patterns

    def __hash__(self) -> int:
        return hash(self.patterns)

    @property
    def min_length(self) -> int:
        return min(len(p) for p in self.patterns)

    @property
    def max_length(self) -> int:
        return max(len(p) for p in self.patterns)

    def canonical(self) -> str:
        return "+".join(str(p) for p in self.patterns)

    def __repr__(self) -> str:
        return f"PatternSet('{self.canonical()}')"


def as_pattern_set(obj) -> PatternSet:
    """Coerce a pattern, ``"a+b"`` string, or iterable of patterns to a PatternSet."""
    if isinstance(obj, PatternSet):
        return obj
    if isinstance(obj, Permutation):
        return PatternSet([obj])
    if isinstance(obj, str):
        return PatternSet(part for part in obj.split("+"))
    items = list(obj)
    if items and all(isinstance(v, int) for v in items):
        return PatternSet([items])
    return PatternSet(items)


@dataclass(frozen=True)
class UDistribution:
    """Number of permutations of size n with exactly e occurrences, for each e."""

    n: int
    coefficients: dict = field(default_factory=dict)

    @property
    def avoiders(self) -> int:
        return self.coefficients.get(0, 0)

    def total(self) -> int:
        return sum(self.coefficients.values())


def reduce(word: Sequence[int]) -> Permutation:
    """Relabel distinct positive integers to 1..k keeping their relative order."""
    values = list(word)
    if len(set(values)) != len(values):
        raise InvalidInput(f"duplicate entries in {values}")
    if any(v < 1 for v in values):
        raise InvalidInput("entries must be positive")
    rank = {v: i for i, v in enumerate(sorted(values), start=1)}
    return Permutation(rank[v] for v in values)


def reverse(p: PatternLike) -> Permutation:
    return parse_pattern(p).reverse()


def complement(p: PatternLike) -> Permutation:
    return parse_pattern(p).complement()


def _matches_at(p: Sequence[int], i: int, order: Sequence[int]) -> bool:
    # order = inverse pattern, 0-based offsets sorted by value
    return all(p[i + a] < p[i + b] for a, b in zip(order, order[1:]))


def occurrences(p: PatternLike, sigma: PatternLike) -> list[int]:
    """Sorted 1-based start positions of consecutive occurrences of sigma in p."""
    p = parse_pattern(p)
    sigma = parse_pattern(sigma)
    m = len(sigma)
    if m < 2:
        raise InvalidInput("pattern length must be >= 2")
    order = [v - 1 for v in sigma.inverse()]
    return [i + 1 for i in range(len(p) - m + 1) if _matches_at(p, i, order)]


@lru_cache(maxsize=None)
def _overlap_set(sigma: Permutation) -> frozenset:
    m = len(sigma)
    return frozenset(
        i for i in range(1, m) if reduce(sigma[i:]) == reduce(sigma[: m - i])
    )


def overlap_set(sigma: PatternLike) -> frozenset:
    """Shifts i in 1..m-1 at which two occurrences of sigma can overlap."""
    sigma = parse_pattern(sigma)
    if len(sigma) < 2:
        raise InvalidInput("pattern length must be >= 2")
    return _overlap_set(sigma)


def is_non_overlapping(sigma: PatternLike) -> bool:
    sigma = parse_pattern(sigma)
    return overlap_set(sigma) == {len(sigma) - 1}


def all_patterns(m: int) -> Iterator[Permutation]:
    for perm in itertools.permutations(range(1, m + 1)):
        yield Permutation(perm)


def nonoverlapping_fraction(m: int, cap: int = 8) -> Fraction:
    """Exact proportion of non-overlapping patterns in S_m (census)."""
    if m < 2:
        raise InvalidInput("m must be >= 2")
    if m > cap:
        raise ResourceLimit(f"m={m} exceeds census cap {cap}")
    count = sum(1 for s in all_patterns(m) if is_non_overlapping(s))
    return Fraction(count, math.factorial(m))


# -- brute force over S_n ---------------------------------------------------

_BLOCK = 9


@lru_cache(maxsize=None)
def _all_perms(k: int) -> np.ndarray:
    """All permutations of 0..k-1 as a (k!, k) int8 array."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int8)
    base = _all_perms(k - 1)
    blocks = []
    for v in range(k):
        rest = base + (base >= v)
        head = np.full((rest.shape[0], 1), v, dtype=np.int8)
        blocks.append(np.hstack([head, rest.astype(np.int8)]))
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def _perm_chunks(n: int) -> Iterator[np.ndarray]:
    """Yield S_n in row blocks of at most 9! rows (0-based values)."""
    tail = min(n, _BLOCK)
    base = _all_perms(tail)
    for prefix in itertools.permutations(range(n), n - tail):
        remaining = np.array(sorted(set(range(n)) - set(prefix)), dtype=np.int8)
        body = remaining[base] if tail else base
        if prefix:
            head = np.broadcast_to(np.array(prefix, dtype=np.int8), (body.shape[0], len(prefix)))
            yield np.hstack([head, body])
        else:
            yield body


def _occurrence_counts(block: np.ndarray, sigma: Permutation) -> np.ndarray:
    n = block.shape[1]
    m = len(sigma)
    order = [v - 1 for v in sigma.inverse()]
    counts = np.zeros(block.shape[0], dtype=np.int16)
    for i in range(n - m + 1):
        hit = np.ones(block.shape[0], dtype=bool)
        for a, b in zip(order, order[1:]):
            hit &= block[:, i + a] < block[:, i + b]
        counts += hit
    return counts


def _check_cap(n: int, cap: int) -> None:
    if n < 0:
        raise InvalidInput("n must be >= 0")
    if n > cap:
        raise ResourceLimit(f"n={n} exceeds brute-force cap {cap}")


def brute_distributions(patterns: Iterable[PatternLike], n: int, cap: int | None = None) -> dict:
    """Occurrence distributions for several single patterns in one sweep of S_n."""
    _check_cap(n, settings.brute_cap if cap is None else cap)
    pats = list(dict.fromkeys(parse_pattern(p) for p in patterns))
    tallies = {p: Counter() for p in pats}
    for block in _perm_chunks(n):
        for p in pats:
            values, freq = np.unique(_occurrence_counts(block, p), return_counts=True)
            for v, f in zip(values.tolist(), freq.tolist()):
                tallies[p][v] += f
    return {p: UDistribution(n, dict(sorted(tallies[p].items()))) for p in pats}


def brute_distribution(sigma: PatternLike, n: int, cap: int | None = None) -> UDistribution:
    """Exhaustive distribution of c_sigma over S_n."""
    sigma = parse_pattern(sigma)
    return brute_distributions([sigma], n, cap)[sigma]


def brute_avoiders(patterns, n: int, cap: int | None = None) -> int:
    """Exact number of permutations of size n avoiding every pattern in the set."""
    _check_cap(n, settings.brute_avoid_cap if cap is None else cap)
    pset = as_pattern_set(patterns)
    total = 0
    for block in _perm_chunks(n):
        alive = np.ones(block.shape[0], dtype=bool)
        for p in pset:
            alive &= _occurrence_counts(block, p) == 0
        total += int(alive.sum())
    return total
