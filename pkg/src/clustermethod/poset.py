"""Cluster posets on positions 1..n and exact linear-extension counting.

Elements are positions; internally they are 0-based bit indices so that a
down-set is a Python int bitmask.  ``pred[v]`` holds every element strictly
below ``v`` (the reachability matrix, one row per element).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .config import settings
from .errors import InvalidInput, ResourceLimit
from .perm import PatternLike, PatternSet, Permutation, as_pattern_set, parse_pattern


@dataclass(frozen=True)
class OccurrenceLayout:
    """Marked occurrences of a cluster: ``marks`` holds (1-based start, pattern index)."""

    marks: tuple
    n: int

    @classmethod
    def single(cls, starts: Sequence[int], n: int) -> "OccurrenceLayout":
        return cls(tuple((int(s), 0) for s in starts), n)

    @property
    def starts(self) -> tuple:
        return tuple(s for s, _ in self.marks)

    @property
    def k(self) -> int:
        return len(self.marks)

    def validate(self, patterns: PatternSet) -> None:
        """Raise InvalidInput unless this is a cluster layout for ``patterns``."""
        if not self.marks:
            raise InvalidInput("layout has no marks")
        lengths = []
        for s, idx in self.marks:
            if not 0 <= idx < len(patterns):
                raise InvalidInput(f"pattern index {idx} out of range")
            lengths.append(len(patterns[idx]))
        starts = self.starts
        if starts[0] != 1:
            raise InvalidInput("first occurrence must start at position 1")
        ends = [s + m - 1 for s, m in zip(starts, lengths)]
        if ends[-1] != self.n or max(ends) != self.n:
            raise InvalidInput("last occurrence must end at position n")
        for j in range(len(starts) - 1):
            if starts[j + 1] <= starts[j]:
                raise InvalidInput("starts must be strictly increasing")
            if ends[j + 1] <= ends[j]:
                raise InvalidInput("ends must be strictly increasing")
            if starts[j + 1] > ends[j]:
                raise InvalidInput("neighbouring occurrences must overlap")

    def to_json(self) -> list:
        return list(self.starts)


def _closure(n: int, direct: Sequence[int]) -> Optional[list]:
    """Transitive closure of a DAG given direct-predecessor masks; None if cyclic."""
    succ = [[] for _ in range(n)]
    indeg = [0] * n
    for v in range(n):
        d = direct[v]
        while d:
            low = d & -d
            succ[low.bit_length() - 1].append(v)
            indeg[v] += 1
            d ^= low
    pred = [0] * n
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        below = pred[u] | (1 << u)
        for v in succ[u]:
            pred[v] |= below
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    if seen != n:
        return None
    return pred


class ClusterPoset:
    """Strict partial order on positions 1..n with O(1) comparability queries."""

    __slots__ = ("n", "pred", "succ", "layout")

    def __init__(self, n: int, pred: Sequence[int], layout: Optional[OccurrenceLayout] = None):
        self.n = n
        self.pred = tuple(pred)
        succ = [0] * n
        for v in range(n):
            d = self.pred[v]
            while d:
                low = d & -d
                succ[low.bit_length() - 1] |= 1 << v
                d ^= low
        self.succ = tuple(succ)
        self.layout = layout

    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[tuple]) -> "ClusterPoset":
        """Poset generated by 1-based relations ``(a, b)`` meaning a < b."""
        direct = [0] * n
        for a, b in pairs:
            if not (1 <= a <= n and 1 <= b <= n) or a == b:
                raise InvalidInput(f"bad relation {(a, b)}")
            direct[b - 1] |= 1 << (a - 1)
        pred = _closure(n, direct)
        if pred is None:
            raise InvalidInput("relations contain a cycle")
        return cls(n, pred)

    def less(self, a: int, b: int) -> bool:
        """True when position a is strictly below position b (1-based)."""
        return bool(self.pred[b - 1] >> (a - 1) & 1)

    def comparable(self, a: int, b: int) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def incomparable_pairs(self) -> list:
        return [
            (a, b)
            for a in range(1, self.n + 1)
            for b in range(a + 1, self.n + 1)
            if not self.comparable(a, b)
        ]

    def is_chain(self) -> bool:
        return sorted(bin(p).count("1") for p in self.pred) == list(range(self.n))

    def is_antichain(self, positions: Iterable[int]) -> bool:
        pos = list(positions)
        return all(not self.comparable(a, b) for i, a in enumerate(pos) for b in pos[i + 1 :])

    def cover_relations(self) -> list:
        """Hasse diagram edges (a, b), 1-based, with a covered by b."""
        edges = []
        for b in range(self.n):
            below = self.pred[b]
            d = below
            while d:
                low = d & -d
                a = low.bit_length() - 1
                d ^= low
                if not (self.succ[a] & below):
                    edges.append((a + 1, b + 1))
        return edges

    def __repr__(self) -> str:
        return f"ClusterPoset(n={self.n}, covers={len(self.cover_relations())})"


def _direct_masks(patterns: PatternSet, layout: OccurrenceLayout) -> list:
    direct = [0] * layout.n
    for start, idx in layout.marks:
        order = patterns[idx].inverse()
        base = start - 2
        for lo, hi in zip(order, order[1:]):
            direct[base + hi] |= 1 << (base + lo)
    return direct


def build_cluster_poset(patterns, layout: OccurrenceLayout) -> ClusterPoset:
    """The order on positions forced by every marked occurrence of the layout."""
    pset = as_pattern_set(patterns)
    layout.validate(pset)
    pred = _closure(layout.n, _direct_masks(pset, layout))
    if pred is None:
        raise InvalidInput(f"layout {layout.starts} has contradictory order constraints")
    return ClusterPoset(layout.n, pred, layout)


def try_build_cluster_poset(pset: PatternSet, layout: OccurrenceLayout) -> Optional[ClusterPoset]:
    """Like build_cluster_poset for an already-valid layout, but None when inconsistent."""
    pred = _closure(layout.n, _direct_masks(pset, layout))
    return None if pred is None else ClusterPoset(layout.n, pred, layout)


def count_linear_extensions(p: ClusterPoset, cap: int | None = None, budget: int | None = None) -> int:
    """Exact number of linear extensions, by dynamic programming over down-sets.

    The frontier of each level maps a down-set (bitmask) to the number of ways
    to reach it; ``budget`` bounds the frontier size.
    """
    cap = settings.extension_cap if cap is None else cap
    budget = settings.state_budget if budget is None else budget
    n = p.n
    if n > cap:
        raise ResourceLimit(f"poset of size {n} exceeds extension cap {cap}")
    if n == 0 or p.is_chain():
        return 1
    pred = p.pred
    full = (1 << n) - 1
    frontier = {0: 1}
    for _ in range(n):
        nxt = defaultdict(int)
        for ideal, ways in frontier.items():
            rest = full ^ ideal
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                if pred[v] & ideal == pred[v]:
                    nxt[ideal | low] += ways
        if len(nxt) > budget:
            raise ResourceLimit(f"down-set frontier exceeded {budget} states")
        frontier = nxt
    return frontier[full]


def longest_chain(p: ClusterPoset) -> int:
    """Maximum size of a totally ordered subset."""
    if p.n == 0:
        return 0
    order = sorted(range(p.n), key=lambda v: bin(p.pred[v]).count("1"))
    height = [1] * p.n
    for v in order:
        d = p.pred[v]
        best = 0
        while d:
            low = d & -d
            d ^= low
            h = height[low.bit_length() - 1]
            if h > best:
                best = h
        height[v] = best + 1
    return max(height)


@dataclass(frozen=True)
class ChainVerdict:
    """Bounded evidence on whether every cluster poset of a pattern is a chain."""

    pattern: Permutation
    is_chain: bool
    n_max: int
    witness: Optional[OccurrenceLayout] = None

    def __str__(self) -> str:
        if self.is_chain:
            return f"ChainUpTo({self.n_max})"
        return f"NotChain({list(self.witness.starts)})"


def lemma_filter(sigma: PatternLike) -> bool:
    """Necessary condition for a chain pattern: some symmetry of sigma starts 1,2 and ends m."""
    sigma = parse_pattern(sigma)
    m = len(sigma)
    return any(t[0] == 1 and t[1] == 2 and t[-1] == m for t in sigma.symmetry_orbit())


def chain_pattern_verdict(sigma: PatternLike, n_max: int | None = None) -> ChainVerdict:
    """Check every layout of length <= n_max; the witness is the shortest, then lex-least."""
    from .cluster import enumerate_layouts

    sigma = parse_pattern(sigma)
    m = len(sigma)
    if m < 3:
        raise InvalidInput("chain verdict needs m >= 3")
    n_max = 3 * m if n_max is None else n_max
    pset = PatternSet([sigma])
    for n in range(m, n_max + 1):
        for layout in enumerate_layouts(pset, n):
            poset = try_build_cluster_poset(pset, layout)
            if poset is not None and not poset.is_chain():
                return ChainVerdict(sigma, False, n_max, layout)
    return ChainVerdict(sigma, True, n_max)
