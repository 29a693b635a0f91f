"""Cluster counting by left-to-right insertion.

A cluster (pi; marks) is built one position at a time.  The entry placed at
position p is described by its rank r among the entries placed so far, so a
permutation corresponds to exactly one rank sequence.  Every constraint of a
marked occurrence involves positions inside its window, so the state only has
to remember the open marks and the ranks of positions an open mark can still
refer to.  One sweep yields the cluster numbers for every length up to n_max.

This path shares no code with the poset/layout engine and serves both as the
fast route for long series and as its independent cross-check.
"""
from __future__ import annotations

from collections import defaultdict

from .config import settings
from .errors import ResourceLimit
from .perm import PatternSet, reduce


def _constraints(sigma) -> list:
    # for each offset o, the earlier offsets o' and whether entry o must exceed entry o'
    return [[(q, sigma[o] > sigma[q]) for q in range(o)] for o in range(len(sigma))]


def _compatible(left, right, overlap: int) -> bool:
    return reduce(left[len(left) - overlap :]) == reduce(right[:overlap])


def transfer_counts(pset: PatternSet, n_max: int, t=None, budget: int | None = None) -> list:
    """Cluster numbers for every length 0..n_max.

    With ``t=None`` entry n is a dict ``{k: r_{n,k}}``; otherwise entry n is the
    value ``sum_k r_{n,k} t^k`` (any ring element supporting ``*`` and ``+``).
    """
    budget = settings.state_budget if budget is None else budget
    pats = list(pset)
    lengths = [len(p) for p in pats]
    cons = [_constraints(p) for p in pats]
    compat = {}
    for i, left in enumerate(pats):
        for j, right in enumerate(pats):
            for overlap in range(1, min(len(left), len(right)) + 1):
                compat[i, j, overlap] = _compatible(left, right, overlap)

    symbolic = t is None
    zero = 0 if symbolic else t * 0
    results = [defaultdict(int) if symbolic else zero for _ in range(n_max + 1)]

    def harvest(n, k, weight):
        if symbolic:
            results[n][k] += weight
        else:
            results[n] = results[n] + weight

    # state: (open marks as (start, pattern)), ranks of positions base..p-1, k)
    states = {}
    for j, m in enumerate(lengths):
        if m <= n_max:
            key = (((0, j),), (0,), 1 if symbolic else 0)
            states[key] = 1 if symbolic else t

    for p in range(1, n_max):
        nxt = defaultdict(int) if symbolic else {}
        for (marks, ranks, k), weight in states.items():
            base = marks[0][0]
            last_start, last_pat = marks[-1]
            last_end = last_start + lengths[last_pat] - 1
            options = [None]
            for j, m in enumerate(lengths):
                end = p + m - 1
                if end > last_end and end < n_max and compat[last_pat, j, last_end - p + 1]:
                    options.append(j)
            for choice in options:
                if choice is None:
                    new_marks = marks
                    new_k, new_w = k, weight
                else:
                    new_marks = marks + ((p, choice),)
                    if symbolic:
                        new_k, new_w = k + 1, weight
                    else:
                        new_k, new_w = k, weight * t
                lo, hi = 0, p
                for start, j in new_marks:
                    offset = p - start
                    for q, greater in cons[j][offset]:
                        rq = ranks[start + q - base]
                        if greater:
                            if rq + 1 > lo:
                                lo = rq + 1
                        elif rq < hi:
                            hi = rq
                if lo > hi:
                    continue
                still_open = tuple(
                    (start, j) for start, j in new_marks if start + lengths[j] - 1 > p
                )
                if not still_open:
                    harvest(p + 1, new_k, new_w * (hi - lo + 1))
                    continue
                keep = ranks[still_open[0][0] - base :]
                for r in range(lo, hi + 1):
                    new_ranks = tuple(x + 1 if x >= r else x for x in keep) + (r,)
                    key = (still_open, new_ranks, new_k)
                    if key in nxt:
                        nxt[key] = nxt[key] + new_w
                    else:
                        nxt[key] = new_w
        if len(nxt) > budget:
            raise ResourceLimit(f"transfer state count exceeded {budget}")
        states = nxt
    return [dict(r) if symbolic else r for r in results]
