"""Strong c-Wilf classes of S_m from cluster-polynomial fingerprints.

Two patterns are strongly c-Wilf-equivalent exactly when all their cluster
polynomials agree, so equal fingerprints up to n_max are evidence of
equivalence, never a proof.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .cluster import ClusterPolynomial, cluster_polynomials
from .config import settings
from .errors import InvalidInput
from .perm import Permutation, all_patterns, parse_pattern

DEFAULT_N_MAX = {3: 12, 4: 12, 5: 13, 6: 16}


def default_n_max(m: int) -> int:
    return DEFAULT_N_MAX.get(m, 3 * m)


@dataclass(frozen=True)
class Fingerprint:
    pattern: Permutation
    n_max: int
    polynomials: tuple

    def key(self) -> tuple:
        return tuple(p.terms for p in self.polynomials)

    def to_json(self) -> dict:
        return {
            "pattern": str(self.pattern),
            "n_max": self.n_max,
            "polynomials": {str(p.n): p.to_json() for p in self.polynomials},
        }


def fingerprint(sigma, n_max: int) -> Fingerprint:
    """Cluster polynomials r_m..r_{n_max} of a single pattern."""
    sigma = parse_pattern(sigma)
    m = len(sigma)
    if n_max < m:
        raise InvalidInput(f"n_max={n_max} is shorter than the pattern")
    polys = cluster_polynomials([sigma], n_max)
    return Fingerprint(sigma, n_max, tuple(polys[m:]))


def _fingerprint_key(args) -> tuple:
    sigma, n_max = args
    return fingerprint(sigma, n_max).key()


@dataclass(frozen=True)
class ClassPartition:
    m: int
    n_max: int
    classes: tuple

    @property
    def representatives(self) -> list:
        return [c[0] for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, sigma) -> tuple:
        sigma = parse_pattern(sigma)
        return next(c for c in self.classes if sigma in c)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n_max": self.n_max,
            "count": len(self.classes),
            "evidence": f"fingerprints equal up to n={self.n_max}",
            "classes": [[str(p) for p in c] for c in self.classes],
        }


def _keys(patterns: list, n_max: int, threads: int) -> list:
    jobs = [(p, n_max) for p in patterns]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_fingerprint_key, jobs, chunksize=4))
    return [_fingerprint_key(job) for job in jobs]


def partition(m: int, n_max: Optional[int] = None, validate: bool = False, threads: Optional[int] = None) -> ClassPartition:
    """Group S_m by fingerprint equality.

    Each reversal/complement orbit is fingerprinted once through its least
    member; ``validate`` fingerprints every member and raises if an orbit
    ever splits.
    """
    if m < 1:
        raise InvalidInput("m must be >= 1")
    n_max = default_n_max(m) if n_max is None else n_max
    threads = settings.threads if threads is None else threads
    orbits = {}
    for p in all_patterns(m):
        rep = min(p.symmetry_orbit())
        orbits.setdefault(rep, set()).add(p)
    reps = sorted(orbits)
    if m < 2:
        return ClassPartition(m, n_max, tuple((r,) for r in reps))
    keys = dict(zip(reps, _keys(reps, n_max, threads)))
    if validate:
        members = sorted(p for rep in reps for p in orbits[rep] if p != rep)
        for p, key in zip(members, _keys(members, n_max, threads)):
            rep = min(p.symmetry_orbit())
            if key != keys[rep]:
                raise AssertionError(f"{p} and {rep} are symmetric but have different fingerprints")
    groups: dict = {}
    for rep in reps:
        groups.setdefault(keys[rep], []).extend(orbits[rep])
    classes = sorted(tuple(sorted(g)) for g in groups.values())
    return ClassPartition(m, n_max, tuple(classes))


@dataclass(frozen=True)
class PairReport:
    sigma: Permutation
    tau: Permutation
    n_max: int
    equal: bool
    first_divergence: Optional[int]
    left: Optional[ClusterPolynomial] = None
    right: Optional[ClusterPolynomial] = None

    def to_json(self) -> dict:
        out = {
            "patterns": [str(self.sigma), str(self.tau)],
            "n_max": self.n_max,
            "pass": self.equal,
            "equal_up_to_n_max": self.equal,
            "first_divergence": self.first_divergence,
        }
        if self.left is not None:
            out["at_divergence"] = [self.left.to_json(), self.right.to_json()]
        return out


def verify_pair(sigma, tau, n_max: int) -> PairReport:
    sigma, tau = parse_pattern(sigma), parse_pattern(tau)
    if len(sigma) != len(tau):
        raise InvalidInput("patterns must have the same length")
    a, b = fingerprint(sigma, n_max), fingerprint(tau, n_max)
    for p, q in zip(a.polynomials, b.polynomials):
        if p != q:
            return PairReport(sigma, tau, n_max, False, p.n, p, q)
    return PairReport(sigma, tau, n_max, True, None)
