"""Growth constants, dominance tables, chain ratios and the 2413 blow-up witness.

Floating point is used only for root finding; every count is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from scipy.optimize import brentq

from .cluster import iter_layouts
from .config import settings
from .errors import InsufficientTerms, InvalidInput
from .perm import (
    Permutation,
    all_patterns,
    as_pattern_set,
    brute_distributions,
    is_non_overlapping,
    parse_pattern,
)
from .poset import (
    ClusterPoset,
    OccurrenceLayout,
    build_cluster_poset,
    chain_pattern_verdict,
    count_linear_extensions,
    longest_chain,
    try_build_cluster_poset,
)
from .series.power import avoiders
from .transfer import transfer_counts

BRACKET = (1.0, 1.2757)
RHO_LOWER = 0.7839769


def omega0_coefficients(sigma, N: int) -> list:
    """Exact coefficients of omega(0, z) = 1 - z - R(-1, z) through z^N.

    Only r_n(-1) is needed, so the insertion DP runs at t = -1 directly and
    never separates states by occurrence count.
    """
    signed = transfer_counts(as_pattern_set(sigma), N, t=-1)
    coeffs = [Fraction(1), Fraction(-1)] + [Fraction(-signed[n], math.factorial(n)) for n in range(2, N + 1)]
    return coeffs[: N + 1]


def _horner(coeffs: list, z: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def entire_status(sigma) -> str:
    """Why omega(0, z) is known to be entire, or "assumed" when no result covers sigma."""
    sigma = parse_pattern(sigma)
    orbit = sigma.symmetry_orbit()
    if any(p[0] == 1 for p in orbit):
        return "proven: first entry 1 up to symmetry"
    if is_non_overlapping(sigma):
        return "proven: non-overlapping"
    if any(tuple(p) == (2, 1, 4, 3) for p in orbit):
        return "proven: chains of length n/3"
    if len(sigma) >= 3 and chain_pattern_verdict(sigma).is_chain:
        return "assumed: chain pattern on bounded evidence"
    return "assumed"


@dataclass(frozen=True)
class GrowthReport:
    pattern: Permutation
    z0: float
    rho: float
    orders: tuple
    gap: float
    bracket: tuple
    entire: str

    def to_json(self) -> dict:
        return {
            "pattern": str(self.pattern),
            "z0": f"{self.z0:.17g}",
            "rho": f"{self.rho:.17g}",
            "orders": list(self.orders),
            "agreement_gap": f"{self.gap:.17g}",
            "bracket": [f"{b:.17g}" for b in self.bracket],
            "entire": self.entire,
        }


def _root(coeffs: list, tol: float) -> float:
    lo, hi = BRACKET
    f_lo, f_hi = _horner(coeffs, lo), _horner(coeffs, hi)
    if f_lo == 0:
        return lo
    if f_lo * f_hi > 0:
        raise InsufficientTerms(
            f"truncated omega(0, z) has no sign change on {BRACKET} at order {len(coeffs) - 1}"
        )
    return brentq(lambda z: _horner(coeffs, z), lo, hi, xtol=tol * 1e-3, rtol=4 * 2.220446049250313e-16)


def growth_constant(sigma, N: int = 40, tol: float | None = None, N2: int | None = None) -> GrowthReport:
    """Smallest positive zero z0 of omega(0, z) from truncations N and N2 (default N + 10)."""
    sigma = parse_pattern(sigma)
    if len(sigma) < 3:
        raise InvalidInput("growth constants need m >= 3")
    tol = settings.tol if tol is None else tol
    N2 = N + 10 if N2 is None else N2
    if N2 <= N:
        raise InvalidInput("second truncation order must exceed the first")
    full = [float(c) for c in omega0_coefficients(sigma, N2)]
    z_a = _root(full[: N + 1], tol)
    z_b = _root(full, tol)
    gap = abs(z_a - z_b)
    if gap > tol:
        raise InsufficientTerms(f"truncations {N} and {N2} disagree by {gap:.3g} > {tol:g}")
    return GrowthReport(sigma, z_b, 1 / z_b, (N, N2), gap, BRACKET, entire_status(sigma))


# -- dominance ---------------------------------------------------------------


def monotone(m: int) -> Permutation:
    return Permutation(range(1, m + 1))


def conjectured_hardest(m: int) -> Permutation:
    """12...(m-2) m (m-1)."""
    return Permutation([*range(1, m - 1), m, m - 1])


def conjectured_easiest(m: int) -> Permutation:
    """1 3 4 ... m 2."""
    return Permutation([1, *range(3, m + 1), 2])


@dataclass
class DominanceRow:
    pattern: Permutation
    alphas: dict
    below_monotone: bool
    first_violation: Optional[int]
    conjecture_holds: bool
    conjecture_failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "pattern": str(self.pattern),
            "alpha": {str(n): str(a) for n, a in self.alphas.items()},
            "below_monotone": self.below_monotone,
            "first_violation": self.first_violation,
            "conjecture_holds": self.conjecture_holds,
            "conjecture_failures": self.conjecture_failures,
        }


@dataclass
class DominanceReport:
    m: int
    n_lo: int
    n_hi: int
    monotone: dict
    hardest: dict
    easiest: dict
    rows: list
    brute_checked_through: Optional[int] = None
    brute_agrees: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return all(r.below_monotone for r in self.rows) and self.brute_agrees is not False

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n_range": [self.n_lo, self.n_hi],
            "pass": self.passed,
            "monotone": {str(n): str(a) for n, a in self.monotone.items()},
            "conjectured_hardest": str(conjectured_hardest(self.m)),
            "conjectured_easiest": str(conjectured_easiest(self.m)),
            "rows": [r.to_json() for r in self.rows],
            "brute_checked_through": self.brute_checked_through,
            "brute_agrees": self.brute_agrees,
        }


def _alpha_table(sigma: Permutation, n_lo: int, n_hi: int) -> dict:
    values = avoiders([sigma], n_hi, start=n_lo)
    return dict(zip(range(n_lo, n_hi + 1), values))


def dominance_report(m: int, n_lo: int, n_hi: int, brute_check: int | None = None) -> DominanceReport:
    """alpha_n(sigma) against the monotone pattern for every non-overlapping sigma in S_m.

    The conjectured extremes are compared and reported, never asserted.  With
    ``brute_check`` the pipeline values for n <= brute_check are compared with
    exhaustive enumeration.
    """
    if m < 3 or n_lo < 0 or n_hi < n_lo:
        raise InvalidInput(f"need m >= 3 and 0 <= n_lo <= n_hi, got m={m}, range {n_lo}..{n_hi}")
    patterns = [p for p in all_patterns(m) if is_non_overlapping(p)]
    mono = _alpha_table(monotone(m), n_lo, n_hi)
    hard = _alpha_table(conjectured_hardest(m), n_lo, n_hi)
    easy = _alpha_table(conjectured_easiest(m), n_lo, n_hi)
    rows = []
    for sigma in patterns:
        alphas = _alpha_table(sigma, n_lo, n_hi)
        violation = next((n for n in alphas if alphas[n] >= mono[n]), None)
        failures = [n for n in alphas if not hard[n] <= alphas[n] <= easy[n]]
        rows.append(DominanceRow(sigma, alphas, violation is None, violation, not failures, failures))
    report = DominanceReport(m, n_lo, n_hi, mono, hard, easy, rows)
    if brute_check is not None:
        top = min(brute_check, n_hi)
        agree = True
        checked = [monotone(m)] + patterns
        for n in range(n_lo, top + 1):
            dists = brute_distributions(checked, n)
            expected = {monotone(m): mono[n], **{r.pattern: r.alphas[n] for r in rows}}
            if any(dists[p].avoiders != expected[p] for p in checked):
                agree = False
                break
        report.brute_checked_through = top
        report.brute_agrees = agree
    return report


# -- chain ratio ---------------------------------------------------------------


@dataclass(frozen=True)
class ChainRatio:
    ratio: Fraction
    witness: Optional[OccurrenceLayout]
    longest: int

    def to_json(self) -> dict:
        return {
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "witness": self.witness.to_json() if self.witness else None,
            "n": self.witness.n if self.witness else None,
            "longest_chain": self.longest,
        }


def chain_ratio(patterns, n_max: int) -> ChainRatio:
    """Minimum of longest_chain / n over every consistent layout with n <= n_max."""
    pset = as_pattern_set(patterns)
    if n_max < pset.min_length:
        raise InvalidInput("n_max is shorter than every pattern")
    if n_max > settings.extension_cap:
        raise InvalidInput(f"n_max above the extension cap {settings.extension_cap}")
    best = None
    for n in range(pset.min_length, n_max + 1):
        for layout in iter_layouts(pset, n):
            poset = try_build_cluster_poset(pset, layout)
            if poset is None:
                continue
            h = longest_chain(poset)
            r = Fraction(h, n)
            if best is None or r < best.ratio:
                best = ChainRatio(r, layout, h)
    if best is None:
        raise InvalidInput("no clusters in range")
    return best


# -- 2413 blow-up -------------------------------------------------------------------


def blowup_layout(ell: int) -> OccurrenceLayout:
    """Starts 1, 3, 6, 8, ..., 5l-4, 5l-2 on n = 5l + 1 positions."""
    if ell < 1:
        raise InvalidInput("ell must be >= 1")
    starts = [s for j in range(ell) for s in (5 * j + 1, 5 * j + 3)]
    return OccurrenceLayout.single(starts, 5 * ell + 1)


@dataclass(frozen=True)
class BlowupReport:
    ell: int
    n: int
    count: int
    bound: int
    layers_are_antichains: bool

    @property
    def passed(self) -> bool:
        return self.count >= self.bound and self.layers_are_antichains

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "n": self.n,
            "starts": list(blowup_layout(self.ell).starts),
            "linear_extensions": str(self.count),
            "lower_bound": str(self.bound),
            "layers_are_antichains": self.layers_are_antichains,
            "pass": self.passed,
        }


def verify_2413_blowup(ell: int) -> BlowupReport:
    layout = blowup_layout(ell)
    poset: ClusterPoset = build_cluster_poset("2413", layout)
    count = count_linear_extensions(poset)
    layers = [[p for p in range(1, layout.n + 1) if p % 5 == r] for r in range(5)]
    antichains = all(poset.is_antichain(layer) for layer in layers)
    return BlowupReport(ell, layout.n, count, math.factorial(ell) ** 5, antichains)
