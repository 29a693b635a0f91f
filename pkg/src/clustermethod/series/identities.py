"""Generating-function identities checked coefficientwise against the cluster pipeline.

Each check builds the closed-form side with series arithmetic only (no cluster
code) and the other side from computed cluster numbers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..cluster import cluster_polynomials, dense_pattern, sigma_family_polynomial
from ..errors import InvalidInput
from ..perm import Permutation
from .power import OgfSeries, cluster_ogf
from .upoly import U

T = U  # in OGF identities the inner variable is t


@dataclass(frozen=True)
class IdentityReport:
    name: str
    N: int
    passed: bool
    first_mismatch: Optional[int]
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "identity": self.name,
            "N": self.N,
            "pass": self.passed,
            "first_mismatch_order": self.first_mismatch,
            **self.detail,
        }


def _x(N: int) -> OgfSeries:
    return OgfSeries.monomial(1, N)


def _report(name: str, N: int, lhs: OgfSeries, rhs: OgfSeries, **detail) -> IdentityReport:
    first = lhs.first_difference(rhs)
    return IdentityReport(name, N, first is None, first, detail)


def _algebraic_root(s: int, N: int, arg: OgfSeries) -> OgfSeries:
    """B(arg) where B = 1 + x B^s, by fixed-point iteration (one new order per round)."""
    b = OgfSeries.one(N)
    for _ in range(N + 1):
        b = 1 + arg * (b if s == 1 else _power(b, s))
    return b


def _power(a: OgfSeries, k: int) -> OgfSeries:
    out = OgfSeries.one(a.N)
    for _ in range(k):
        out = out * a
    return out


def clomon(N: int, m: int = 3) -> IdentityReport:
    if m < 3:
        raise InvalidInput("needs m >= 3")
    x = _x(N)
    denom = OgfSeries.one(N) - sum((x.shift(d - 1) for d in range(1, m)), OgfSeries.zero(N)) * T
    rhs = x.shift(m - 1) * T / denom
    pattern = Permutation(range(1, m + 1))
    return _report(f"clomon(m={m})", N, cluster_ogf([pattern], N), rhs)


def clo12435(N: int) -> IdentityReport:
    x = _x(N)
    rhs = -x.shift(4) / (OgfSeries.one(N) + x.shift(2) + x.shift(3))
    lhs = cluster_ogf("12435", N).at(-1)
    return _report("clo12435", N, lhs, rhs)


def clo1324(N: int) -> IdentityReport:
    x = _x(N)
    catalan = _algebraic_root(2, N, x.shift(1) * T)  # C(t x^2)
    rhs = x / (OgfSeries.one(N) + x - x * catalan) - x
    return _report("clo1324", N, cluster_ogf("1324", N), rhs)


def clo1324gen(N: int, s: int = 2, m: int = 4) -> IdentityReport:
    if s < 2 or not s + 2 <= m <= 2 * s:
        raise InvalidInput(f"needs s >= 2 and s+2 <= m <= 2s, got s={s}, m={m}")
    x = _x(N)
    b = _algebraic_root(s, N, x.shift(s - 1) * T)  # B(t x^s)
    run = sum((x.shift(d - 1) for d in range(1, m - s)), OgfSeries.zero(N))
    rhs = x.shift(m - s - 1) * (b - 1) / (OgfSeries.one(N) - run * (b - 1))
    sigma = dense_pattern(s, m)
    return _report(f"clo1324gen(s={s},m={m})", N, cluster_ogf([sigma], N), rhs, pattern=str(sigma))


def funceq1423(N: int) -> IdentityReport:
    x = _x(N)
    one = OgfSeries.one(N)
    S = one + x + cluster_ogf("1423", N).at(-1)
    inner = x / (one + x.shift(1))
    rhs = one + x / (one + x) * S.compose(inner)
    return _report("funceq1423", N, S, rhs)


def sigma_relation(N: int) -> IdentityReport:
    """cl^{1423}_{n,k} = cl^Sigma_{n,h} whenever 2k + h + 1 = n, for 4 <= n <= N."""
    polys = cluster_polynomials("1423", N)
    for n in range(4, N + 1):
        left = polys[n].coefficients
        right = sigma_family_polynomial(n).coefficients
        mapped = {n - 1 - 2 * k: v for k, v in left.items()}
        if mapped != right:
            return IdentityReport("sigma_relation", N, False, n)
    return IdentityReport("sigma_relation", N, True, None)


CATALOG = {
    "clomon": clomon,
    "clo12435": clo12435,
    "clo1324": clo1324,
    "clo1324gen": clo1324gen,
    "funceq1423": funceq1423,
    "sigma_relation": sigma_relation,
}


def check_identity(name: str, N: int, **params) -> IdentityReport:
    try:
        check = CATALOG[name]
    except KeyError:
        raise InvalidInput(f"unknown identity {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    if N < 1:
        raise InvalidInput("N must be >= 1")
    return check(N, **params)

