"""Linear ODEs in z with coefficients polynomial in (z, u), and residual checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ..errors import InvalidInput
from ..perm import Permutation, is_non_overlapping, overlap_set, parse_pattern
from .power import EgfSeries
from .upoly import ONE, U, ZERO, UPoly

W = 1 - U  # the recurring factor (1 - u)


@dataclass(frozen=True)
class OdeSpec:
    """sum_j coef_j(z, u) * omega^{(j)} = 0 plus initial values omega^{(i)}(0).

    ``terms`` holds (j, ((e, p), ...)) meaning sum_e p(u) z^e multiplies the
    j-th derivative; ``initial`` holds (i, value).
    """

    name: str
    terms: tuple
    initial: tuple

    def __post_init__(self):
        if not self.terms:
            raise InvalidInput("an ODE needs at least one term")
        if self.order < 1:
            raise InvalidInput("an ODE needs a derivative of order >= 1")

    @property
    def order(self) -> int:
        return max(j for j, _ in self.terms)

    @property
    def z_degree(self) -> int:
        return max(e for _, coef in self.terms for e, _ in coef)

    def format(self) -> str:
        parts = []
        for j, coef in self.terms:
            c = " + ".join(
                f"({p.format('u')})" + ("" if e == 0 else "*z" if e == 1 else f"*z^{e}") for e, p in coef
            )
            parts.append(f"[{c}]*w^({j})")
        ics = ", ".join(f"w^({i})(0)={v.format('u')}" for i, v in self.initial)
        return " + ".join(parts) + " = 0; " + ics

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "terms": [
                {"order": j, "coef": [{"z": e, "u": p.to_json()} for e, p in coef]} for j, coef in self.terms
            ],
            "initial": [{"order": i, "value": v.to_json()} for i, v in self.initial],
        }


def _combine(name: str, pieces, initial) -> OdeSpec:
    """Merge (j, e, p) pieces into sorted terms, dropping zero coefficients."""
    acc: dict = {}
    for j, e, p in pieces:
        acc[(j, e)] = acc.get((j, e), ZERO) + p
    by_order: dict = {}
    for (j, e), p in sorted(acc.items(), reverse=True):
        if not p.is_zero():
            by_order.setdefault(j, []).append((e, p))
    terms = tuple((j, tuple(sorted(coef))) for j, coef in sorted(by_order.items(), reverse=True))
    return OdeSpec(name, terms, tuple(initial))


def _standard_initial(top: int) -> list:
    return [(0, ONE), (1, -ONE)] + [(i, ZERO) for i in range(2, top + 1)]


def _sum_of_orders(name: str, lead: int, lower, initial_top: int) -> OdeSpec:
    pieces = [(lead, 0, ONE)] + [(j, 0, W) for j in lower]
    return _combine(name, pieces, _standard_initial(initial_top))


def cor5_parameters(sigma) -> dict:
    """r, s, a, b, c of a pattern: initial identity prefix, final top suffix, increasing runs."""
    sigma = parse_pattern(sigma)
    m = len(sigma)
    r = 0
    while r < m and sigma[r] == r + 1:
        r += 1
    s = 0
    while s < m and sigma[m - 1 - s] == m - s:
        s += 1
    a = 1
    while a < m and sigma[a] > sigma[a - 1]:
        a += 1
    b = 1
    while b < m and sigma[m - 1 - b] < sigma[m - b]:
        b += 1
    return {"r": r, "s": s, "a": a, "b": b, "c": min(a, b)}


def _pattern_param(params) -> Permutation:
    if "sigma" not in params:
        raise InvalidInput("missing parameter 'sigma'")
    return parse_pattern(params["sigma"])


def _int_param(params, key: str, default=None) -> int:
    value = params.get(key, default)
    if value is None:
        raise InvalidInput(f"missing parameter {key!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise InvalidInput(f"parameter {key!r} must be an integer") from None


def _monotone(params) -> OdeSpec:
    m = _int_param(params, "m")
    if m < 3:
        raise InvalidInput("monotone ODE needs m >= 3")
    return _sum_of_orders(f"monotone(m={m})", m - 1, range(m - 1), m - 2)


def _chain(params) -> OdeSpec:
    from ..poset import chain_pattern_verdict

    sigma = _pattern_param(params)
    m = len(sigma)
    if m < 3:
        raise InvalidInput("chain ODE needs m >= 3")
    verdict = chain_pattern_verdict(sigma, params.get("n_max"))
    if not verdict.is_chain:
        raise InvalidInput(f"{sigma} is not a chain pattern: {verdict}")
    orders = sorted(m - d - 1 for d in overlap_set(sigma))
    return _sum_of_orders(f"chain({sigma})", m - 1, orders, m - 2)


def _cor4(params) -> OdeSpec:
    s = _int_param(params, "s")
    m = _int_param(params, "m")
    if s < 3 or not 2 <= m - s <= s:
        raise InvalidInput(f"cor4 needs s >= 3 and 2 <= m - s <= s, got s={s}, m={m}")
    return _sum_of_orders(f"cor4(s={s},m={m})", m - 1, range(m - s), m - 2)


def _cor5(params) -> OdeSpec:
    sigma = _pattern_param(params)
    m = len(sigma)
    if list(sigma) == list(range(1, m + 1)):
        raise InvalidInput("cor5 excludes the identity pattern")
    p = cor5_parameters(sigma)
    r, s, c = p["r"], p["s"], p["c"]
    if r < 1 or s < 1:
        raise InvalidInput(f"cor5 needs r, s >= 1 (r={r}, s={s})")
    if r + s < c + 1:
        raise InvalidInput(f"cor5 needs r + s >= c + 1 (r={r}, s={s}, c={c})")
    bad = sorted(d for d in overlap_set(sigma) if d <= m - c - 1)
    if bad:
        raise InvalidInput(f"cor5 needs no overlaps in 1..{m - c - 1}; found {bad}")
    return _sum_of_orders(f"cor5({sigma})", m - 1, range(c), m - 2)


def _nonoverlap_1b(params) -> OdeSpec:
    if "sigma" in params:
        sigma = _pattern_param(params)
        if sigma[0] != 1 or not is_non_overlapping(sigma):
            raise InvalidInput(f"{sigma} is not a non-overlapping pattern starting with 1")
        m, b = len(sigma), sigma[-1]
    else:
        m, b = _int_param(params, "m"), _int_param(params, "b")
    if m < 3 or not 2 <= b <= m:
        raise InvalidInput(f"nonoverlap_1b needs m >= 3 and 2 <= b <= m, got m={m}, b={b}")
    pieces = [(b, 0, ONE), (1, m - b, W / math.factorial(m - b))]
    return _combine(f"nonoverlap_1b(m={m},b={b})", pieces, _standard_initial(b - 1))


def _order_param(params) -> int:
    m = _int_param(params, "m", 5)
    if m not in (5, 6):
        raise InvalidInput("this family is catalogued for m = 5 and m = 6 only")
    return m


def _p12534(params) -> OdeSpec:
    m = _order_param(params)
    pieces = [(m - 1, 0, ONE), (2, 1, W), (1, 1, W)]
    return _combine(f"p12534(m={m})", pieces, _standard_initial(m - 2))


def _p13254(params) -> OdeSpec:
    m = _order_param(params)
    pieces = [(m - 1, 0, ONE), (2, 0, W), (1, 1, W)]
    return _combine(f"p13254(m={m})", pieces, _standard_initial(m - 2))


def _p1324(params) -> OdeSpec:
    v = U - 1
    pieces = [
        (5, 1, ONE),
        (4, 1, -v),
        (4, 0, UPoly((3,))),
        (3, 1, v * -6),
        (3, 0, v * -3),
        (2, 1, v * (4 * U - 5)),
        (2, 0, v * -6),
        (1, 1, v * v * 8),
        (1, 0, v * -3),
        (0, 1, v * v * 4),
    ]
    return _combine("p1324", pieces, _standard_initial(3))


CATALOG = {
    "monotone": _monotone,
    "chain": _chain,
    "cor4": _cor4,
    "cor5": _cor5,
    "nonoverlap_1b": _nonoverlap_1b,
    "p12534": _p12534,
    "p13254": _p13254,
    "p1324": _p1324,
}


def builtin_ode(name: str, **params) -> OdeSpec:
    """An ODE from the catalog; raises InvalidInput for unknown names or bad parameters."""
    try:
        build = CATALOG[name]
    except KeyError:
        raise InvalidInput(f"unknown ODE {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    return build(params)


_SPECIAL = {
    "12534": ("p12534", {"m": 5}),
    "123645": ("p12534", {"m": 6}),
    "124635": ("p12534", {"m": 6}),
    "13254": ("p13254", {"m": 5}),
    "132465": ("p13254", {"m": 6}),
    "142365": ("p13254", {"m": 6}),
    "1324": ("p1324", {}),
}


def ode_for_pattern(sigma) -> OdeSpec:
    """The catalog entry that applies to sigma, tried from most to least specific."""
    sigma = parse_pattern(sigma)
    m = len(sigma)
    key = "".join(map(str, sigma)) if m <= 9 else None
    if key in _SPECIAL:
        name, params = _SPECIAL[key]
        return builtin_ode(name, **params)
    if m >= 3 and list(sigma) == list(range(1, m + 1)):
        return builtin_ode("monotone", m=m)
    if m >= 3 and sigma[0] == 1 and is_non_overlapping(sigma):
        return builtin_ode("nonoverlap_1b", sigma=sigma)
    try:
        return builtin_ode("cor5", sigma=sigma)
    except InvalidInput:
        pass
    return builtin_ode("chain", sigma=sigma)


def ode_residual(ode: OdeSpec, s: EgfSeries) -> EgfSeries:
    """sum_j coef_j * s^{(j)}, meaningful through order N - J."""
    J, d = ode.order, ode.z_degree
    if s.N < J + d:
        raise InvalidInput(f"series through order {s.N} is too short for an ODE needing {J + d}")
    top = s.N - J
    out = [ZERO] * (top + 1)
    for j, coef in ode.terms:
        deriv = [s[n + j] * (math.factorial(n + j) // math.factorial(n)) for n in range(s.N - j + 1)]
        for e, p in coef:
            for n in range(e, top + 1):
                c = deriv[n - e]
                if not c.is_zero():
                    out[n] = out[n] + p * c
    return EgfSeries(out, top)


@dataclass(frozen=True)
class OdeReport:
    name: str
    passed: bool
    checked_through: int
    first_nonzero: Optional[int]
    initial_ok: bool
    initial_mismatch: Optional[int]

    def to_json(self) -> dict:
        return {
            "ode": self.name,
            "pass": self.passed,
            "checked_orders": [0, self.checked_through],
            "first_nonzero_order": self.first_nonzero,
            "initial_conditions_ok": self.initial_ok,
            "initial_mismatch_order": self.initial_mismatch,
        }


def verify_ode(ode: OdeSpec, s: EgfSeries) -> OdeReport:
    """Residual vanishes through N - J - d and the initial values agree."""
    residual = ode_residual(ode, s)
    checked = s.N - ode.order - ode.z_degree
    first = next((n for n in range(checked + 1) if not residual[n].is_zero()), None)
    mismatch = None
    for i, value in ode.initial:
        if i > s.N or s[i] * math.factorial(i) != value:
            mismatch = i
            break
    return OdeReport(ode.name, first is None and mismatch is None, checked, first, mismatch is None, mismatch)
