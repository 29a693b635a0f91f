"""Truncated power series whose coefficients are polynomials in one variable.

``EgfSeries`` and ``OgfSeries`` share all arithmetic; the subclass only
records which generating-function convention the coefficients follow.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..cluster import cluster_polynomials
from ..errors import InvalidInput
from ..perm import as_pattern_set
from .upoly import ONE, U, ZERO, UPoly, format_fraction


def _as_upoly(c) -> UPoly:
    return c if isinstance(c, UPoly) else UPoly((c,))


class PowerSeries:
    """sum_{n <= N} c_n x^n, each c_n a UPoly; immutable."""

    __slots__ = ("N", "coeffs")

    def __init__(self, coeffs: Sequence, N: int | None = None):
        cs = [_as_upoly(c) for c in coeffs]
        if N is None:
            N = len(cs) - 1
        if N < 0:
            raise InvalidInput("truncation order must be >= 0")
        cs = cs[: N + 1] + [ZERO] * (N + 1 - len(cs))
        self.N = N
        self.coeffs = tuple(cs)

    # -- construction ---------------------------------------------------
    @classmethod
    def zero(cls, N: int):
        return cls([], N)

    @classmethod
    def one(cls, N: int):
        return cls([ONE], N)

    @classmethod
    def monomial(cls, d: int, N: int, c=1):
        return cls([ZERO] * d + [_as_upoly(c)], N)

    # -- access ---------------------------------------------------------
    def __getitem__(self, n: int) -> UPoly:
        return self.coeffs[n] if 0 <= n <= self.N else ZERO

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return self.N + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return type(self) is type(other) and self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.N, self.coeffs))

    def _new(self, coeffs, N=None):
        return type(self)(coeffs, self.N if N is None else N)

    def _peer(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            if type(other) is not type(self):
                raise InvalidInput("cannot mix EGF and OGF series")
            return other
        return type(self)([_as_upoly(other)], self.N)

    def truncate(self, N: int):
        if N > self.N:
            raise InvalidInput(f"cannot extend a series known through {self.N} to {N}")
        return self._new(self.coeffs[: N + 1], N)

    def first_difference(self, other) -> int | None:
        """Smallest order where the two series differ (within the common range)."""
        other = self._peer(other)
        for n in range(min(self.N, other.N) + 1):
            if self[n] != other[n]:
                return n
        return None

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        try:
            o = self._peer(other)
        except TypeError:
            return NotImplemented
        N = min(self.N, o.N)
        return self._new([self[n] + o[n] for n in range(N + 1)], N)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._peer(other))

    def __rsub__(self, other):
        return self._peer(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = _as_upoly(other)
            return self._new([c * x for x in self.coeffs])
        o = self._peer(other)
        N = min(self.N, o.N)
        out = [ZERO] * (N + 1)
        for i in range(N + 1):
            a = self[i]
            if a.is_zero():
                continue
            for j in range(N + 1 - i):
                b = o[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return self._new(out, N)

    __rmul__ = __mul__

    def shift(self, d: int):
        """Multiply by x^d, keeping the truncation order."""
        return self._new([ZERO] * d + list(self.coeffs[: self.N + 1 - d]))

    def reciprocal(self):
        """Multiplicative inverse; the constant term must be a nonzero constant."""
        c0 = self[0]
        if c0.is_zero() or not c0.is_constant():
            raise InvalidInput("reciprocal needs a nonzero constant term free of the inner variable")
        inv0 = 1 / c0.constant
        out = [UPoly((inv0,))]
        for n in range(1, self.N + 1):
            acc = ZERO
            for i in range(1, n + 1):
                if not self[i].is_zero():
                    acc = acc + self[i] * out[n - i]
            out.append(acc * (-inv0))
        return self._new(out)

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * self._peer(other).reciprocal()
        return self._new([c / other for c in self.coeffs])

    def compose(self, inner):
        """self(inner(x)); inner must have zero constant term."""
        inner = self._peer(inner)
        if not inner[0].is_zero():
            raise InvalidInput("composition needs an inner series with zero constant term")
        N = min(self.N, inner.N)
        inner = inner.truncate(N)
        acc = type(self).zero(N)
        for n in range(N, -1, -1):
            acc = acc * inner + type(self)([self[n]], N)
        return acc

    def map(self, fn):
        return self._new([fn(c) for c in self.coeffs])

    def at(self, value):
        """Substitute the inner variable; a UPoly argument composes polynomially."""
        if isinstance(value, UPoly):
            return self.map(lambda c: c.compose(value))
        return self.map(lambda c: UPoly((c(Fraction(value)),)))

    def constant_slice(self) -> list:
        """Coefficients as Fractions; all must be free of the inner variable."""
        if not all(c.is_constant() for c in self.coeffs):
            raise InvalidInput("series still depends on the inner variable")
        return [c.constant for c in self.coeffs]

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict):
        return cls([UPoly.from_json(c) for c in data["coeffs"]], data["N"])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(N={self.N})"

    def format(self, var: str = "z", inner: str = "u") -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if n == 0 else var if n == 1 else f"{var}^{n}"
            body = c.format(inner)
            parts.append(f"({body}){'*' + mono if mono else ''}")
        return " + ".join(parts) + f" + O({var}^{self.N + 1})" if parts else f"O({var}^{self.N + 1})"


class EgfSeries(PowerSeries):
    """Exponential-convention series in z."""

    __slots__ = ()

    def derivative(self, times: int = 1) -> "EgfSeries":
        s = self
        for _ in range(times):
            if s.N == 0:
                raise InvalidInput("cannot differentiate a series known only through order 0")
            s = EgfSeries([s[n + 1] * (n + 1) for n in range(s.N)], s.N - 1)
        return s

    def integral(self) -> "EgfSeries":
        return EgfSeries([ZERO] + [c / (n + 1) for n, c in enumerate(self.coeffs)], self.N + 1)


class OgfSeries(PowerSeries):
    """Ordinary-convention series in x."""

    __slots__ = ()


def egf_from_ogf(s: OgfSeries) -> EgfSeries:
    return EgfSeries([c / math.factorial(n) for n, c in enumerate(s.coeffs)], s.N)


def ogf_from_egf(s: EgfSeries) -> OgfSeries:
    return OgfSeries([c * math.factorial(n) for n, c in enumerate(s.coeffs)], s.N)


def reciprocal(s: PowerSeries) -> PowerSeries:
    return s.reciprocal()


T_TO_U = U - 1


def cluster_ogf(patterns, N: int) -> OgfSeries:
    """Clo(t, x): coefficient n is r_n(t) as a polynomial in t."""
    polys = cluster_polynomials(as_pattern_set(patterns), N)
    return OgfSeries([UPoly(p[k] for k in range(max(p.coefficients, default=-1) + 1)) for p in polys], N)


def omega_series(patterns, N: int) -> EgfSeries:
    """1 - z - R(u - 1, z) through z^N, as an EgfSeries in z with coefficients in u."""
    clo = cluster_ogf(patterns, N)
    coeffs = [ONE, -ONE][: N + 1]
    for n in range(2, N + 1):
        coeffs.append(-clo[n].compose(T_TO_U) / math.factorial(n))
    return EgfSeries(coeffs, N)


def p_series(patterns, N: int) -> EgfSeries:
    """P(u, z) = 1/omega; n! [z^n] is the distribution of occurrence counts."""
    return omega_series(patterns, N).reciprocal()


def avoiders(patterns, N: int, start: int | None = None) -> list:
    """alpha_n for n = start..N (default start: the shortest pattern length)."""
    pset = as_pattern_set(patterns)
    start = pset.min_length if start is None else start
    if start < 0 or start > N:
        raise InvalidInput(f"need 0 <= start <= N, got start={start}, N={N}")
    clo = cluster_ogf(pset, N).at(-1)
    omega0 = EgfSeries(
        [ONE, -ONE][: N + 1] + [-clo[n] / math.factorial(n) for n in range(2, N + 1)], N
    )
    p = omega0.reciprocal().constant_slice()
    out = []
    for n in range(start, N + 1):
        value = p[n] * math.factorial(n)
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral avoider count at n={n}")
        out.append(int(value))
    return out


def closed_form_monotone_omega(m: int, N: int) -> EgfSeries:
    """u = 0 slice: sum z^{jm}/(jm)! - sum z^{jm+1}/(jm+1)!."""
    if m < 3:
        raise InvalidInput("the closed form needs m >= 3 (m = 2 leaves a stray -1-t term)")
    coeffs = [ZERO] * (N + 1)
    for base in range(0, N + 1, m):
        coeffs[base] = UPoly((Fraction(1, math.factorial(base)),))
        if base + 1 <= N:
            coeffs[base + 1] = UPoly((Fraction(-1, math.factorial(base + 1)),))
    return EgfSeries(coeffs, N)


def closed_form_nonoverlap_b2(m: int, N: int) -> EgfSeries:
    """1 - integral_0^z exp((u-1) v^{m-1}/(m-1)!) dv, expanded termwise."""
    if m < 3:
        raise InvalidInput("need m >= 3")
    coeffs = [ZERO] * (N + 1)
    coeffs[0] = ONE
    w = T_TO_U
    j = 0
    while j * (m - 1) + 1 <= N:
        n = j * (m - 1) + 1
        denom = math.factorial(j) * math.factorial(m - 1) ** j * n
        coeffs[n] = coeffs[n] - (w**j) / denom
        j += 1
    return EgfSeries(coeffs, N)


def format_rational_list(values: Sequence[Fraction]) -> list:
    return [format_fraction(Fraction(v)) for v in values]
