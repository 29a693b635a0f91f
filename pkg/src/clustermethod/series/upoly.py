"""Univariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class UPoly:
    """Immutable polynomial sum c_i v^i over the rationals; trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def var(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @staticmethod
    def _coerce(other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        return UPoly((other,))

    def __add__(self, other) -> "UPoly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UPoly":
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "UPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            try:
                c = _frac(other)
            except TypeError:
                return NotImplemented
            return UPoly([c * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "UPoly":
        c = _frac(other)
        return UPoly([x / c for x in self.coeffs])

    def __pow__(self, k: int) -> "UPoly":
        result = UPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UPoly((other,)).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        """Evaluate (Horner); ``x`` may be a number or another UPoly."""
        acc = x * 0 if isinstance(x, UPoly) else Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UPoly") -> "UPoly":
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def to_json(self) -> list:
        return [format_fraction(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "UPoly":
        return cls(Fraction(s) for s in items)

    def __repr__(self) -> str:
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return self.format("u")

    def format(self, var: str = "u") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = UPoly()
ONE = UPoly((1,))
U = UPoly.var()
