"""Exact rational arithmetic and truncated univariate power series.

Every coefficient that enters the order-by-order recursion is an exact
rational, so golden-value comparisons downstream are equality tests.  The
truncation order of a series is explicit state: operations truncate to the
smaller operand order and never extend precision.
"""
from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rat(value) -> Fraction:
    """Coerce an int, Fraction or canonical "p/q" string to a Fraction.

    Floats and decimal strings are rejected: series parameters are exact by
    contract.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RAT_RE.match(text):
            raise TypeError(f"expected an exact rational 'p/q', got {value!r}")
        return Fraction(text)
    raise TypeError(f"expected exact rational, got {type(value).__name__}: {value!r}")


def rat_str(value) -> str:
    """Canonical "num/den" form used in all JSON output ("0/1" for zero)."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


class TruncSeries:
    """Power series in t truncated at an explicit order.

    A series of order N stores exactly N+1 coefficients; trailing zeros are
    retained.  Binary operations truncate to min(order(a), order(b)).
    """

    __slots__ = ("coef",)

    def __init__(self, coefficients, order: int | None = None):
        coef = [rat(c) for c in coefficients]
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            if len(coef) > order + 1:
                coef = coef[: order + 1]
            else:
                coef.extend([Fraction(0)] * (order + 1 - len(coef)))
        if not coef:
            raise ValueError("a series needs at least the constant coefficient")
        self.coef = tuple(coef)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls([0], order=order)

    @classmethod
    def const(cls, value, order: int) -> "TruncSeries":
        return cls([rat(value)], order=order)

    # -- basic interface -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coef) - 1

    def __len__(self) -> int:
        return len(self.coef)

    def __getitem__(self, i: int) -> Fraction:
        return self.coef[i]

    def __iter__(self):
        return iter(self.coef)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coef == other.coef

    def __hash__(self):
        return hash(self.coef)

    def __repr__(self) -> str:
        return f"TruncSeries({[str(c) for c in self.coef]})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coef)

    def truncated(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coef[: order + 1])

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            n = min(self.order, other.order)
            return TruncSeries([self.coef[i] + other.coef[i] for i in range(n + 1)])
        return TruncSeries([self.coef[0] + rat(other), *self.coef[1:]])

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coef])

    def __sub__(self, other) -> "TruncSeries":
        return self + (-other if isinstance(other, TruncSeries) else -rat(other))

    def __rsub__(self, other) -> "TruncSeries":
        return (-self) + rat(other)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            n = min(self.order, other.order)
            out = [Fraction(0)] * (n + 1)
            for i, ci in enumerate(self.coef[: n + 1]):
                if ci == 0:
                    continue
                for j in range(n + 1 - i):
                    cj = other.coef[j]
                    if cj != 0:
                        out[i + j] += ci * cj
            return TruncSeries(out)
        q = rat(other)
        return TruncSeries([c * q for c in self.coef])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("negative powers are not defined for truncated series")
        out = TruncSeries.const(1, self.order)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus and evaluation -----------------------------------------------

    def derivative(self) -> "TruncSeries":
        if self.order == 0:
            raise ValueError("cannot differentiate constant-only series")
        return TruncSeries([(i + 1) * self.coef[i + 1] for i in range(self.order)])

    def eval_float(self, t: float) -> tuple[float, float]:
        """Horner evaluation at a float t.

        Returns (value, |last retained term|); the second entry is a cheap
        truncation-error proxy.  No convergence guarantee is implied.
        """
        acc = 0.0
        for c in reversed(self.coef):
            acc = acc * t + float(c)
        proxy = abs(float(self.coef[-1]) * t ** self.order)
        return acc, proxy

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coef]

    @classmethod
    def from_json(cls, data) -> "TruncSeries":
        return cls([rat(str(c)) for c in data])


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated to the smaller operand order."""
    return a * b


def series_derivative(a: TruncSeries) -> TruncSeries:
    return a.derivative()


def series_eval_float(a: TruncSeries, t: float) -> tuple[float, float]:
    return a.eval_float(t)
