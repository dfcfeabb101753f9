"""Truncated power series in 1/n with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import mpmath

from asyseries.rational import (
    RationalLike,
    binomial,
    falling_factorial,
    format_rational,
    parse_rational,
)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """sum_{k=0}^{order} coeffs[k] / n^k.

    Nothing is known beyond ``order``: binary operations truncate to the
    smaller order, and comparing series of different orders is an error.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[RationalLike]):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls([1] + [0] * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def _check_order(self, other: TruncatedSeries) -> None:
        if self.order != other.order:
            raise ValueError(
                f"series of orders {self.order} and {other.order} are not comparable"
            )

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_order(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        m = min(self.order, other.order)
        return TruncatedSeries(self.coeffs[k] + other.coeffs[k] for k in range(m + 1))

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(-c for c in self.coeffs)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(c * other for c in self.coeffs)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        x, y = self.coeffs, other.coeffs
        return TruncatedSeries(
            sum((x[j] * y[k - j] for j in range(k + 1)), Fraction(0)) for k in range(m + 1)
        )

    __rmul__ = __mul__

    def __repr__(self) -> str:
        inner = ", ".join(format_rational(c) for c in self.coeffs)
        return f"TruncatedSeries([{inner}])"


def series_add(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    return x + y


def series_mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    return x * y


def shift_forward(f: TruncatedSeries) -> TruncatedSeries:
    """Re-expand f(n+1) in powers of 1/n. The constant term is unchanged."""
    a = f.coeffs
    out = [a[0]]
    for k in range(1, f.order + 1):
        out.append(
            sum(
                (a[j] * (-1) ** (k - j) * binomial(k - 1, j - 1) for j in range(1, k + 1)),
                Fraction(0),
            )
        )
    return TruncatedSeries(out)


def shift_backward(f: TruncatedSeries) -> TruncatedSeries:
    """Re-expand f(n-1) in powers of 1/n. The constant term is unchanged."""
    a = f.coeffs
    out = [a[0]]
    for k in range(1, f.order + 1):
        out.append(sum((a[j] * binomial(k - 1, j - 1) for j in range(1, k + 1)), Fraction(0)))
    return TruncatedSeries(out)


def binomial_series(alpha: RationalLike, c: RationalLike, m: int) -> TruncatedSeries:
    """Coefficients of (1 - c/n)^alpha up to n^-m."""
    if m < 0:
        raise ValueError("order must be >= 0")
    alpha, c = Fraction(alpha), Fraction(c)
    out = []
    fact = 1
    for j in range(m + 1):
        if j:
            fact *= j
        out.append(falling_factorial(alpha, j) / fact * (-c) ** j)
    return TruncatedSeries(out)


def exact_value(f: TruncatedSeries, n: RationalLike) -> Fraction:
    """Horner evaluation of the truncated sum at n, in exact arithmetic."""
    inv = 1 / Fraction(n)
    acc = Fraction(0)
    for c in reversed(f.coeffs):
        acc = acc * inv + c
    return acc


def evaluate(f: TruncatedSeries, n: int, precision: int = 50) -> mpmath.mpf:
    """Value of the truncated sum at n, rounded once to ``precision`` digits."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if precision < 10:
        raise ValueError("precision must be at least 10 digits")
    q = exact_value(f, n)
    with mpmath.workdps(precision):
        return mpmath.mpf(q.numerator) / q.denominator


def format_series(f: TruncatedSeries) -> str:
    lines = [f"order {f.order}"]
    lines.extend(format_rational(c) for c in f.coeffs)
    return "\n".join(lines) + "\n"


def parse_series(text: str) -> TruncatedSeries:
    """Inverse of :func:`format_series`. Blank lines are ignored."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise ValueError("empty series text")
    first_no, first = lines[0]
    head = first.split()
    if len(head) != 2 or head[0] != "order":
        raise ValueError(f"line {first_no}: expected 'order m', got {first!r}")
    try:
        m = int(head[1])
    except ValueError:
        raise ValueError(f"line {first_no}: bad order {head[1]!r}") from None
    if m < 0:
        raise ValueError(f"line {first_no}: order must be >= 0")
    body = lines[1:]
    if len(body) != m + 1:
        raise ValueError(f"expected {m + 1} coefficients, found {len(body)}")
    coeffs = []
    for lineno, ln in body:
        try:
            coeffs.append(parse_rational(ln))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return TruncatedSeries(coeffs)
