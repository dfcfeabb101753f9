"""Exact scalar helpers on top of :class:`fractions.Fraction`.

``Fraction`` already keeps values in lowest terms with a positive
denominator, so arithmetic is plain operator use. This module adds the
text exchange format and the combinatorial quantities the recurrences need.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

RationalLike = Union[int, Fraction]

_MINUS_SIGNS = ("−", "–")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional leading minus) into a Fraction.

    Raises ``ValueError`` on anything else, including a zero denominator.
    """
    s = text.strip()
    for sign in _MINUS_SIGNS:
        s = s.replace(sign, "-")
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(p, q)


def format_rational(x: RationalLike) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def binomial(n: int, k: int) -> int:
    """C(n, k), with 0 returned for k outside 0..n."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling_factorial(s: RationalLike, n: int) -> Fraction:
    """s (s-1) ... (s-n+1); the empty product for n = 0 is 1."""
    if n < 0:
        raise ValueError("falling_factorial requires n >= 0")
    s = Fraction(s)
    result = Fraction(1)
    for i in range(n):
        result *= s - i
    return result


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, B_0 = 1
    table = [Fraction(1)]
    for k in range(1, m + 1):
        acc = sum(math.comb(k + 1, j) * table[j] for j in range(k))
        table.append(-acc / (k + 1))
    return tuple(table)


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m with the convention B_1 = -1/2."""
    if m < 0:
        raise ValueError("bernoulli requires m >= 0")
    return _bernoulli_table(m)[m]
