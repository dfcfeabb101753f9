"""Coefficient recurrences for the three relation kinds.

Each solver takes the expansion of the relation between consecutive terms,
``sum a_j / n^j``, and returns the coefficients b of ``x_n / y_n`` as a
:class:`TruncatedSeries`:

difference
    x_n/y_n - x_{n+1}/y_{n+1} = sum a_j/n^j, with a_0 = a_1 = 0
product
    (x_n/y_n) (x_{n-1}/y_{n-1}) = sum a_j/n^j, with a_0 = 1
ratio
    (x_n/y_n) / (x_{n-1}/y_{n-1}) = sum a_j/n^j, with a_0 = 1, a_1 = 0

All recurrences are triangular: b_k depends only on b_1..b_{k-1} and the
a's, so a single forward sweep solves them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Literal, Sequence

from asyseries.errors import InsufficientCoefficientsError, NormalizationError
from asyseries.rational import RationalLike, binomial
from asyseries.series import TruncatedSeries

Kind = Literal["difference", "product", "ratio"]
KINDS: tuple[Kind, ...] = ("difference", "product", "ratio")


class CoeffStream:
    """On-demand a-coefficients of a relation, tagged with its kind.

    Values are memoized, so ``source`` is called at most once per index.
    """

    def __init__(self, kind: Kind, source: Callable[[int], RationalLike]):
        if kind not in KINDS:
            raise ValueError(f"unknown relation kind {kind!r}")
        self.kind = kind
        self._source = source
        self._cache: dict[int, Fraction] = {}

    @classmethod
    def from_list(cls, kind: Kind, values: Sequence[RationalLike]) -> CoeffStream:
        values = [Fraction(v) for v in values]

        def source(k: int) -> Fraction:
            if k >= len(values):
                raise InsufficientCoefficientsError(k, len(values))
            return values[k]

        return cls(kind, source)

    def __call__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError("coefficient index must be >= 0")
        try:
            return self._cache[k]
        except KeyError:
            value = self._cache[k] = Fraction(self._source(k))
            return value

    def series(self, m: int) -> TruncatedSeries:
        return TruncatedSeries(self(k) for k in range(m + 1))

    def check_normalization(self) -> None:
        a0, a1 = self(0), self(1)
        if self.kind == "difference" and (a0 != 0 or a1 != 0):
            raise NormalizationError(
                f"difference form needs a_0 = a_1 = 0, got a_0 = {a0}, a_1 = {a1}"
            )
        if self.kind == "product" and a0 != 1:
            raise NormalizationError(f"product form needs a_0 = 1, got a_0 = {a0}")
        if self.kind == "ratio" and (a0 != 1 or a1 != 0):
            raise NormalizationError(
                f"ratio form needs a_0 = 1 and a_1 = 0, got a_0 = {a0}, a_1 = {a1}"
            )

    def __repr__(self) -> str:
        return f"CoeffStream({self.kind!r})"


def _require_kind(a: CoeffStream, kind: Kind) -> None:
    if a.kind != kind:
        raise NormalizationError(f"expected a {kind} stream, got {a.kind}")
    a.check_normalization()


def _sweep(m: int, step: Callable[[int, list[Fraction]], Fraction]) -> TruncatedSeries:
    """Fill b_1..b_m in order; ``step(k, b)`` sees b_0..b_{k-1}."""
    if m < 0:
        raise ValueError("order must be >= 0")
    b = [Fraction(1)]
    for k in range(1, m + 1):
        b.append(step(k, b))
    return TruncatedSeries(b)


def _backward_coeff(b: Sequence[Fraction], i: int) -> Fraction:
    # coefficient of n^-i in the expansion of P(n-1); c_0 = b_0 = 1
    if i == 0:
        return b[0]
    return sum((binomial(i - 1, j - 1) * b[j] for j in range(1, i + 1)), Fraction(0))


def solve_difference(a: CoeffStream, m: int, *, _printed_sign: bool = False) -> TruncatedSeries:
    """Coefficients b_0..b_m for the difference form.

    b_k = (a_{k+1} + sum_{j=1}^{k-1} (-1)^(j+k+1) C(k, j-1) b_j) / k

    ``_printed_sign`` flips the sign inside the sum to (-1)^(j+k). That
    variant is wrong and exists only so the tests can demonstrate it.
    """
    _require_kind(a, "difference")
    parity = 0 if _printed_sign else 1

    def step(k, b):
        acc = a(k + 1)
        for j in range(1, k):
            term = binomial(k, j - 1) * b[j]
            acc += term if (j + k + parity) % 2 == 0 else -term
        return acc / k

    return _sweep(m, step)


def solve_product(a: CoeffStream, m: int) -> TruncatedSeries:
    """Coefficients b_0..b_m for the product form.

    b_1 = a_1 / 2 and, for k >= 2,
    b_k = (a_k - sum_{i=1}^{k-1} b_{k-i} c_i - sum_{j=1}^{k-1} C(k-1, j-1) b_j) / 2
    where c is the backward-shifted b.
    """
    _require_kind(a, "product")
    c = [Fraction(1)]

    def step(k, b):
        if k >= 2:
            # c_{k-1} only needs b_1..b_{k-1}, all known by now
            c.append(_backward_coeff(b, k - 1))
        acc = a(k)
        acc -= sum((b[k - i] * c[i] for i in range(1, k)), Fraction(0))
        acc -= sum((binomial(k - 1, j - 1) * b[j] for j in range(1, k)), Fraction(0))
        return acc / 2

    return _sweep(m, step)


def solve_ratio(a: CoeffStream, m: int) -> TruncatedSeries:
    """Coefficients b_0..b_m for the ratio form. Reads a up to a_{m+1}.

    b_1 = -a_2 and, for k >= 2,
    b_k = -(sum_{j=0}^{k-1} c_j a_{k+1-j} + sum_{j=1}^{k-1} C(k, j-1) b_j) / k
    """
    _require_kind(a, "ratio")
    c = [Fraction(1)]

    def step(k, b):
        if k >= 2:
            c.append(_backward_coeff(b, k - 1))
        acc = sum((c[j] * a(k + 1 - j) for j in range(k)), Fraction(0))
        acc += sum((binomial(k, j - 1) * b[j] for j in range(1, k)), Fraction(0))
        return -acc / k

    return _sweep(m, step)


_SOLVERS = {
    "difference": solve_difference,
    "product": solve_product,
    "ratio": solve_ratio,
}


def solve(a: CoeffStream, m: int) -> TruncatedSeries:
    """Dispatch to the solver matching ``a.kind``."""
    return _SOLVERS[a.kind](a, m)


def required_coefficients(kind: Kind, m: int) -> int:
    """How many a-coefficients (a_0 onward) a solve to order m reads."""
    return m + 1 if kind == "product" else m + 2


def exp_log_square_series(m: int) -> TruncatedSeries:
    """Coefficients s_0..s_m of (1 - 1/n^2)^n.

    s_0 = 1, s_k = -(1/k) sum_{j=1}^{floor((k+1)/2)} (2j-1)/j * s_{k+1-2j}
    """
    if m < 0:
        raise ValueError("order must be >= 0")
    s = [Fraction(1)]
    for k in range(1, m + 1):
        acc = sum(
            (Fraction(2 * j - 1, j) * s[k + 1 - 2 * j] for j in range(1, (k + 1) // 2 + 1)),
            Fraction(0),
        )
        s.append(-acc / k)
    return TruncatedSeries(s)


def additive_expansion(a: CoeffStream, m: int) -> TruncatedSeries:
    """Tail t_1..t_m of x_n - L = sum_{k>=1} t_k / n^k, where
    x_n - x_{n+1} = sum a_k / n^k and L is the limit of x_n.

    Dividing through by L turns this into the difference form; the
    recurrence for k >= 1 never reads b_0, so the scaling cancels and
    t_k = b_k. The constant slot of the result is 0.
    """
    b = solve_difference(a, m)
    return TruncatedSeries((Fraction(0),) + b.coeffs[1:])
