"""Built-in sequences and user-supplied coefficient files."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

import mpmath

from asyseries.rational import RationalLike, falling_factorial, parse_rational
from asyseries.recurrences import (
    KINDS,
    CoeffStream,
    Kind,
    exp_log_square_series,
    required_coefficients,
)

Evaluator = Callable[[int, int], mpmath.mpf]

# extra digits carried through long first-order recurrences
GUARD_DIGITS = 10


@dataclass(frozen=True)
class ReferenceCoeff:
    """A known coefficient; ``published`` is False for values we derived."""

    index: int
    value: Fraction
    published: bool = True


@dataclass(frozen=True)
class SequenceSpec:
    """A sequence x_n, its leading behaviour y_n, and the relation's a-stream.

    ``eval_x`` and ``eval_y`` take ``(n, precision)`` and return mpf values.
    Specs built from coefficient files have no evaluators.
    ``limit_constant`` is set only for the additive (difference) entries,
    where y_n is the constant limit and the expansion is read as
    x_n = L + sum_{k>=1} t_k / n^k.
    """

    name: str
    kind: Kind
    a_stream: CoeffStream
    eval_x: Optional[Evaluator] = None
    eval_y: Optional[Evaluator] = None
    limit_constant: Optional[str] = None
    reference_coeffs: tuple[ReferenceCoeff, ...] = ()
    table_n: Optional[int] = None
    reference_table: dict = field(default_factory=dict)
    max_order: Optional[int] = None
    description: str = ""

    @property
    def additive(self) -> bool:
        return self.limit_constant is not None

    @property
    def has_evaluator(self) -> bool:
        return self.eval_x is not None and self.eval_y is not None


# --- Euler's constant --------------------------------------------------------


def _euler_a(k: int) -> Fraction:
    if k < 2:
        return Fraction(0)
    return Fraction((-1) ** k * (k - 1), k)


def _harmonic_minus_log(n: int, precision: int) -> mpmath.mpf:
    if n < 1:
        raise ValueError("n must be >= 1")
    with mpmath.workdps(precision + GUARD_DIGITS + len(str(n))):
        h = mpmath.fsum(mpmath.mpf(1) / k for k in range(1, n + 1))
        value = h - mpmath.log(n)
    with mpmath.workdps(precision):
        return +value


def _euler_gamma(n: int, precision: int) -> mpmath.mpf:
    with mpmath.workdps(precision):
        return +mpmath.euler


def euler_spec() -> SequenceSpec:
    """H_n - ln n, which tends to Euler's constant."""
    refs = [(1, Fraction(1, 2)), (2, Fraction(-1, 12)), (4, Fraction(1, 120)),
            (6, Fraction(-1, 252)), (8, Fraction(1, 240)), (10, Fraction(-1, 132))]
    return SequenceSpec(
        name="euler",
        kind="difference",
        a_stream=CoeffStream("difference", _euler_a),
        eval_x=_harmonic_minus_log,
        eval_y=_euler_gamma,
        limit_constant="gamma",
        reference_coeffs=tuple(ReferenceCoeff(i, v) for i, v in refs),
        table_n=10,
        description="H_n - ln n -> gamma",
    )


# --- Wallis cosine integral --------------------------------------------------


def _wallis_a(j: int) -> Fraction:
    return (-1) ** j * falling_factorial(Fraction(1, 2), j) / math.factorial(j)


def wallis_integral(n: int, precision: int) -> mpmath.mpf:
    """I_n = (1/pi) int_{-pi/2}^{pi/2} cos^n t dt via n I_n I_{n-1} = 2/pi."""
    if n < 0:
        raise ValueError("n must be >= 0")
    with mpmath.workdps(precision + GUARD_DIGITS + len(str(n))):
        two_over_pi = 2 / mpmath.pi
        value = mpmath.mpf(1)
        for k in range(1, n + 1):
            value = two_over_pi / (k * value)
    with mpmath.workdps(precision):
        return +value


def _wallis_y(n: int, precision: int) -> mpmath.mpf:
    with mpmath.workdps(precision):
        return mpmath.sqrt(2 / (mpmath.pi * n))


def wallis_spec() -> SequenceSpec:
    """The cosine-power integral I_n, against sqrt(2/(pi n))."""
    refs = [Fraction(-1, 4), Fraction(1, 32), Fraction(5, 128),
            Fraction(-21, 2048), Fraction(-399, 8192)]
    table = {
        "exact": Fraction("0.235172672"),
        1: Fraction("0.235103718"),
        2: Fraction("0.235165849"),
        3: Fraction("0.23517291"),
        4: Fraction("0.235172741"),
        5: Fraction("0.235172669"),
    }
    return SequenceSpec(
        name="wallis",
        kind="product",
        a_stream=CoeffStream("product", _wallis_a),
        eval_x=wallis_integral,
        eval_y=_wallis_y,
        reference_coeffs=tuple(
            ReferenceCoeff(i, v) for i, v in enumerate(refs, start=1)
        ),
        table_n=11,
        reference_table=table,
        description="I_n = (1/pi) int cos^n, ~ sqrt(2/(pi n))",
    )


# --- (1 + 1/n)^n -------------------------------------------------------------


@lru_cache(maxsize=None)
def _napier_prefix(m: int) -> tuple[Fraction, ...]:
    s = exp_log_square_series(m)
    sums, acc = [], Fraction(0)
    for c in s:
        acc += c
        sums.append(acc)
    return tuple(sums)


def _napier_a(k: int) -> Fraction:
    # grow in blocks so repeated queries don't redo the s-recurrence
    size = 16
    while size <= k:
        size *= 2
    return _napier_prefix(size)[k]


def _napier_x(n: int, precision: int) -> mpmath.mpf:
    if n < 1:
        raise ValueError("n must be >= 1")
    with mpmath.workdps(precision + GUARD_DIGITS):
        value = (1 + mpmath.mpf(1) / n) ** n
    with mpmath.workdps(precision):
        return +value


def _napier_y(n: int, precision: int) -> mpmath.mpf:
    with mpmath.workdps(precision):
        return +mpmath.e


def napier_spec() -> SequenceSpec:
    """(1 + 1/n)^n against its limit e."""
    refs = [Fraction(-1, 2), Fraction(11, 24), Fraction(-7, 16), Fraction(2447, 5760),
            Fraction(-959, 2304), Fraction(238043, 580608)]
    return SequenceSpec(
        name="napier",
        kind="ratio",
        a_stream=CoeffStream("ratio", _napier_a),
        eval_x=_napier_x,
        eval_y=_napier_y,
        reference_coeffs=tuple(
            ReferenceCoeff(i, v) for i, v in enumerate(refs, start=1)
        ),
        table_n=10,
        description="(1 + 1/n)^n -> e",
    )


# --- J_n = int_0^inf (1 + t^2)^-n dt -----------------------------------------


def _beta_d(j: int) -> Fraction:
    # coefficients of (1 - 1/n)^(-1/2)
    return (-1) ** j * falling_factorial(Fraction(-1, 2), j) / math.factorial(j)


def _beta_a(k: int) -> Fraction:
    if k == 0:
        return Fraction(1)
    if k == 1:
        return Fraction(0)
    partial = sum((_beta_d(j) for j in range(1, k)), Fraction(0))
    return Fraction(-1, 2) - partial / 2 + _beta_d(k)


def beta_integral(n: int, precision: int) -> mpmath.mpf:
    """J_n via J_n = (2n-3)/(2n-2) J_{n-1}, seeded by J_1 = pi/2."""
    if n < 1:
        raise ValueError("J_n is seeded at n = 1; n must be >= 1")
    with mpmath.workdps(precision + GUARD_DIGITS + len(str(n))):
        value = mpmath.pi / 2
        for k in range(2, n + 1):
            value = value * (2 * k - 3) / (2 * k - 2)
    with mpmath.workdps(precision):
        return +value


def _beta_y(n: int, precision: int) -> mpmath.mpf:
    with mpmath.workdps(precision):
        return mpmath.sqrt(mpmath.pi / n) / 2


def beta_integral_spec() -> SequenceSpec:
    """J_n = int_0^inf (1+t^2)^-n dt against (1/2) sqrt(pi/n)."""
    refs = [
        ReferenceCoeff(1, Fraction(3, 8)),
        ReferenceCoeff(2, Fraction(25, 128)),
        ReferenceCoeff(3, Fraction(105, 1024)),
        # the published 302/5965 is not what the recurrence gives
        ReferenceCoeff(4, Fraction(1659, 32768), published=False),
    ]
    table = {
        "exact": Fraction("0.291336507"),
        0: Fraction("0.280249561"),
        1: Fraction("0.290758919"),
        2: Fraction("0.291306282"),
        3: Fraction("0.291335018"),
        4: Fraction("0.291336437"),
    }
    return SequenceSpec(
        name="beta_integral",
        kind="ratio",
        a_stream=CoeffStream("ratio", _beta_a),
        eval_x=beta_integral,
        eval_y=_beta_y,
        reference_coeffs=tuple(refs),
        table_n=10,
        reference_table=table,
        description="J_n = int_0^inf (1+t^2)^-n dt, ~ (1/2) sqrt(pi/n)",
    )


_BUILTINS = {
    "beta_integral": beta_integral_spec,
    "euler": euler_spec,
    "napier": napier_spec,
    "wallis": wallis_spec,
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def builtin_specs() -> list[SequenceSpec]:
    return [_BUILTINS[name]() for name in builtin_names()]


def get_builtin(name: str) -> SequenceSpec:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise KeyError(
            f"unknown sequence {name!r}; built-ins are {', '.join(builtin_names())}"
        ) from None


# --- user-supplied coefficients ----------------------------------------------


def custom_spec(kind: Kind, coeffs: Sequence[RationalLike], name: str = "custom") -> SequenceSpec:
    """Expansion-only spec backed by an explicit list a_0, a_1, ...

    Indices past the end of the list raise
    :class:`~asyseries.errors.InsufficientCoefficientsError` when read.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown relation kind {kind!r}")
    if len(coeffs) < 2:
        raise ValueError("at least a_0 and a_1 are required")
    stream = CoeffStream.from_list(kind, coeffs)
    stream.check_normalization()
    max_order = len(coeffs) - 1 if kind == "product" else len(coeffs) - 2
    return SequenceSpec(name=name, kind=kind, a_stream=stream, max_order=max_order)


def parse_coeff_file(text: str, name: str = "custom") -> tuple[SequenceSpec, int]:
    """Parse the plain-text coefficient format; returns the spec and its order.

    Layout::

        kind: ratio
        order: 3
        1
        0
        -3/8
        ...

    Errors are ``ValueError`` naming the offending line. Normalization
    problems surface as :class:`~asyseries.errors.NormalizationError`.
    """
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if len(lines) < 2:
        raise ValueError("expected 'kind:' and 'order:' header lines")
    kind = _header(lines[0], "kind")
    if kind not in KINDS:
        raise ValueError(f"line {lines[0][0]}: unknown kind {kind!r}")
    order_text = _header(lines[1], "order")
    try:
        order = int(order_text)
    except ValueError:
        raise ValueError(f"line {lines[1][0]}: bad order {order_text!r}") from None
    if order < 1:
        raise ValueError(f"line {lines[1][0]}: order must be >= 1")
    coeffs = []
    for lineno, ln in lines[2:]:
        try:
            coeffs.append(parse_rational(ln))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    need = required_coefficients(kind, order)
    if len(coeffs) < need:
        raise ValueError(
            f"{kind} kind at order {order} needs {need} coefficients "
            f"(a_0..a_{need - 1}), found {len(coeffs)}"
        )
    return custom_spec(kind, coeffs, name=name), order


def _header(line: tuple[int, str], key: str) -> str:
    lineno, text = line
    label, sep, value = text.partition(":")
    if not sep or label.strip() != key:
        raise ValueError(f"line {lineno}: expected '{key}: ...', got {text!r}")
    return value.strip()

