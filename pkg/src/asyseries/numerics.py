"""High-precision checks of truncated expansions against exact sequence values."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Iterable, Optional

import mpmath

from asyseries.catalog import SequenceSpec
from asyseries.errors import (
    DegenerateConvergenceError,
    ExpansionOnlyError,
    PrecisionFloorError,
)
from asyseries.series import TruncatedSeries, evaluate

DEFAULT_PRECISION = 50
DISPLAY_PLACES = 9
# errors within this many digits of the working precision are treated as noise
FLOOR_MARGIN = 5


def _require_evaluator(spec: SequenceSpec) -> None:
    if not spec.has_evaluator:
        raise ExpansionOnlyError(
            f"{spec.name!r} is an expansion-only sequence: no exact values to compare against"
        )


def estimate(
    spec: SequenceSpec,
    b: TruncatedSeries,
    n: int,
    k: int,
    precision: int = DEFAULT_PRECISION,
) -> mpmath.mpf:
    """Truncated estimate of x_n using b_0..b_k.

    Multiplicative kinds give y_n * sum_{j<=k} b_j n^-j. Additive specs
    give L + sum_{1<=j<=k} t_j n^-j, with b_0 ignored.
    """
    if k > b.order:
        raise ValueError(f"truncation order {k} exceeds series order {b.order}")
    if k < 0:
        raise ValueError("truncation order must be >= 0")
    if spec.eval_y is None:
        raise ExpansionOnlyError(f"{spec.name!r} has no leading-order estimate y_n")
    y = spec.eval_y(n, precision)
    partial = evaluate(b.truncate(k), n, precision)
    with mpmath.workdps(precision):
        if spec.additive:
            return y + (partial - b[0])
        return y * partial


def _scaled_error(spec, b, n, k, precision):
    with mpmath.workdps(precision):
        err = abs(spec.eval_x(n, precision) - estimate(spec, b, n, k, precision))
        if not spec.additive:
            err /= spec.eval_y(n, precision)
        return err


def to_decimal_string(x: mpmath.mpf, precision: int) -> str:
    """Fixed-point decimal text carrying ``precision`` significant digits."""
    with mpmath.workdps(precision):
        return mpmath.nstr(x, precision, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def display_round(
    x: mpmath.mpf, places: int = DISPLAY_PLACES, precision: int = DEFAULT_PRECISION
) -> str:
    """Round half-to-even at ``places`` decimals."""
    q = Decimal(1).scaleb(-places)
    rounded = Decimal(to_decimal_string(x, precision)).quantize(q, rounding=ROUND_HALF_EVEN)
    return format(rounded, "f")


@dataclass(frozen=True)
class ErrorRow:
    n: int
    k: int
    estimate: mpmath.mpf
    exact: mpmath.mpf
    abs_error: mpmath.mpf


@dataclass(frozen=True)
class ErrorTable:
    name: str
    precision: int
    rows: tuple[ErrorRow, ...]

    FIELDS = ("n", "k", "estimate", "exact", "abs_error")

    def _full(self, row: ErrorRow) -> dict:
        p = self.precision
        return {
            "n": row.n,
            "k": row.k,
            "estimate": to_decimal_string(row.estimate, p),
            "exact": to_decimal_string(row.exact, p),
            "abs_error": to_decimal_string(row.abs_error, p),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(self._full(row))
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "sequence": self.name,
            "precision": self.precision,
            "rows": [self._full(row) for row in self.rows],
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_plain(self) -> str:
        p = self.precision
        body = [
            (
                str(r.n),
                str(r.k),
                display_round(r.estimate, precision=p),
                display_round(r.exact, precision=p),
                mpmath.nstr(r.abs_error, 3, min_fixed=1, max_fixed=0),
            )
            for r in self.rows
        ]
        header = self.FIELDS
        widths = [max([len(h)] + [len(line[i]) for line in body]) for i, h in enumerate(header)]
        lines = [f"# {self.name}"]
        lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
        for line in body:
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(line, widths)))
        return "\n".join(lines) + "\n"

    def format(self, fmt: str) -> str:
        if fmt == "plain":
            return self.to_plain()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")


def error_table(
    spec: SequenceSpec,
    b: TruncatedSeries,
    n_list: Iterable[int],
    k_list: Iterable[int],
    precision: int = DEFAULT_PRECISION,
) -> ErrorTable:
    """Estimate, exact value and absolute error for every (n, k), sorted by (n, k)."""
    _require_evaluator(spec)
    ns = sorted(set(n_list))
    ks = sorted(set(k_list))
    rows = []
    for n in ns:
        exact = spec.eval_x(n, precision)
        for k in ks:
            est = estimate(spec, b, n, k, precision)
            with mpmath.workdps(precision):
                err = abs(exact - est)
            rows.append(ErrorRow(n, k, est, exact, err))
    return ErrorTable(spec.name, precision, tuple(rows))


def convergence_order(
    spec: SequenceSpec,
    b: TruncatedSeries,
    k: int,
    n0: int,
    precision: int = DEFAULT_PRECISION,
) -> float:
    """Empirical exponent log2(err(n0) / err(2 n0)) of the k-th truncation.

    The error is scaled by y_n for multiplicative kinds and absolute for
    additive ones, so the result should approach the index of the first
    omitted nonzero coefficient.
    """
    _require_evaluator(spec)
    e1 = _scaled_error(spec, b, n0, k, precision)
    e2 = _scaled_error(spec, b, 2 * n0, k, precision)
    if e1 == 0 and e2 == 0:
        raise DegenerateConvergenceError(
            f"truncation at k = {k} is exact for {spec.name!r}; no convergence rate"
        )
    floor = mpmath.mpf(10) ** (FLOOR_MARGIN - precision)
    if e1 <= floor or e2 <= floor:
        raise PrecisionFloorError(
            f"error at n = {2 * n0 if e2 <= floor else n0} is below the precision floor "
            f"(~1e{FLOOR_MARGIN - precision}); raise the precision"
        )
    with mpmath.workdps(precision):
        return float(mpmath.log(e1 / e2, 2))


def next_nonzero_index(b: TruncatedSeries, k: int) -> Optional[int]:
    """Index of the first nonzero coefficient after b_k, if any within the order."""
    for j in range(k + 1, b.order + 1):
        if b[j] != 0:
            return j
    return None

