import csv
import io
import json
from fractions import Fraction

import mpmath
import pytest

from asyseries.catalog import SequenceSpec, builtin_specs, custom_spec, get_builtin
from asyseries.errors import DegenerateConvergenceError, ExpansionOnlyError, PrecisionFloorError
from asyseries.numerics import (
    convergence_order,
    display_round,
    error_table,
    estimate,
    next_nonzero_index,
    to_decimal_string,
)
from asyseries.recurrences import CoeffStream, solve
from asyseries.series import TruncatedSeries

F = Fraction


def solved(name, m=10):
    spec = get_builtin(name)
    return spec, solve(spec.a_stream, m)


def test_wallis_estimate_table_entry():
    spec, b = solved("wallis", 5)
    assert abs(estimate(spec, b, 11, 5, 30) - mpmath.mpf("0.235172669")) < 5e-10


def test_beta_estimate_leading_term():
    spec, b = solved("beta_integral", 4)
    assert abs(estimate(spec, b, 10, 0, 30) - mpmath.mpf("0.280249561")) < 5e-10


@pytest.mark.parametrize("name", ["wallis", "napier", "beta_integral"])
def test_k0_estimate_is_leading_term(name):
    spec, b = solved(name, 3)
    assert estimate(spec, b, 37, 0, 40) == spec.eval_y(37, 40)


def test_additive_estimate_ignores_constant_slot():
    spec, b = solved("euler", 4)
    with mpmath.workdps(40):
        expected = mpmath.euler + mpmath.mpf(1) / 20 - mpmath.mpf(1) / 1200
        assert abs(estimate(spec, b, 10, 2, 40) - expected) < mpmath.mpf(10) ** -38


def test_estimate_rejects_order_beyond_series():
    spec, b = solved("wallis", 3)
    with pytest.raises(ValueError):
        estimate(spec, b, 10, 4)


def test_error_table_structure_and_sorting():
    spec, b = solved("wallis", 5)
    table = error_table(spec, b, [20, 11], [5, 1, 3], 30)
    assert [(r.n, r.k) for r in table.rows] == [(11, 1), (11, 3), (11, 5), (20, 1), (20, 3), (20, 5)]
    for row in table.rows:
        assert row.abs_error >= 0
    assert table.rows[0].exact == table.rows[2].exact


def test_error_table_empty():
    spec, b = solved("wallis", 5)
    assert error_table(spec, b, [], [1, 2]).rows == ()


def test_error_table_requires_evaluator():
    spec = custom_spec("product", [1, F(-1, 2), F(-1, 8)])
    with pytest.raises(ExpansionOnlyError):
        error_table(spec, solve(spec.a_stream, 2), [10], [1])


def test_wallis_table_row():
    spec, b = solved("wallis", 5)
    table = error_table(spec, b, [11], range(1, 6), 30)
    got = [display_round(r.estimate, precision=30) for r in table.rows]
    assert got == ["0.235103718", "0.235165849", "0.235172910", "0.235172741", "0.235172669"]
    assert display_round(table.rows[0].exact, precision=30) == "0.235172672"


def test_beta_table_row():
    spec, b = solved("beta_integral", 4)
    table = error_table(spec, b, [10], range(0, 5), 30)
    got = [display_round(r.estimate, precision=30) for r in table.rows]
    assert got == ["0.280249561", "0.290758919", "0.291306282", "0.291335018", "0.291336437"]


@pytest.mark.parametrize("spec", builtin_specs(), ids=lambda s: s.name)
def test_errors_shrink_with_truncation_order(spec):
    m = 8
    b = solve(spec.a_stream, m)
    table = error_table(spec, b, [50], range(1, m), 60)
    errs = [r.abs_error for r in table.rows]
    for k in range(2, m):
        prev, cur = errs[k - 2], errs[k - 1]
        if b[k] == 0:
            assert cur == prev
        else:
            assert cur < prev


def test_display_round_half_even():
    with mpmath.workdps(30):
        assert display_round(mpmath.mpf("0.1234567885"), precision=30) == "0.123456788"
        assert display_round(mpmath.mpf("0.1234567895"), precision=30) == "0.123456790"
        assert display_round(mpmath.mpf("0.0000000005"), precision=30) == "0.000000000"


def test_formats():
    spec, b = solved("wallis", 5)
    table = error_table(spec, b, [11], [1, 2], 30)
    rows = list(csv.reader(io.StringIO(table.to_csv())))
    assert rows[0] == ["n", "k", "estimate", "exact", "abs_error"]
    assert len(rows) == 3
    assert "e" not in rows[1][4].lower()
    doc = json.loads(table.to_json())
    assert [r["k"] for r in doc["rows"]] == [1, 2]
    assert doc["rows"][0]["estimate"].startswith("0.2351037")
    plain = table.to_plain()
    assert "0.235103718" in plain and "0.235165849" in plain
    assert table.format("csv") == table.to_csv()
    with pytest.raises(ValueError):
        table.format("xml")


def test_full_precision_serialization():
    with mpmath.workdps(40):
        s = to_decimal_string(mpmath.mpf(1) / 3, 40)
    assert s == "0." + "3" * 40


def test_formats_are_deterministic():
    spec, b = solved("beta_integral", 4)
    one = error_table(spec, b, [10, 40], range(5), 50)
    two = error_table(spec, b, [40, 10], reversed(range(5)), 50)
    assert one.to_csv() == two.to_csv()
    assert one.to_json() == two.to_json()


@pytest.mark.parametrize("name", ["wallis", "beta_integral", "napier"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_convergence_orders(name, k):
    spec, b = solved(name, 6)
    measured = convergence_order(spec, b, k, 100, 60)
    assert abs(measured - next_nonzero_index(b, k)) < 0.35


def test_wallis_k2_exponent_range():
    spec, b = solved("wallis", 6)
    assert 2.8 <= convergence_order(spec, b, 2, 100, 60) <= 3.2


def test_euler_skips_vanishing_odd_term():
    spec, b = solved("euler", 10)
    assert next_nonzero_index(b, 2) == 4
    assert abs(convergence_order(spec, b, 2, 100, 60) - 4) < 0.35


def test_precision_floor_reported():
    spec, b = solved("wallis", 8)
    with pytest.raises(PrecisionFloorError):
        convergence_order(spec, b, 8, 10**4, 20)


def test_degenerate_case_reported():
    def y(n, p):
        with mpmath.workdps(p):
            return mpmath.sqrt(mpmath.mpf(n))

    spec = SequenceSpec(
        name="exact",
        kind="product",
        a_stream=CoeffStream("product", lambda k: 1 if k == 0 else 0),
        eval_x=y,
        eval_y=y,
    )
    b = solve(spec.a_stream, 4)
    with pytest.raises(DegenerateConvergenceError):
        convergence_order(spec, b, 2, 100, 40)


def test_next_nonzero_index():
    b = TruncatedSeries([1, 0, 2, 0, 0])
    assert next_nonzero_index(b, 0) == 2
    assert next_nonzero_index(b, 2) is None
