"""Exit criteria for the package, one test per criterion.

Each test also enforces its runtime budget. A per-criterion PASS/FAIL line
is printed in the terminal summary (see conftest.py).
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import mpmath
import pytest

from asyseries.catalog import beta_integral_spec, euler_spec, napier_spec, wallis_spec
from asyseries.numerics import convergence_order, error_table, estimate
from asyseries.rational import bernoulli
from asyseries.recurrences import (
    CoeffStream,
    exp_log_square_series,
    solve_difference,
    solve_product,
    solve_ratio,
)
from asyseries.series import TruncatedSeries, shift_backward, shift_forward

F = Fraction
TABLE_TOL = 5e-10


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def test_ac01_euler_coefficients():
    with budget(1):
        b = solve_difference(euler_spec().a_stream, 10)
        expected = {1: F(1, 2), 2: F(-1, 12), 3: 0, 4: F(1, 120), 6: F(-1, 252),
                    8: F(1, 240), 10: F(-1, 132)}
        for j, value in expected.items():
            assert b[j] == value


def test_ac02_bernoulli_identity():
    with budget(1):
        b = solve_difference(euler_spec().a_stream, 20)
        for j in range(2, 21):
            assert -j * b[j] == bernoulli(j)
        for k in range(1, 10):
            assert b[2 * k + 1] == 0


def test_ac03_wallis_coefficients():
    with budget(1):
        b = solve_product(wallis_spec().a_stream, 5)
        assert list(b) == [1, F(-1, 4), F(1, 32), F(5, 128), F(-21, 2048), F(-399, 8192)]


def test_ac04_table1_reproduction():
    with budget(1):
        spec = wallis_spec()
        b = solve_product(spec.a_stream, 5)
        table = error_table(spec, b, [11], range(1, 6), 30)
        published = ["0.235103718", "0.235165849", "0.23517291", "0.235172741", "0.235172669"]
        with mpmath.workdps(30):
            assert abs(table.rows[0].exact - mpmath.mpf("0.235172672")) <= TABLE_TOL
            for row, value in zip(table.rows, published):
                assert abs(row.estimate - mpmath.mpf(value)) <= TABLE_TOL


def test_ac05_napier_coefficients():
    with budget(1):
        s = exp_log_square_series(8)
        sums = [sum(s.coeffs[: k + 1], F(0)) for k in range(9)]
        b = solve_ratio(CoeffStream.from_list("ratio", sums), 6)
        assert list(b) == [1, F(-1, 2), F(11, 24), F(-7, 16), F(2447, 5760), F(-959, 2304),
                           F(238043, 580608)]


def test_ac06_beta_integral_coefficients():
    spec = beta_integral_spec()
    b = solve_ratio(spec.a_stream, 4)
    assert (b[1], b[2], b[3]) == (F(3, 8), F(25, 128), F(105, 1024))
    # the printed fourth coefficient is not what the recurrence produces
    assert b[4] != F(302, 5965)
    # closure identity at order 4 involves b_4 exactly
    assert shift_backward(b) * spec.a_stream.series(4) == b
    # numeric remainder bound |J_n - J_{n,4}| <= C n^-5 y_n
    C = 1
    with mpmath.workdps(60):
        for n in (100, 200, 400, 800):
            err = abs(spec.eval_x(n, 60) - estimate(spec, b, n, 4, 60))
            assert err <= C * mpmath.mpf(n) ** -5 * spec.eval_y(n, 60)
    assert 4.6 <= convergence_order(spec, b, 4, 100, 60) <= 5.4


def test_ac07_table2_reproduction():
    with budget(1):
        spec = beta_integral_spec()
        b = solve_ratio(spec.a_stream, 4)
        table = error_table(spec, b, [10], range(0, 5), 30)
        published = ["0.280249561", "0.290758919", "0.291306282", "0.291335018"]
        with mpmath.workdps(30):
            assert abs(table.rows[0].exact - mpmath.mpf("0.291336507")) <= TABLE_TOL
            for row, value in zip(table.rows[:4], published):
                assert abs(row.estimate - mpmath.mpf(value)) <= TABLE_TOL
            assert abs(table.rows[4].estimate - mpmath.mpf("0.291336437")) <= 1e-6


def _random_fraction(rng):
    return F(rng.randint(-100, 100), rng.randint(1, 100))


def test_ac08_oracle_closures():
    rng = random.Random(20261015)
    with budget(30):
        for _ in range(200):
            m = rng.randint(1, 15)
            tail = [_random_fraction(rng) for _ in range(m)]

            a = CoeffStream.from_list("difference", [0, 0] + tail)
            b = solve_difference(a, m)
            assert b - shift_forward(b) == a.series(m)

            a = CoeffStream.from_list("product", [1] + tail)
            b = solve_product(a, m)
            assert b * shift_backward(b) == a.series(m)

            a = CoeffStream.from_list("ratio", [1, 0] + tail)
            b = solve_ratio(a, m)
            assert shift_backward(b) * a.series(m) == b


def test_ac09_shift_round_trip():
    rng = random.Random(9)
    with budget(10):
        for _ in range(500):
            m = rng.randint(0, 30)
            f = TruncatedSeries(_random_fraction(rng) for _ in range(m + 1))
            assert shift_backward(shift_forward(f)) == f
            assert shift_forward(shift_backward(f)) == f


def test_ac10_sign_erratum_guard():
    with budget(1):
        a = euler_spec().a_stream
        assert solve_difference(a, 2, _printed_sign=True)[2] == F(-7, 12)
        assert solve_difference(a, 2)[2] == F(-1, 12)


@pytest.mark.parametrize("name", ["wallis", "beta_integral"])
def test_ac11_convergence_orders(name):
    spec = {"wallis": wallis_spec, "beta_integral": beta_integral_spec}[name]()
    with budget(5):
        b = solve_product(spec.a_stream, 6) if spec.kind == "product" else solve_ratio(
            spec.a_stream, 6)
        for k in (1, 2, 3):
            assert abs(convergence_order(spec, b, k, 100, 60) - (k + 1)) < 0.35


def test_ac11_convergence_order_euler():
    spec = euler_spec()
    with budget(5):
        b = solve_difference(spec.a_stream, 6)
        assert abs(convergence_order(spec, b, 2, 100, 60) - 4) < 0.35
