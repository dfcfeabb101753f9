from fractions import Fraction

from hypothesis import strategies as st

from asyseries.series import TruncatedSeries


def small_fractions(bound: int = 100):
    return st.builds(
        Fraction,
        st.integers(min_value=-bound, max_value=bound),
        st.integers(min_value=1, max_value=bound),
    )


def series_of_order(order: int, bound: int = 100):
    return st.lists(small_fractions(bound), min_size=order + 1, max_size=order + 1).map(
        TruncatedSeries
    )


def series_up_to(max_order: int, bound: int = 100):
    return st.integers(min_value=0, max_value=max_order).flatmap(
        lambda m: series_of_order(m, bound)
    )


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items(), key=lambda kv: _criterion_number(kv[0])):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")


def _criterion_number(name: str) -> int:
    # test names look like test_ac07_table2_reproduction
    try:
        return int(name.split("_")[1][2:])
    except (IndexError, ValueError):
        return 999
