"""The twelve acceptance criteria, run exactly as the CLI ``suite``
command runs them (both call qtrin.acceptance.run_battery).

The battery executes once per test session; each test asserts one
criterion's result so failures localize.
"""

import pytest

from qtrin.acceptance import CRITERIA, SUITE_BUDGET_SECONDS, run_battery


@pytest.fixture(scope="module")
def battery():
    return run_battery()


def _result(battery, number):
    res = battery[number - 1]
    assert res.number == number
    return res


def test_01_pascal_triangle_rows(battery):
    res = _result(battery, 1)
    assert res.passed, res.detail


def test_02_pair_identities_to_L12(battery):
    res = _result(battery, 2)
    assert res.passed, res.detail


def test_03_dual_identities_to_L12(battery):
    res = _result(battery, 3)
    assert res.passed, res.detail


def test_04_summations_and_transform_to_L10(battery):
    res = _result(battery, 4)
    assert res.passed, res.detail


def test_05_bailey_consistency_to_M6(battery):
    res = _result(battery, 5)
    assert res.passed, res.detail


def test_06_bounded_polynomial_identities_to_8(battery):
    res = _result(battery, 6)
    assert res.passed, res.detail


def test_07_series_identities_through_q60(battery):
    res = _result(battery, 7)
    assert res.passed, res.detail


def test_08_trivariate_generating_functions(battery):
    res = _result(battery, 8)
    assert res.passed, res.detail


def test_09_capparelli_four_way_chain_to_40(battery):
    res = _result(battery, 9)
    assert res.passed, res.detail


def test_10_outlook_and_hierarchy(battery):
    res = _result(battery, 10)
    assert res.passed, res.detail


def test_11_limit_stabilization_below_q10(battery):
    res = _result(battery, 11)
    assert res.passed, res.detail


def test_12_battery_under_budget(battery):
    res = battery[-1]
    assert res.number == 12
    assert res.passed, res.detail
    assert res.detail["total_seconds"] < SUITE_BUDGET_SECONDS


def test_battery_shape(battery):
    # 11 named criteria plus the budget criterion
    assert len(battery) == len(CRITERIA) + 1
    assert all(r.elapsed_ms >= 0 for r in battery)
