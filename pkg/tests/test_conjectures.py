import json
from importlib import resources

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from overqt.conjectures import (
    coefficient_grid,
    double_unimodal,
    first_violation,
    is_unimodal,
    prellberg_series,
    scan_prellberg,
    scan_unimodality,
    strictness,
    unimodal_peak,
)
from overqt.overbinomial import B

naturals = st.lists(st.integers(0, 50), max_size=8)


@given(naturals, naturals)
def test_ascending_then_descending_is_unimodal(up, down):
    seq = sorted(up) + sorted(down, reverse=True)
    assert is_unimodal(seq)
    if seq:
        assert seq[unimodal_peak(seq)] == max(seq)


@given(st.lists(st.integers(0, 50), min_size=1, max_size=6),
       st.lists(st.integers(0, 50), min_size=1, max_size=6), st.integers(1, 5))
def test_strict_local_minimum_is_rejected(left, right, dip):
    low = min(left + right)
    seq = left + [low - dip] + right
    # seq[j] is below something on each side
    assert not is_unimodal(seq)
    assert first_violation(seq) is not None


def test_checker_examples():
    assert unimodal_peak([1, 3, 3, 2]) == 1
    assert unimodal_peak([1, 0, 1]) is None
    assert first_violation([1, 0, 1]) == 1
    assert is_unimodal([]) and is_unimodal([5])
    assert strictness([1, 2, 2, 1])["strict"]
    assert not strictness([1, 2, 2, 3, 1])["strict"]


def test_grid_layout():
    grid = coefficient_grid(B(1, 1))
    assert grid == [[1, 1], [0, 1]]


def test_table_scan_4x4():
    data = json.loads(resources.files("overqt").joinpath("fixtures/table1.json").read_text())
    grid = coefficient_grid(B(4, 4))
    for row in data["rows"]:
        col = [grid[k][row["N"]] for k in range(len(grid))]
        padded = row["t_coefficients"] + [0] * (len(col) - len(row["t_coefficients"]))
        assert col == padded
    ok, detail = double_unimodal(B(4, 4))
    assert ok
    assert detail["q_column_peaks"][9] == 1


def test_scans_hold_on_small_window():
    for kind in ("double", "t1"):
        results = scan_unimodality(kind, 8)
        assert len(results) == sum(s + 1 for s in range(9))
        assert all(r.holds for r in results), [r for r in results if not r.holds][:1]


def test_strict_scan_reports_data():
    results = scan_unimodality("strict", 5)
    for r in results:
        assert {"t1", "q_columns_strict", "t_rows_strict"} <= set(r.detail)


def test_unknown_scan():
    with pytest.raises(ValueError):
        scan_unimodality("sideways", 3)


def _prellberg_oracle(n, K):
    q = sympy.symbols("q")
    num = sympy.prod([1 + q ** (n + j) for j in range(n)])
    den = sympy.prod([1 - q ** (n + j) for j in range(n)])
    expr = (1 - q) * num / den + q
    ser = sympy.series(expr, q, 0, K + 1).removeO()
    return [int(ser.coeff(q, i)) for i in range(K + 1)]


def test_prellberg_n1():
    assert prellberg_series(1, 6) == [1, 2, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("n", [2, 3])
def test_prellberg_against_sympy(n):
    assert prellberg_series(n, 20) == _prellberg_oracle(n, 20)


def test_prellberg_scan():
    results = scan_prellberg(5, 40)
    assert [r.parameter["n"] for r in results] == [1, 2, 3, 4, 5]
    assert all(r.holds and r.detail["first_negative"] is None for r in results)
