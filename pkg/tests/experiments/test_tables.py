"""Tests for SweepTable and observed orders."""

from __future__ import annotations

import csv

import pytest

from chb_simulator.const import EXIT_FAILURE, EXIT_NUMERIC, EXIT_OK
from chb_simulator.experiments import MemberResult, SweepTable, observed_orders

pytestmark = pytest.mark.unit


def _table() -> SweepTable:
    table = SweepTable("demo", ("n", "err"))
    table.add_row(n=8, err=1.0e-2)
    table.add_row(n=16)
    return table


def test_rows_fill_missing_columns():
    table = _table()
    assert table.rows == [{"n": 8, "err": 1.0e-2}, {"n": 16, "err": None}]
    assert table.column("n") == [8, 16]
    with pytest.raises(KeyError):
        table.add_row(order=2.0)


def test_exit_code_follows_failures_then_verdicts():
    table = _table()
    assert table.exit_code == EXIT_OK
    table.verdicts["order"] = None
    assert table.exit_code == EXIT_OK
    table.verdicts["order"] = False
    assert table.exit_code == EXIT_FAILURE
    table.record_failures(
        [
            MemberResult("ok", EXIT_OK, 5, 1.0, None),
            MemberResult("bad", EXIT_NUMERIC, 2, 0.4, None),
        ]
    )
    assert not table.complete
    assert table.failures == {"bad": EXIT_NUMERIC}
    assert table.exit_code == EXIT_NUMERIC


def test_write_csv(tmp_path):
    path = _table().write_csv(tmp_path / "out" / "demo.csv")
    with path.open(newline="") as handle:
        rows = list(csv.DictReader(handle))
    assert rows == [{"n": "8", "err": "0.01"}, {"n": "16", "err": ""}]


def test_format_lists_verdicts_and_failures():
    table = _table()
    table.verdicts.update({"order": True, "monotone": None})
    table.failures["n_32"] = EXIT_NUMERIC
    text = table.format()
    assert text.splitlines()[0] == "demo"
    assert "1.0000e-02" in text
    assert "---" in text
    assert "order: PASS" in text
    assert "monotone: n/a" in text
    assert "failed: n_32 (exit 4)" in text


def test_as_dict():
    data = _table().as_dict()
    assert data["name"] == "demo"
    assert data["complete"] is True
    assert data["columns"] == ["n", "err"]


@pytest.mark.parametrize(
    ("spacings", "errors", "expected"),
    [
        ([0.5, 0.25, 0.125], [1.0, 0.25, 0.0625], [None, 2.0, 2.0]),
        ([0.5, 0.25], [1.0, 0.5], [None, 1.0]),
        ([0.5, 0.25], [1.0, 0.0], [None, None]),
        ([0.5], [1.0], [None]),
    ],
)
def test_observed_orders(spacings, errors, expected):
    assert observed_orders(spacings, errors) == pytest.approx(expected)
