"""
Regression tests for the reproduction checks.
"""
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import VerificationError
from core.models import EntropyUnit, ReproductionReport, ReproductionRow
from eval import summarize_reproduction, verify_reproduction


def report_with(*values) -> ReproductionReport:
    rows = [
        ReproductionRow(quantity="measure-ray" if n < 3 else "topological-ray", n=n, count=n, value=v, expected=1.0)
        for n, v in enumerate(values, start=1)
    ]
    return ReproductionReport(rows=rows, unit=EntropyUnit.BITS)


class TestSummarizeReproduction:
    def test_groups_by_quantity_in_table_order(self):
        summary = summarize_reproduction(report_with(1.0, 1.0, 1.0))
        assert list(summary) == ["measure-ray", "topological-ray"]
        assert summary["measure-ray"]["rows"] == 2

    def test_worst_deviation(self):
        summary = summarize_reproduction(report_with(1.0, 1.25, 1.0))
        assert summary["measure-ray"]["max_deviation"] == pytest.approx(0.25)
        assert not summary["measure-ray"]["ok"]
        assert summary["topological-ray"]["ok"]


class TestVerifyReproduction:
    def test_within_tolerance(self):
        verify_reproduction(report_with(1.0, 1.0 + 1e-12))

    def test_deviation_raises(self):
        with pytest.raises(VerificationError) as exc:
            verify_reproduction(report_with(1.0, 0.5, 2.0))
        assert exc.value.failures == 2

    def test_report_dict_counts_failures(self):
        assert report_with(1.0, 0.5).to_dict()["failures"] == 1
