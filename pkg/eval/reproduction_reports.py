"""
Checks and summaries for reproduction tables.

A reproduction table compares computed profile values against their closed
forms; these helpers turn it into a pass/fail verdict and a per-quantity
summary for the console.
"""
import logging
from typing import Any, Dict

import config
from core.errors import VerificationError
from core.models import ReproductionReport

logger = logging.getLogger(__name__)


def summarize_reproduction(report: ReproductionReport) -> Dict[str, Dict[str, Any]]:
    """
    Per-quantity row counts and worst deviation.

    Returns:
        {quantity: {"rows": int, "max_deviation": float, "ok": bool}} in table order
    """
    summary: Dict[str, Dict[str, Any]] = {}
    for row in report.rows:
        entry = summary.setdefault(row.quantity, {"rows": 0, "max_deviation": 0.0, "ok": True})
        entry["rows"] += 1
        entry["max_deviation"] = max(entry["max_deviation"], row.deviation)
        entry["ok"] = entry["ok"] and row.ok
    return summary


def verify_reproduction(report: ReproductionReport) -> None:
    """
    Raises:
        VerificationError: Some row deviates beyond config.REPRODUCTION_TOLERANCE
    """
    failures = report.failures
    for row in failures:
        logger.error(
            f"{row.quantity} n={row.n}: {row.value!r} vs expected {row.expected!r} "
            f"(deviation {row.deviation:.3g})"
        )
    if failures:
        raise VerificationError(len(failures), config.REPRODUCTION_TOLERANCE)
    logger.info(f"All {len(report.rows)} reproduction rows within {config.REPRODUCTION_TOLERANCE:g}")
