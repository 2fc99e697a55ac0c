"""
JSON Exporter for search reports.

Exports search reports (and any model with to_dict) to JSON suitable for
pipeline ingestion. Key order follows the report, so identical runs give
identical files.
"""
import json
import logging
from typing import Any

from exports.base_exporter import BaseExporter

logger = logging.getLogger(__name__)


class JSONExporter(BaseExporter):
    """
    Exports reports to JSON format.

    Accepts plain dicts (search reports) or objects with to_dict().
    """

    def __init__(self, indent: int = 2, ensure_ascii: bool = False):
        """
        Initialize JSON exporter.

        Args:
            indent: JSON indentation level (default: 2)
            ensure_ascii: If False, allow Unicode characters (default: False)
        """
        super().__init__("json")
        self.indent = indent
        self.ensure_ascii = ensure_ascii

    def _render_impl(self, report: Any) -> str:
        data = report if isinstance(report, dict) else report.to_dict()
        return json.dumps(data, indent=self.indent, ensure_ascii=self.ensure_ascii, allow_nan=False) + "\n"
