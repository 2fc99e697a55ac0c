"""
Report Export Module.

Provides exporters for the report formats (CSV tables, JSON search reports).
"""
from pathlib import Path
from typing import Any, List, Protocol

from core.errors import ExportError


class Exporter(Protocol):
    """Protocol for report exporters."""

    def render(self, report: Any) -> str:
        ...

    def export(self, report: Any, output_path: Path) -> Path:
        """
        Export a report to a file.

        Raises:
            ExportError: If export fails
        """
        ...


class ExportManager:
    """
    Manages report exports in multiple formats.

    Provides a unified interface for exporting reports to different formats.
    """

    def __init__(self):
        """Initialize export manager."""
        self._exporters: dict[str, Exporter] = {}

    def register_exporter(self, format_name: str, exporter: Exporter) -> None:
        """
        Register an exporter for a format.

        Args:
            format_name: Format identifier (e.g., "csv", "json")
            exporter: Exporter instance
        """
        self._exporters[format_name.lower()] = exporter

    def get_exporter(self, format_name: str) -> Exporter:
        """
        Get exporter for a format.

        Raises:
            ExportError: If format is not supported
        """
        format_lower = format_name.lower()
        if format_lower not in self._exporters:
            supported = ", ".join(self._exporters.keys())
            raise ExportError(format_name, f"not supported; supported formats: {supported}")
        return self._exporters[format_lower]

    def render(self, report: Any, format_name: str) -> str:
        return self.get_exporter(format_name).render(report)

    def export(self, report: Any, format_name: str, output_path: Path) -> Path:
        """
        Export a report in the specified format.

        Returns:
            Path to the exported file
        """
        exporter = self.get_exporter(format_name)
        return exporter.export(report, output_path)

    def get_supported_formats(self) -> List[str]:
        """
        Get list of supported export formats.

        Returns:
            List of format names
        """
        return list(self._exporters.keys())


def default_export_manager() -> ExportManager:
    """ExportManager with the CSV and JSON exporters registered."""
    from exports.csv_exporter import CSVExporter
    from exports.json_exporter import JSONExporter

    manager = ExportManager()
    manager.register_exporter("csv", CSVExporter())
    manager.register_exporter("json", JSONExporter())
    return manager


__all__ = ['Exporter', 'ExportManager', 'default_export_manager']
