"""
Base Exporter Implementation.

Provides the base class for report exporters with common functionality.
"""
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any

from core.errors import ExportError

logger = logging.getLogger(__name__)


class BaseExporter(ABC):
    """
    Base class for report exporters.

    Provides common functionality for all exporters:
    - Rendering to text (for stdout)
    - Directory creation and file writing
    - Error handling
    """

    def __init__(self, format_name: str):
        """
        Initialize base exporter.

        Args:
            format_name: Format identifier (e.g., "csv", "json")
        """
        self.format_name = format_name

    def render(self, report: Any) -> str:
        """
        Render a report to text.

        Raises:
            ExportError: If the report cannot be rendered in this format
        """
        try:
            return self._render_impl(report)
        except ExportError:
            raise
        except Exception as e:
            error_msg = f"Failed to render {type(report).__name__} as {self.format_name}: {str(e)}"
            logger.error(error_msg, exc_info=True)
            raise ExportError(self.format_name, error_msg) from e

    def export(self, report: Any, output_path: Path) -> Path:
        """
        Write a report to a file.

        Args:
            report: Profile, table or search report
            output_path: Path where the file should be saved (written as given)

        Returns:
            Path to exported file

        Raises:
            ExportError: If export fails
        """
        output_path = Path(output_path)
        text = self.render(report)

        logger.info(f"Exporting {type(report).__name__} to {self.format_name} format: {output_path}")
        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        except OSError as e:
            error_msg = f"Failed to write {output_path}: {str(e)}"
            logger.error(error_msg, exc_info=True)
            raise ExportError(self.format_name, error_msg) from e

        logger.info(f"Successfully exported {self.format_name} report: {output_path}")
        return output_path

    @abstractmethod
    def _render_impl(self, report: Any) -> str:
        """
        Format-specific rendering.

        Args:
            report: Report object

        Returns:
            The full file contents
        """
        pass
