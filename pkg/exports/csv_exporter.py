"""
CSV Exporter for profiles and tables.

Column contracts:
    measure profile:      n,count,joint_entropy,normalized,tail_max
    topological profile:  n,count,joint_entropy,normalized,tail_max,n_join,solver
    density table:        n,count,size,ratio
    reproduction table:   quantity,n,count,value,expected,deviation,ok

tail_max is the running tail maximum: the value the profile would report if
it stopped at that row. Numbers carry 12 significant digits with '.' as the
decimal separator.
"""
import csv
import io
import logging
from typing import Any, List

import config
from core.models import EntropyProfile, ProfileKind, ReproductionReport
from exports.base_exporter import BaseExporter
from group.subsets import DensityReport
from utils.numbers import format_number

logger = logging.getLogger(__name__)


class CSVExporter(BaseExporter):
    """Exports profiles, density tables and reproduction tables as CSV."""

    def __init__(self, delimiter: str = None):
        super().__init__("csv")
        self.delimiter = delimiter or config.CSV_DELIMITER

    def _render_impl(self, report: Any) -> str:
        if isinstance(report, EntropyProfile):
            rows = self._profile_rows(report)
        elif isinstance(report, DensityReport):
            rows = [["n", "count", "size", "ratio"]]
            rows += [[r.n, r.count, r.size, format_number(r.ratio)] for r in report.per_n]
        elif isinstance(report, ReproductionReport):
            rows = [["quantity", "n", "count", "value", "expected", "deviation", "ok"]]
            rows += [
                [r.quantity, r.n, r.count, format_number(r.value), format_number(r.expected),
                 format_number(r.deviation), "true" if r.ok else "false"]
                for r in report.rows
            ]
        else:
            raise TypeError(f"no CSV layout for {type(report).__name__}")

        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter=self.delimiter, lineterminator="\n")
        writer.writerows(rows)
        return buffer.getvalue()

    @staticmethod
    def _profile_rows(profile: EntropyProfile) -> List[List[Any]]:
        topological = profile.kind == ProfileKind.TOPOLOGICAL
        header = ["n", "count", "joint_entropy", "normalized", "tail_max"]
        if topological:
            header += ["n_join", "solver"]
        rows = [header]
        for i, row in enumerate(profile.rows):
            line = [
                row.n, row.count, format_number(row.joint), format_number(row.normalized),
                format_number(profile.tail_max_at(i)),
            ]
            if topological:
                line += [row.n_join, row.solver]
            rows.append(line)
        return rows
