# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import csv
import dataclasses
import enum
import io
import json
import math
import typing
from collections.abc import Sequence

import numpy as np

from kyfan_means.common import FloatArray
from kyfan_means.grid import AnyGrid

Point = tuple[float, ...]
CSV_REPORT_HEADER = ("relation", "means", "verdict", "worst_margin", "worst_point", "samples", "first_violation")


@enum.unique
class Verdict(enum.Enum):
    passed = "pass"
    failed = "fail"
    inconclusive = "inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclasses.dataclass(frozen=True)
class CheckReport:
    relation: str
    means: tuple[str, ...]
    grid: AnyGrid | None
    verdict: Verdict
    worst_margin: float
    worst_point: Point | None  # where the margin is smallest, first in grid order on ties
    samples: int
    first_violation: Point | None = None  # first failing sample in grid order
    inconclusive: int = 0  # samples where no verdict could be asserted

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.passed

    def as_dict(self) -> dict[str, typing.Any]:
        return {
            "relation": self.relation,
            "means": list(self.means),
            "grid": self.grid.as_dict() if self.grid is not None else None,
            "verdict": str(self.verdict),
            "worst_margin": finite_or_none(self.worst_margin),
            "worst_point": list(self.worst_point) if self.worst_point is not None else None,
            "samples": self.samples,
            "first_violation": list(self.first_violation) if self.first_violation is not None else None,
            "inconclusive": self.inconclusive,
        }

    def __str__(self) -> str:
        with io.StringIO() as si:
            si.write(f"[{self.verdict}] {self.relation}")
            si.write(f" | worst margin {self.worst_margin:.15g}")
            if self.worst_point is not None:
                si.write(f" at {format_point(self.worst_point)}")
            si.write(f" | {self.samples} samples")
            if self.inconclusive:
                si.write(f", {self.inconclusive} inconclusive")
            if self.first_violation is not None:
                si.write(f" | first violation at {format_point(self.first_violation)}")
            return si.getvalue()


def finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


def format_point(point: Point) -> str:
    return "(" + ", ".join(f"{coord:.15g}" for coord in point) + ")"


def point_at(coords: Sequence[FloatArray], index: int) -> Point:
    return tuple(float(axis[index]) for axis in coords)


def summarize(
    margins: FloatArray,
    coords: Sequence[FloatArray],
    *,
    relation: str,
    means: Sequence[str],
    grid: AnyGrid | None,
    tolerance: float,
    strict: bool = False,
) -> CheckReport:
    """
    Reduce per-sample margins (positive means the relation holds) into a report.
    A sample violates the relation when its margin is below -tolerance, or not above zero if strict.
    NaN margins count as violations.
    """
    margins = np.asarray(margins, dtype=np.float64)
    samples = int(margins.size)
    if samples == 0:
        return CheckReport(relation, tuple(means), grid, Verdict.inconclusive, math.inf, None, 0)
    comparable = np.where(np.isnan(margins), -math.inf, margins)
    violating = comparable <= 0 if strict else comparable < -tolerance
    worst = int(np.argmin(comparable))
    first_violation = None
    if violating.any():
        first_violation = point_at(coords, int(np.argmax(violating)))
    return CheckReport(
        relation=relation,
        means=tuple(means),
        grid=grid,
        verdict=Verdict.failed if first_violation is not None else Verdict.passed,
        worst_margin=float(comparable[worst]),
        worst_point=point_at(coords, worst),
        samples=samples,
        first_violation=first_violation,
    )


def all_passed(reports: Sequence[CheckReport]) -> bool:
    return all(report.passed for report in reports)


def exit_status(reports: Sequence[CheckReport]) -> int:
    """
    0 if every report passed, 1 otherwise.
    """
    return 0 if all_passed(reports) else 1


def reports_as_json(reports: Sequence[CheckReport]) -> str:
    return json.dumps([report.as_dict() for report in reports], indent=2, ensure_ascii=False) + "\n"


def reports_as_csv(reports: Sequence[CheckReport]) -> str:
    with io.StringIO(newline="") as si:
        writer = csv.writer(si, lineterminator="\n")
        writer.writerow(CSV_REPORT_HEADER)
        for report in reports:
            row = report.as_dict()
            writer.writerow(
                [
                    row["relation"],
                    " ".join(report.means),
                    row["verdict"],
                    "" if row["worst_margin"] is None else repr(row["worst_margin"]),
                    " ".join(map(repr, report.worst_point or ())),
                    row["samples"],
                    " ".join(map(repr, report.first_violation or ())),
                ]
            )
        return si.getvalue()


def reports_as_text(reports: Sequence[CheckReport]) -> str:
    return "".join(f"{report}\n" for report in reports)


def format_reports(reports: Sequence[CheckReport], output_format: str) -> str:
    match output_format:
        case "json":
            return reports_as_json(reports)
        case "csv":
            return reports_as_csv(reports)
        case _:
            return reports_as_text(reports)


def rows_as_json(rows: Sequence[dict[str, typing.Any]]) -> str:
    return json.dumps(list(rows), indent=2, ensure_ascii=False) + "\n"


def rows_as_csv(rows: Sequence[dict[str, typing.Any]]) -> str:
    with io.StringIO(newline="") as si:
        if rows:
            writer = csv.DictWriter(si, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: repr(value) if isinstance(value, float) else value for key, value in row.items()})
        return si.getvalue()
