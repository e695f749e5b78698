# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import csv
import dataclasses
import enum
import io
import logging
import pathlib
import typing
from collections.abc import Sequence

from kyfan_means import series
from kyfan_means.common import KyFanException, UnknownSeiffertError
from kyfan_means.config import KyFanConfig
from kyfan_means.grid import GridSpec, IntervalGrid
from kyfan_means.means import MeanDescriptor, MeanKind, get_mean, list_means
from kyfan_means.report import (
    CheckReport,
    exit_status,
    format_reports,
    rows_as_csv,
    rows_as_json,
)
from kyfan_means.seiffert import (
    SeiffertDescriptor,
    get_seiffert,
    mean_to_seiffert,
    roundtrip_check,
    validate_seiffert,
)
from kyfan_means.verify.chains import Relation, audit_soundness, verify_preset
from kyfan_means.verify.counterexample import note_counterexample, sup_complement_ratio
from kyfan_means.verify.diagnostics import check_claim
from kyfan_means.verify.hypotheses import (
    check_diff_decreasing,
    check_g_decreasing,
    check_q_increasing,
    check_ratio_monotone,
)
from kyfan_means.verify.inequalities import (
    check_harmonic_kyfan,
    check_ratio_kyfan,
    harmonic_sides,
    raise_for_kyfan_domain,
    ratio_sides,
)

log = logging.getLogger(__name__)

SURFACE_HEADER = ("x", "y", "lhs", "rhs", "margin")
ORACLE_N_MAX = 12
LOG_SERIES_GRID = IntervalGrid(0.5, 1.5, 1001)
ARTANH_TAN_SERIES_GRID = IntervalGrid(5e-4, 0.5, 1000)


@dataclasses.dataclass(frozen=True)
class UsageError(KyFanException, ValueError):
    what: str


@dataclasses.dataclass(frozen=True)
class ReportWriteError(KyFanException, OSError):
    what: str
    exit_code: typing.ClassVar[int] = 3


@enum.unique
class Command(enum.Enum):
    eval = "eval"
    seiffert = "seiffert"
    check = "check"
    chain = "chain"
    series = "series"
    note_demo = "note-demo"
    catalog = "catalog"
    surface = "surface"
    soundness = "soundness"


@enum.unique
class CheckKind(enum.Enum):
    ratio = "ratio"
    harmonic = "harmonic"
    ratio_monotone = "ratio-monotone"
    q_increasing = "q-increasing"
    diff_decreasing = "diff-decreasing"
    g_decreasing = "g-decreasing"
    roundtrip = "roundtrip"
    sandwich = "sandwich"
    derivative = "derivative"

    @classmethod
    def parse(cls, name: str) -> typing.Self:
        try:
            return cls(str(name).replace("_", "-"))
        except ValueError:
            raise UsageError(f"unknown check {name!r}, choose one of: {', '.join(k.value for k in cls)}") from None

    @property
    def arity(self) -> int:
        match self:
            case CheckKind.roundtrip | CheckKind.sandwich | CheckKind.derivative:
                return 1
            case _:
                return 2


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    One CLI invocation: the command, its positional arguments, and overrides of the settings file.
    """

    command: Command
    args: tuple[str, ...] = ()
    options: typing.Mapping[str, typing.Any] = dataclasses.field(default_factory=dict)
    nx: int | None = None
    ny: int | None = None
    tolerance: float | None = None
    output_format: str | None = None
    output_path: pathlib.Path | None = None
    workers: int | None = None

    def settings(self, base: KyFanConfig) -> KyFanConfig:
        overrides = {
            "nx": self.nx,
            "ny": self.ny,
            "tolerance": self.tolerance,
            "output_format": self.output_format,
            "workers": self.workers,
        }
        merged = dataclasses.replace(base, **{key: value for key, value in overrides.items() if value is not None})
        merged.raise_for_values()
        return merged


class RunResult(typing.NamedTuple):
    status: int
    text: str


def kyfan_grid(settings: KyFanConfig) -> GridSpec:
    return GridSpec(settings.lower, settings.upper, settings.lower, settings.upper, settings.nx, settings.ny)


def interval_grid(settings: KyFanConfig) -> IntervalGrid:
    return IntervalGrid.unit(settings.interval_points, settings.interval_margin)


def g_grid(settings: KyFanConfig) -> IntervalGrid:
    return IntervalGrid(1.0 + settings.interval_margin, settings.s_max, settings.interval_points)


def resolve_seiffert(name: str) -> SeiffertDescriptor:
    """
    A builtin Seiffert function, or the one extracted from a registered mean.
    """
    try:
        return get_seiffert(name)
    except UnknownSeiffertError as ex:
        try:
            return mean_to_seiffert(get_mean(name))
        except KyFanException:
            raise ex from None


def require_args(command: str, args: Sequence[str], count: int) -> None:
    if len(args) != count:
        raise UsageError(f"'{command}' takes {count} argument(s), got {len(args)}: {' '.join(map(str, args))}")


def parse_real(name: str, value: typing.Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be a number, got {value!r}") from None


def parse_count(name: str, value: typing.Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise UsageError(f"{name} must be an integer, got {value!r}")
    return value


def format_rows(rows: list[dict[str, typing.Any]], text: str, output_format: str) -> str:
    match output_format:
        case "json":
            return rows_as_json(rows)
        case "csv":
            return rows_as_csv(rows)
        case _:
            return text


def run_eval(config: RunConfig, settings: KyFanConfig) -> RunResult:
    require_args("eval", config.args, 3)
    mean_id, x, y = config.args[0], parse_real("x", config.args[1]), parse_real("y", config.args[2])
    value = get_mean(mean_id)(x, y)
    rows = [{"mean": mean_id, "x": x, "y": y, "value": value}]
    return RunResult(0, format_rows(rows, f"{value:.15g}\n", settings.output_format))


def run_seiffert(config: RunConfig, settings: KyFanConfig) -> RunResult:
    require_args("seiffert", config.args, 1)
    seiffert = resolve_seiffert(config.args[0])
    if (z := config.options.get("z")) is not None:
        z = parse_real("z", z)
        value = seiffert(z)
        rows = [{"seiffert": seiffert.id, "z": z, "value": value}]
        return RunResult(0, format_rows(rows, f"{value:.15g}\n", settings.output_format))
    reports = [validate_seiffert(seiffert, interval_grid(settings), settings.tolerance)]
    return RunResult(exit_status(reports), format_reports(reports, settings.output_format))


def run_single_check(kind: CheckKind, ids: Sequence[str], settings: KyFanConfig) -> CheckReport:
    tol, workers = settings.tolerance, settings.workers
    match kind:
        case CheckKind.ratio:
            return check_ratio_kyfan(get_mean(ids[0]), get_mean(ids[1]), kyfan_grid(settings), tol, workers)
        case CheckKind.harmonic:
            return check_harmonic_kyfan(get_mean(ids[0]), get_mean(ids[1]), kyfan_grid(settings), tol, workers)
        case CheckKind.ratio_monotone:
            m, n = resolve_seiffert(ids[0]), resolve_seiffert(ids[1])
            return check_ratio_monotone(m, n, interval_grid(settings), tol)
        case CheckKind.q_increasing:
            return check_q_increasing(get_mean(ids[0]), get_mean(ids[1]), interval_grid(settings), tol)
        case CheckKind.diff_decreasing:
            m, n = resolve_seiffert(ids[0]), resolve_seiffert(ids[1])
            return check_diff_decreasing(m, n, interval_grid(settings), tol)
        case CheckKind.g_decreasing:
            return check_g_decreasing(get_mean(ids[0]), get_mean(ids[1]), g_grid(settings), tol, settings.s_max)
        case CheckKind.roundtrip:
            grid = dataclasses.replace(kyfan_grid(settings), exclude_diagonal=True)
            return roundtrip_check(get_mean(ids[0]), grid, tol)
        case CheckKind.sandwich:
            return validate_seiffert(resolve_seiffert(ids[0]), interval_grid(settings), tol)
        case CheckKind.derivative:
            return check_claim(ids[0], settings.derivative_step, settings.derivative_threshold)


def run_check(config: RunConfig, settings: KyFanConfig) -> RunResult:
    if not config.args:
        raise UsageError("'check' needs a kind, e.g. 'check ratio G A'")
    name, *ids = config.args
    kind = CheckKind.parse(name)
    require_args(f"check {kind.value}", ids, kind.arity)
    reports = [run_single_check(kind, ids, settings)]
    return RunResult(exit_status(reports), format_reports(reports, settings.output_format))


def run_chain(config: RunConfig, settings: KyFanConfig) -> RunResult:
    require_args("chain", config.args, 1)
    reports = verify_preset(config.args[0], kyfan_grid(settings), settings.tolerance, settings.workers)
    return RunResult(exit_status(reports), format_reports(reports, settings.output_format))


def run_series(config: RunConfig, settings: KyFanConfig) -> RunResult:
    n_max = parse_count("n_max", config.options.get("n_max", 200))
    terms = parse_count("terms", config.options.get("terms", 50))
    reports = [
        series.check_coefficient_signs(series.log_series_coeffs(n_max)),
        series.check_coefficient_signs(series.artanh_tan_coeffs(n_max)),
        series.cosh_bound_check(interval_grid(settings)),
        series.partial_sum_vs_function(series.SeriesFamily.log_mean, terms, LOG_SERIES_GRID),
        series.partial_sum_vs_function(series.SeriesFamily.artanh_tan, terms, ARTANH_TAN_SERIES_GRID),
    ]
    if config.options.get("oracle"):
        oracle_n_max = min(n_max, ORACLE_N_MAX)
        reports += [series.check_against_oracle(family, oracle_n_max) for family in series.SeriesFamily]
    return RunResult(exit_status(reports), format_reports(reports, settings.output_format))


def run_note_demo(config: RunConfig, settings: KyFanConfig) -> RunResult:
    require_args("note-demo", config.args, 0)
    demo = note_counterexample(interval=interval_grid(settings))
    # the demonstration succeeds when the inequality holds and monotonicity fails
    status = 0 if demo.inequality.passed and not demo.monotonicity.passed else 1
    if settings.output_format != "text":
        return RunResult(status, format_reports([demo.inequality, demo.monotonicity], settings.output_format))
    with io.StringIO() as si:
        si.write(f"f(t) = {demo.function.name}\n")
        si.write(f"{demo.inequality}\n")
        si.write(f"{demo.monotonicity}\n")
        if witness := demo.monotonicity.first_violation:
            t1, t2 = witness
            si.write(f"witness: f({t1:.15g}) = {demo.function(t1):.15g} > f({t2:.15g}) = {demo.function(t2):.15g}\n")
        si.write(f"sup (y-x)/(2-x-y) on the grid = {sup_complement_ratio():.15g}\n")
        return RunResult(status, si.getvalue())


def run_catalog(config: RunConfig, settings: KyFanConfig) -> RunResult:
    require_args("catalog", config.args, 0)
    means = list_means()
    rows = [{"id": mean.id, "name": mean.display_name, "kind": str(mean.kind)} for mean in means]
    rows.append({"id": "Ar(r)", "name": "power mean of order r", "kind": str(MeanKind.direct_formula)})
    text = "".join(f"{row['id']:<6} {row['name']:<24} {row['kind']}\n" for row in rows)
    return RunResult(0, format_rows(rows, text, settings.output_format))


def surface_rows(
    m: MeanDescriptor,
    n: MeanDescriptor,
    grid: GridSpec,
    relation: Relation = Relation.ratio,
    workers: int = 1,
) -> typing.Iterator[tuple[float, float, float, float, float]]:
    raise_for_kyfan_domain(grid)
    x, y = grid.points()
    match relation:
        case Relation.ratio:
            sides = ratio_sides(m, n, grid, workers)
        case Relation.harmonic:
            sides = harmonic_sides(m, n, grid, workers)
    for row in zip(x, y, sides.lhs, sides.rhs, sides.margins):
        yield tuple(map(float, row))


def export_ratio_surface(
    m: MeanDescriptor,
    n: MeanDescriptor,
    grid: GridSpec,
    path: pathlib.Path | str,
    relation: Relation | str = Relation.ratio,
    workers: int = 1,
) -> int:
    """
    Write both sides of the inequality at every grid point as CSV, in row-major grid order.
    Returns the number of data rows.
    """
    relation = Relation(str(relation))
    count = 0
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(SURFACE_HEADER)
            for row in surface_rows(m, n, grid, relation, workers):
                writer.writerow(map(repr, row))
                count += 1
    except OSError as ex:
        raise ReportWriteError(f"Couldn't write {path}: {ex.strerror or ex}") from ex
    log.debug("wrote %d surface rows to %s", count, path)
    return count


def run_surface(config: RunConfig, settings: KyFanConfig) -> RunResult:
    require_args("surface", config.args, 2)
    if config.output_path is None:
        raise UsageError("'surface' needs --out PATH")
    try:
        relation = Relation(str(config.options.get("relation", "ratio")))
    except ValueError:
        raise UsageError("relation must be 'ratio' or 'harmonic'") from None
    m, n = get_mean(config.args[0]), get_mean(config.args[1])
    count = export_ratio_surface(m, n, kyfan_grid(settings), config.output_path, relation, settings.workers)
    return RunResult(0, f"Wrote {count} rows to {config.output_path}\n")


def run_soundness(config: RunConfig, settings: KyFanConfig) -> RunResult:
    require_args("soundness", config.args, 0)
    records = audit_soundness(
        grid=kyfan_grid(settings),
        interval=interval_grid(settings),
        tolerance=settings.tolerance,
        workers=settings.workers,
    )
    status = 0 if all(record.is_sound and record.forms_agree for record in records) else 1
    rows = [record.as_dict() for record in records]
    if settings.output_format == "csv":
        rows = [{**row, "pair": " ".join(row["pair"])} for row in rows]
    text = "".join(f"{record}\n" for record in records)
    return RunResult(status, format_rows(rows, text, settings.output_format))


HANDLERS: typing.Final[typing.Mapping[Command, typing.Callable[[RunConfig, KyFanConfig], RunResult]]] = {
    Command.eval: run_eval,
    Command.seiffert: run_seiffert,
    Command.check: run_check,
    Command.chain: run_chain,
    Command.series: run_series,
    Command.note_demo: run_note_demo,
    Command.catalog: run_catalog,
    Command.surface: run_surface,
    Command.soundness: run_soundness,
}


def run(config: RunConfig, base: KyFanConfig | None = None) -> RunResult:
    """
    Execute one command. The exit status depends only on the verdicts of the reports it produced.
    """
    settings = config.settings(base or KyFanConfig())
    log.debug("running %s %s with %s", config.command.value, " ".join(config.args), settings)
    return HANDLERS[config.command](config, settings)


def write_output(text: str, path: pathlib.Path | str | None) -> None:
    if path is None:
        print(text, end="")
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as ex:
        raise ReportWriteError(f"Couldn't write {path}: {ex.strerror or ex}") from ex


def main():
    print(run(RunConfig(Command.catalog)).text, end="")
    print(run(RunConfig(Command.chain, ("ns2003",), nx=40, ny=40)).text, end="")


if __name__ == "__main__":
    main()
