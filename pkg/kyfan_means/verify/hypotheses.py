# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

"""
Monotonicity hypotheses that imply the Ky Fan type inequalities.
Each check samples a function on a 1-D grid and compares consecutive samples,
so a violation is reported as the pair (z_i, z_i+1).
"""

import enum

import numpy as np

from kyfan_means.common import FloatArray, MeanDomainError
from kyfan_means.consts import CHECK_TOLERANCE, INTERVAL_MARGIN, INTERVAL_POINTS, S_MAX
from kyfan_means.grid import IntervalGrid
from kyfan_means.means import MeanDescriptor
from kyfan_means.report import CheckReport, summarize
from kyfan_means.seiffert import SeiffertDescriptor


@enum.unique
class Direction(enum.Enum):
    non_decreasing = "non-decreasing"
    non_increasing = "non-increasing"

    def __str__(self) -> str:
        return self.value


def consecutive_margins(values: FloatArray, direction: Direction) -> FloatArray:
    steps = np.diff(values)
    return steps if direction == Direction.non_decreasing else -steps


def check_monotone(
    values: FloatArray,
    grid: IntervalGrid,
    direction: Direction,
    *,
    relation: str,
    means: tuple[str, ...],
    tolerance: float = CHECK_TOLERANCE,
    strict: bool = False,
) -> CheckReport:
    z = grid.points()
    return summarize(
        consecutive_margins(values, direction),
        (z[:-1], z[1:]),
        relation=relation,
        means=means,
        grid=grid,
        tolerance=tolerance,
        strict=strict,
    )


def raise_for_interval(grid: IntervalGrid, lo: float, hi: float, upper_closed: bool = False) -> None:
    inside = lo < grid.lo and (grid.hi <= hi if upper_closed else grid.hi < hi)
    if not inside:
        closing = "]" if upper_closed else ")"
        raise MeanDomainError(f"grid [{grid.lo}, {grid.hi}] must lie inside ({lo}, {hi}{closing}")


def check_ratio_monotone(
    m: SeiffertDescriptor,
    n: SeiffertDescriptor,
    grid: IntervalGrid | None = None,
    tolerance: float = CHECK_TOLERANCE,
) -> CheckReport:
    """
    Seiffert-function form of the ratio hypothesis: n/m is non-increasing on (0, 1).
    """
    grid = grid or IntervalGrid.unit()
    raise_for_interval(grid, 0.0, 1.0)
    z = grid.points()
    with np.errstate(all="ignore"):
        values = n.fn(z) / m.fn(z)
    return check_monotone(
        values,
        grid,
        Direction.non_increasing,
        relation=f"{n.id}/{m.id} non-increasing",
        means=(m.id, n.id),
        tolerance=tolerance,
    )


def check_q_increasing(
    m: MeanDescriptor,
    n: MeanDescriptor,
    grid: IntervalGrid | None = None,
    tolerance: float = CHECK_TOLERANCE,
) -> CheckReport:
    """
    Mean form of the ratio hypothesis: q(t) = M(1, t)/N(1, t) is non-decreasing on (0, 1).
    """
    grid = grid or IntervalGrid.unit()
    raise_for_interval(grid, 0.0, 1.0)
    t = grid.points()
    values = m(1.0, t) / n(1.0, t)
    return check_monotone(
        values,
        grid,
        Direction.non_decreasing,
        relation=f"{m.id}(1,t)/{n.id}(1,t) non-decreasing",
        means=(m.id, n.id),
        tolerance=tolerance,
    )


def check_diff_decreasing(
    m: SeiffertDescriptor,
    n: SeiffertDescriptor,
    grid: IntervalGrid | None = None,
    tolerance: float = CHECK_TOLERANCE,
) -> CheckReport:
    """
    Seiffert-function form of the harmonic hypothesis: m - n is non-increasing on (0, 1).
    """
    grid = grid or IntervalGrid.unit()
    raise_for_interval(grid, 0.0, 1.0)
    z = grid.points()
    with np.errstate(all="ignore"):
        values = m.fn(z) - n.fn(z)
    return check_monotone(
        values,
        grid,
        Direction.non_increasing,
        relation=f"{m.id} - {n.id} non-increasing",
        means=(m.id, n.id),
        tolerance=tolerance,
    )


def default_g_grid(s_max: float = S_MAX) -> IntervalGrid:
    return IntervalGrid(1.0 + INTERVAL_MARGIN, s_max, INTERVAL_POINTS)


def check_g_decreasing(
    m: MeanDescriptor,
    n: MeanDescriptor,
    grid: IntervalGrid | None = None,
    tolerance: float = CHECK_TOLERANCE,
    s_max: float = S_MAX,
) -> CheckReport:
    """
    Mean form of the harmonic hypothesis: g(s) = (s - 1)(1/M(s, 1) - 1/N(s, 1))
    is non-increasing on (1, s_max].
    """
    grid = grid or default_g_grid(s_max)
    raise_for_interval(grid, 1.0, s_max, upper_closed=True)
    s = grid.points()
    values = (s - 1.0) * (1.0 / m(s, 1.0) - 1.0 / n(s, 1.0))
    return check_monotone(
        values,
        grid,
        Direction.non_increasing,
        relation=f"(s-1)(1/{m.id}(s,1) - 1/{n.id}(s,1)) non-increasing",
        means=(m.id, n.id),
        tolerance=tolerance,
    )
