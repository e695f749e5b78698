# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

"""
A function that satisfies f((y-x)/(x+y)) > f((y-x)/(2-x-y)) for 0 < x < y < 1/2
without being monotone, so monotonicity of the hypotheses is sufficient but not necessary.
"""

import typing

import numpy as np

from kyfan_means.common import FloatArray
from kyfan_means.grid import GridSpec, IntervalGrid
from kyfan_means.report import CheckReport, summarize
from kyfan_means.verify.diagnostics import RealFunction
from kyfan_means.verify.hypotheses import Direction, check_monotone

THIRD = 1.0 / 3.0


def note_raw(t: FloatArray) -> FloatArray:
    return np.where(t < THIRD, t, THIRD + (t - THIRD) * (1.0 - t))


note_function = RealFunction("t on (0,1/3), 1/3 + (t-1/3)(1-t) on [1/3,1)", note_raw)


def default_pair_grid() -> GridSpec:
    return GridSpec.square(1e-3, 0.499, 400)


def ordered_pairs(grid: GridSpec) -> tuple[FloatArray, FloatArray]:
    x, y = grid.points()
    keep = x < y
    return x[keep], y[keep]


def complement_ratio(x: FloatArray, y: FloatArray) -> FloatArray:
    return (y - x) / (2.0 - x - y)


def sup_complement_ratio(grid: GridSpec | None = None) -> float:
    """
    Largest (y-x)/(2-x-y) over grid pairs with x < y; at most 1/3 when y < 1/2.
    """
    x, y = ordered_pairs(grid or default_pair_grid())
    return float(np.max(complement_ratio(x, y)))


def check_note_inequality(f: RealFunction = note_function, grid: GridSpec | None = None) -> CheckReport:
    grid = grid or default_pair_grid()
    x, y = ordered_pairs(grid)
    margins = f.fn((y - x) / (x + y)) - f.fn(complement_ratio(x, y))
    return summarize(
        margins,
        (x, y),
        relation="f((y-x)/(x+y)) > f((y-x)/(2-x-y)) for x < y",
        means=(f.name,),
        grid=grid,
        tolerance=0.0,
        strict=True,
    )


def check_monotone_function(f: RealFunction = note_function, grid: IntervalGrid | None = None) -> CheckReport:
    grid = grid or IntervalGrid.unit()
    return check_monotone(
        f.fn(grid.points()),
        grid,
        Direction.non_decreasing,
        relation="f non-decreasing on (0, 1)",
        means=(f.name,),
        tolerance=0.0,
    )


class NoteCounterexample(typing.NamedTuple):
    function: RealFunction
    inequality: CheckReport  # expected to pass
    monotonicity: CheckReport  # expected to fail, first_violation is the witness (t1, t2)


def note_counterexample(
    pair_grid: GridSpec | None = None,
    interval: IntervalGrid | None = None,
) -> NoteCounterexample:
    return NoteCounterexample(
        function=note_function,
        inequality=check_note_inequality(note_function, pair_grid),
        monotonicity=check_monotone_function(note_function, interval),
    )


def main():
    demo = note_counterexample()
    print(demo.function.name)
    print(demo.inequality)
    print(demo.monotonicity)
    print(f"sup (y-x)/(2-x-y) = {sup_complement_ratio():.15g}")


if __name__ == "__main__":
    main()
