# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import typing

import numpy as np

from kyfan_means.common import FloatArray, MeanDomainError, RealLike, as_float_array
from kyfan_means.consts import CHECK_TOLERANCE
from kyfan_means.grid import GridSpec, map_ordered
from kyfan_means.means import MeanDescriptor
from kyfan_means.report import CheckReport, summarize


class KyFanSides(typing.NamedTuple):
    lhs: FloatArray  # the M side
    rhs: FloatArray  # the N side

    @property
    def margins(self) -> FloatArray:
        return self.rhs - self.lhs


def raise_for_kyfan_domain(grid: GridSpec) -> None:
    if not grid.is_within_kyfan_domain():
        raise MeanDomainError(f"Ky Fan inequalities need 0 < x, y <= 1/2, got grid {grid.as_dict()}")


def prime_of(mean: MeanDescriptor, x: RealLike, y: RealLike) -> RealLike:
    """
    M' = M(1 - x, 1 - y) for 0 < x, y <= 1/2.
    """
    xa, ya = as_float_array(x), as_float_array(y)
    for name, arg in (("x", xa), ("y", ya)):
        if not np.all((arg > 0) & (arg <= 0.5)):
            raise MeanDomainError(f"prime notation needs arguments in (0, 1/2], got {name}={arg!r}")
    return mean(1.0 - xa, 1.0 - ya)


def ratio_term(mean: MeanDescriptor, x: FloatArray, y: FloatArray) -> FloatArray:
    return mean(x, y) / mean(1.0 - x, 1.0 - y)


def harmonic_term(mean: MeanDescriptor, x: FloatArray, y: FloatArray) -> FloatArray:
    return 1.0 / mean(x, y) - 1.0 / mean(1.0 - x, 1.0 - y)


def ratio_relation(m: MeanDescriptor, n: MeanDescriptor) -> str:
    return f"{m.id}/{m.id}' <= {n.id}/{n.id}'"


def harmonic_relation(m: MeanDescriptor, n: MeanDescriptor) -> str:
    return f"1/{m.id} - 1/{m.id}' <= 1/{n.id} - 1/{n.id}'"


def ratio_sides(m: MeanDescriptor, n: MeanDescriptor, grid: GridSpec, workers: int = 1) -> KyFanSides:
    x, y = grid.points()
    return KyFanSides(
        lhs=map_ordered(lambda a, b: ratio_term(m, a, b), x, y, workers=workers),
        rhs=map_ordered(lambda a, b: ratio_term(n, a, b), x, y, workers=workers),
    )


def harmonic_sides(m: MeanDescriptor, n: MeanDescriptor, grid: GridSpec, workers: int = 1) -> KyFanSides:
    x, y = grid.points()
    return KyFanSides(
        lhs=map_ordered(lambda a, b: harmonic_term(m, a, b), x, y, workers=workers),
        rhs=map_ordered(lambda a, b: harmonic_term(n, a, b), x, y, workers=workers),
    )


def harmonic_margin(m: MeanDescriptor, n: MeanDescriptor, x: FloatArray, y: FloatArray) -> FloatArray:
    # grouped by side so both near-equal reciprocals cancel first
    xp, yp = 1.0 - x, 1.0 - y
    return (1.0 / n(x, y) - 1.0 / m(x, y)) - (1.0 / n(xp, yp) - 1.0 / m(xp, yp))


def check_ratio_kyfan(
    m: MeanDescriptor,
    n: MeanDescriptor,
    grid: GridSpec | None = None,
    tolerance: float = CHECK_TOLERANCE,
    workers: int = 1,
) -> CheckReport:
    """
    Check M/M' <= N/N' at every grid point.
    """
    grid = grid or GridSpec.kyfan_default()
    raise_for_kyfan_domain(grid)
    x, y = grid.points()
    sides = ratio_sides(m, n, grid, workers)
    return summarize(
        sides.margins,
        (x, y),
        relation=ratio_relation(m, n),
        means=(m.id, n.id),
        grid=grid,
        tolerance=tolerance,
    )


def check_harmonic_kyfan(
    m: MeanDescriptor,
    n: MeanDescriptor,
    grid: GridSpec | None = None,
    tolerance: float = CHECK_TOLERANCE,
    workers: int = 1,
) -> CheckReport:
    """
    Check 1/M - 1/M' <= 1/N - 1/N' at every grid point.
    """
    grid = grid or GridSpec.kyfan_default()
    raise_for_kyfan_domain(grid)
    x, y = grid.points()
    margins = map_ordered(lambda a, b: harmonic_margin(m, n, a, b), x, y, workers=workers)
    return summarize(
        margins,
        (x, y),
        relation=harmonic_relation(m, n),
        means=(m.id, n.id),
        grid=grid,
        tolerance=tolerance,
    )


def main():
    from kyfan_means.means import get_mean

    print(f"A'(0.1, 0.4) = {prime_of(get_mean('A'), 0.1, 0.4):.15g}")
    print(check_ratio_kyfan(get_mean("G"), get_mean("A")))
    print(check_harmonic_kyfan(get_mean("A"), get_mean("P")))


if __name__ == "__main__":
    main()
