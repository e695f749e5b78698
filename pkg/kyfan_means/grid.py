# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import concurrent.futures
import dataclasses
import logging
import typing

import numpy as np

from kyfan_means.common import FloatArray, KyFanException
from kyfan_means.consts import CHUNK_SIZE, INTERVAL_MARGIN, INTERVAL_POINTS, KYFAN_LOWER, KYFAN_POINTS, KYFAN_UPPER

log = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class GridSpecError(KyFanException, ValueError):
    what: str


@dataclasses.dataclass(frozen=True)
class GridSpec:
    """
    Uniform rectangle of (x, y) samples, flattened in row-major order (x is the slow index).
    """

    x_min: float = KYFAN_LOWER
    x_max: float = KYFAN_UPPER
    y_min: float = KYFAN_LOWER
    y_max: float = KYFAN_UPPER
    nx: int = KYFAN_POINTS
    ny: int = KYFAN_POINTS
    exclude_diagonal: bool = False

    def __post_init__(self) -> None:
        if self.nx < 2 or self.ny < 2:
            raise GridSpecError(f"grid needs at least 2 points per axis, got {self.nx}x{self.ny}")
        if not (0 < self.x_min < self.x_max and 0 < self.y_min < self.y_max):
            raise GridSpecError(f"grid bounds must be positive and ordered: {self.as_dict()}")

    @classmethod
    def square(cls, lower: float, upper: float, n: int, exclude_diagonal: bool = False) -> typing.Self:
        return cls(lower, upper, lower, upper, n, n, exclude_diagonal)

    @classmethod
    def kyfan_default(cls) -> typing.Self:
        return cls()

    def is_within_kyfan_domain(self) -> bool:
        return self.x_max <= 0.5 and self.y_max <= 0.5

    def axes(self) -> tuple[FloatArray, FloatArray]:
        return np.linspace(self.x_min, self.x_max, self.nx), np.linspace(self.y_min, self.y_max, self.ny)

    def points(self) -> tuple[FloatArray, FloatArray]:
        xs, ys = self.axes()
        xx, yy = np.meshgrid(xs, ys, indexing="ij")
        xx, yy = xx.ravel(), yy.ravel()
        if self.exclude_diagonal:
            keep = xx != yy
            xx, yy = xx[keep], yy[keep]
        return xx, yy

    def as_dict(self) -> dict[str, typing.Any]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class IntervalGrid:
    """
    Uniform 1-D sample of [lo, hi] with n points.
    """

    lo: float = INTERVAL_MARGIN
    hi: float = 1.0 - INTERVAL_MARGIN
    n: int = INTERVAL_POINTS

    def __post_init__(self) -> None:
        if self.n < 2:
            raise GridSpecError(f"interval grid needs at least 2 points, got {self.n}")
        if not self.lo < self.hi:
            raise GridSpecError(f"interval bounds must be ordered, got [{self.lo}, {self.hi}]")

    @classmethod
    def unit(cls, n: int = INTERVAL_POINTS, margin: float = INTERVAL_MARGIN) -> typing.Self:
        return cls(margin, 1.0 - margin, n)

    def is_within(self, lo: float, hi: float) -> bool:
        """
        True if the grid lies inside the open interval (lo, hi).
        """
        return lo < self.lo and self.hi < hi

    def points(self) -> FloatArray:
        return np.linspace(self.lo, self.hi, self.n)

    def as_dict(self) -> dict[str, typing.Any]:
        return dataclasses.asdict(self)


AnyGrid = GridSpec | IntervalGrid


def chunk_bounds(size: int, chunk_size: int = CHUNK_SIZE) -> list[tuple[int, int]]:
    return [(start, min(start + chunk_size, size)) for start in range(0, size, chunk_size)]


def map_ordered(
    fn: typing.Callable[..., FloatArray],
    *arrays: FloatArray,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> FloatArray:
    """
    Evaluate an elementwise function over equally long flat arrays, possibly in parallel.
    Chunks depend only on the array length, and results are concatenated in index order,
    so the output does not depend on the number of workers.
    """
    size = len(arrays[0])
    bounds = chunk_bounds(size, chunk_size)
    if workers <= 1 or len(bounds) <= 1:
        parts = [fn(*(a[lo:hi] for a in arrays)) for lo, hi in bounds]
    else:
        log.debug("evaluating %d points in %d chunks on %d workers", size, len(bounds), workers)
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: fn(*(a[b[0] : b[1]] for a in arrays)), bounds))
    if not parts:
        return np.empty(0, dtype=np.float64)
    return np.concatenate([np.asarray(part, dtype=np.float64) for part in parts])


def main():
    from pprint import pprint

    grid = GridSpec.square(0.1, 0.5, 3)
    pprint(grid.points(), indent=2)
    pprint(IntervalGrid(0.25, 0.75, 3).points(), indent=2)


if __name__ == "__main__":
    main()
