# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

"""
Taylor coefficients behind two of the monotonicity proofs, and numerical checks of them.

log-mean-series:    s^4 + s^3 - s - 1 - 3(s^2 + 1) s log s = 3 * sum_{n>=5} c_n (1 - s)^n
artanh-tan-series:  sin(2z)/2 - (1 - z^2) artanh z = sum_{n>=1} a_n z^(2n+1)
"""

import dataclasses
import enum
import fractions
import math
import typing
from collections.abc import Sequence

import numpy as np
from mpmath import mp

from kyfan_means import special
from kyfan_means.common import FloatArray, MeanDomainError, as_float_array
from kyfan_means.grid import IntervalGrid
from kyfan_means.report import CheckReport, summarize

PARTIAL_SUM_FLOOR = 1e-10
ORACLE_DPS = 50
ORACLE_TOLERANCE = 1e-9
LOG_SERIES_SCALE = 3.0  # the target is three times the series in c_n
SERIES_REGION = 0.5


@enum.unique
class SeriesFamily(enum.Enum):
    log_mean = "log-mean-series"
    artanh_tan = "artanh-tan-series"

    def __str__(self) -> str:
        return self.value

    @property
    def first_index(self) -> int:
        match self:
            case SeriesFamily.log_mean:
                return 5
            case SeriesFamily.artanh_tan:
                return 1


def get_family(name: str | SeriesFamily) -> SeriesFamily:
    if isinstance(name, SeriesFamily):
        return name
    for family in SeriesFamily:
        if name in (family.value, family.name, family.value.removesuffix("-series")):
            return family
    raise MeanDomainError(f"unknown series family {name!r}, choose one of: {', '.join(f.value for f in SeriesFamily)}")


@dataclasses.dataclass(frozen=True)
class CoefficientSequence:
    family: SeriesFamily
    n_max: int
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.n_max - self.family.first_index + 1:
            raise MeanDomainError(f"{self.family} needs one value per index {self.family.first_index}..{self.n_max}")
        if not all(math.isfinite(value) for value in self.values):
            raise MeanDomainError(f"{self.family} coefficients must be finite")

    def indices(self) -> range:
        return range(self.family.first_index, self.n_max + 1)

    def __getitem__(self, n: int) -> float:
        if n not in self.indices():
            raise IndexError(n)
        return self.values[n - self.family.first_index]

    def items(self) -> typing.Iterator[tuple[int, float]]:
        return zip(self.indices(), self.values)


def log_series_coeff(n: int) -> fractions.Fraction:
    return -fractions.Fraction(n * n - 5 * n + 12, n * (n - 1) * (n - 2) * (n - 3))


def log_series_coeffs(n_max: int) -> CoefficientSequence:
    """
    c_n = -(n^2 - 5n + 12) / (n (n-1) (n-2) (n-3)) for 5 <= n <= n_max.
    """
    if n_max < SeriesFamily.log_mean.first_index:
        raise MeanDomainError(f"log-mean-series starts at n = 5, got n_max={n_max}")
    return CoefficientSequence(
        SeriesFamily.log_mean,
        n_max,
        tuple(float(log_series_coeff(n)) for n in range(5, n_max + 1)),
    )


def artanh_tan_brackets(n_max: int) -> list[float]:
    """
    2 + (-1)^n 4^n (2n-1) / (2n)!, with 4^n/(2n)! updated iteratively (it underflows to 0 for large n).
    """
    if n_max < SeriesFamily.artanh_tan.first_index:
        raise MeanDomainError(f"artanh-tan-series starts at n = 1, got n_max={n_max}")
    brackets = []
    ratio = 1.0
    for n in range(1, n_max + 1):
        ratio *= 4.0 / ((2 * n - 1) * (2 * n))
        brackets.append(2.0 + (-1) ** n * ratio * (2 * n - 1))
    return brackets


def artanh_tan_coeffs(n_max: int) -> CoefficientSequence:
    return CoefficientSequence(
        SeriesFamily.artanh_tan,
        n_max,
        tuple(bracket / ((2 * n + 1) * (2 * n - 1)) for n, bracket in enumerate(artanh_tan_brackets(n_max), start=1)),
    )


def coeffs_for(family: SeriesFamily, n_max: int) -> CoefficientSequence:
    match family:
        case SeriesFamily.log_mean:
            return log_series_coeffs(n_max)
        case SeriesFamily.artanh_tan:
            return artanh_tan_coeffs(n_max)


def check_coefficient_signs(coeffs: CoefficientSequence) -> CheckReport:
    """
    Every c_n must be negative; every a_n must be non-negative.
    """
    indices = np.array(coeffs.indices(), dtype=np.float64)
    values = np.array(coeffs.values, dtype=np.float64)
    match coeffs.family:
        case SeriesFamily.log_mean:
            margins, relation, strict = -values, "c_n < 0", True
        case SeriesFamily.artanh_tan:
            margins, relation, strict = values, "a_n >= 0", False
    return summarize(
        margins,
        (indices,),
        relation=relation,
        means=(str(coeffs.family),),
        grid=None,
        tolerance=0.0,
        strict=strict,
    )


def cosh_bound_check(grid: IntervalGrid | None = None) -> CheckReport:
    """
    cosh z < 1 + z^2/2 + z^4/12 on (0, 1).
    """
    grid = grid or IntervalGrid.unit()
    if not grid.is_within(0.0, 1.0):
        raise MeanDomainError(f"cosh bound is checked on (0, 1), got [{grid.lo}, {grid.hi}]")
    z = grid.points()
    # cosh z - 1 written as 2 sinh(z/2)^2 keeps the margin accurate near 0
    margins = z * z / 2.0 + z**4 / 12.0 - 2.0 * np.sinh(z / 2.0) ** 2
    return summarize(
        margins,
        (z,),
        relation="cosh z < 1 + z^2/2 + z^4/12",
        means=(),
        grid=grid,
        tolerance=0.0,
        strict=True,
    )


def log_series_target(s: FloatArray) -> FloatArray:
    return s**4 + s**3 - s - 1.0 - 3.0 * (s * s + 1.0) * s * np.log(s)


def artanh_tan_target(z: FloatArray) -> FloatArray:
    return 0.5 * np.sin(2.0 * z) - (1.0 - z * z) * special.artanh(z)


def series_variable(family: SeriesFamily, points: FloatArray) -> FloatArray:
    """
    Map sample points to the expansion variable, raising if any point leaves the safe region.
    """
    match family:
        case SeriesFamily.log_mean:
            if np.any(np.abs(1.0 - points) > SERIES_REGION) or np.any(points <= 0):
                raise MeanDomainError(f"log-mean-series is summed for |1 - s| <= {SERIES_REGION}")
            return 1.0 - points
        case SeriesFamily.artanh_tan:
            if np.any(points <= 0) or np.any(points > SERIES_REGION):
                raise MeanDomainError(f"artanh-tan-series is summed for 0 < z <= {SERIES_REGION}")
            return points


def series_terms(family: SeriesFamily, coeffs: Sequence[float], first: int, w: FloatArray) -> FloatArray:
    """
    Terms coeff_k * w^power(k) as rows, one row per coefficient starting at index `first`.
    """
    scale = LOG_SERIES_SCALE if family == SeriesFamily.log_mean else 1.0
    indices = np.arange(first, first + len(coeffs))
    powers = indices if family == SeriesFamily.log_mean else 2 * indices + 1
    return scale * np.asarray(coeffs, dtype=np.float64)[:, None] * w[None, :] ** powers[:, None]


def partial_sum(family: SeriesFamily, n_terms: int, points: FloatArray) -> FloatArray:
    w = series_variable(family, as_float_array(points))
    if n_terms == 0:
        return np.zeros_like(w)
    coeffs = coeffs_for(family, family.first_index + n_terms - 1)
    return series_terms(family, coeffs.values, family.first_index, w).sum(axis=0)


def target_function(family: SeriesFamily, points: FloatArray) -> FloatArray:
    match family:
        case SeriesFamily.log_mean:
            return log_series_target(points)
        case SeriesFamily.artanh_tan:
            return artanh_tan_target(points)


def sample_points(grid: IntervalGrid | Sequence[float] | FloatArray) -> tuple[FloatArray, IntervalGrid | None]:
    if isinstance(grid, IntervalGrid):
        return grid.points(), grid
    return as_float_array(grid).ravel(), None


def partial_sum_vs_function(
    family: SeriesFamily | str,
    n_terms: int,
    grid: IntervalGrid | Sequence[float] | FloatArray,
) -> CheckReport:
    """
    Compare the partial sum of the first n_terms terms with the target function.
    Each point passes when the error is at most max(1e-10, 2 * |first omitted term|).
    """
    family = get_family(family)
    if n_terms < 0:
        raise MeanDomainError(f"number of terms must be non-negative, got {n_terms}")
    points, sampled = sample_points(grid)
    w = series_variable(family, points)
    omitted_index = family.first_index + n_terms
    omitted = series_terms(family, [coeffs_for(family, omitted_index)[omitted_index]], omitted_index, w)[0]
    allowed = np.maximum(PARTIAL_SUM_FLOOR, 2.0 * np.abs(omitted))
    error = np.abs(partial_sum(family, n_terms, points) - target_function(family, points))
    return summarize(
        allowed - error,
        (points,),
        relation=f"{family} with {n_terms} terms matches its target",
        means=(str(family),),
        grid=sampled,
        tolerance=0.0,
    )


def oracle_target(family: SeriesFamily) -> typing.Callable[[typing.Any], typing.Any]:
    match family:
        case SeriesFamily.log_mean:

            def target(w):
                s = 1 - w
                return s**4 + s**3 - s - 1 - 3 * (s**2 + 1) * s * mp.log(s)

        case SeriesFamily.artanh_tan:

            def target(z):
                return mp.sin(2 * z) / 2 - (1 - z**2) * mp.atanh(z)

    return target


def taylor_oracle(family: SeriesFamily | str, n_max: int) -> CoefficientSequence:
    """
    Series coefficients read off the target function with high-precision numerical differentiation.
    """
    family = get_family(family)
    if n_max < family.first_index:
        raise MeanDomainError(f"{family} starts at n = {family.first_index}, got n_max={n_max}")
    with mp.workdps(ORACLE_DPS):
        match family:
            case SeriesFamily.log_mean:
                taylor = mp.taylor(oracle_target(family), 0, n_max)
                values = [taylor[n] / LOG_SERIES_SCALE for n in range(5, n_max + 1)]
            case SeriesFamily.artanh_tan:
                taylor = mp.taylor(oracle_target(family), 0, 2 * n_max + 1)
                values = [taylor[2 * n + 1] for n in range(1, n_max + 1)]
        return CoefficientSequence(family, n_max, tuple(float(value) for value in values))


def check_against_oracle(
    family: SeriesFamily | str,
    n_max: int,
    tolerance: float = ORACLE_TOLERANCE,
) -> CheckReport:
    family = get_family(family)
    stated = coeffs_for(family, n_max)
    oracle = taylor_oracle(family, n_max)
    indices = np.array(stated.indices(), dtype=np.float64)
    margins = -np.abs(np.array(stated.values) - np.array(oracle.values))
    return summarize(
        margins,
        (indices,),
        relation=f"{family} coefficients match the Taylor oracle",
        means=(str(family),),
        grid=None,
        tolerance=tolerance,
    )


def main():
    print(f"c_5..c_8 = {log_series_coeffs(8).values}")
    print(f"a_1..a_4 = {artanh_tan_coeffs(4).values}")
    print(cosh_bound_check())
    print(partial_sum_vs_function(SeriesFamily.log_mean, 50, IntervalGrid(0.6, 1.0, 41)))
    print(check_against_oracle(SeriesFamily.artanh_tan, 6))


if __name__ == "__main__":
    main()
