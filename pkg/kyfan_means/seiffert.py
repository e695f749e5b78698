# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import dataclasses
import enum
import functools
import re
import types
import typing

import numpy as np

from kyfan_means import special
from kyfan_means.common import (
    MeanDomainError,
    RealLike,
    UnknownSeiffertError,
    as_float_array,
    unwrap_scalar,
)
from kyfan_means.consts import CHECK_TOLERANCE, ROUNDTRIP_TOLERANCE
from kyfan_means.grid import GridSpec, IntervalGrid
from kyfan_means.means import (
    MeanDescriptor,
    MeanKind,
    RawSeiffert,
    parse_power_order,
    power_mean_descriptor,
    quotient_formula,
)
from kyfan_means.report import CheckReport, summarize

RE_POWER_SEIFFERT_ID = re.compile(r"^a\((?P<order>[^()]+)\)$")


@enum.unique
class SeiffertOrigin(enum.Enum):
    builtin = "builtin"
    extracted_from_mean = "extracted-from-mean"
    custom = "custom"

    def __str__(self) -> str:
        return self.value


def raise_for_unit_interval(z: np.ndarray) -> None:
    bad = ~((z > 0) & (z < 1))
    if np.any(bad):
        value = float(np.ravel(z)[np.flatnonzero(np.ravel(bad))[0]])
        raise MeanDomainError(f"Seiffert functions are defined on (0, 1), got z={value!r}")


@dataclasses.dataclass(frozen=True)
class SeiffertDescriptor:
    id: str
    fn: RawSeiffert = dataclasses.field(repr=False, compare=False)
    origin: SeiffertOrigin = SeiffertOrigin.custom

    def evaluator(self, z: RealLike) -> RealLike:
        za = as_float_array(z)
        raise_for_unit_interval(za)
        return unwrap_scalar(self.fn(za), z)

    __call__ = evaluator


def _builtins() -> typing.Mapping[str, SeiffertDescriptor]:
    entries = {
        "id": special.identity,
        "sin": special.sin,
        "sinh": special.sinh,
        "tan": special.tan,
        "tanh": special.tanh,
        "arcsin": special.arcsin,
        "arctan": special.arctan,
        "arsinh": special.arsinh,
        "artanh": special.artanh,
        "q": special.quadratic,
        "g": special.geometric,
    }
    return types.MappingProxyType(
        {name: SeiffertDescriptor(name, fn, SeiffertOrigin.builtin) for name, fn in entries.items()}
    )


BUILTIN_SEIFFERT: typing.Final = _builtins()


def extract_raw(mean: MeanDescriptor) -> RawSeiffert:
    def fn(z: np.ndarray) -> np.ndarray:
        return z / mean.evaluate_sorted(1.0 - z, 1.0 + z)

    return fn


@functools.cache
def power_seiffert(r: float, label: str) -> SeiffertDescriptor:
    """
    a_r(z) = z / A_r(1 + z, 1 - z).
    """
    return SeiffertDescriptor(f"a({label})", extract_raw(power_mean_descriptor(r, label)), SeiffertOrigin.builtin)


def get_seiffert(seiffert_id: str) -> SeiffertDescriptor:
    try:
        return BUILTIN_SEIFFERT[seiffert_id]
    except KeyError:
        pass
    if match := re.match(RE_POWER_SEIFFERT_ID, seiffert_id.strip()):
        label = match.group("order").strip()
        try:
            return power_seiffert(parse_power_order(label), label)
        except MeanDomainError as ex:
            raise UnknownSeiffertError(seiffert_id) from ex
    raise UnknownSeiffertError(seiffert_id)


def list_seiffert() -> list[SeiffertDescriptor]:
    return list(BUILTIN_SEIFFERT.values())


def mean_to_seiffert(mean: MeanDescriptor) -> SeiffertDescriptor:
    """
    m(z) = z / M(1 + z, 1 - z).
    """
    return SeiffertDescriptor(f"m[{mean.id}]", extract_raw(mean), SeiffertOrigin.extracted_from_mean)


def seiffert_to_mean(seiffert: SeiffertDescriptor, mean_id: str | None = None) -> MeanDescriptor:
    """
    M(x, y) = |x - y| / (2 m(|x - y| / (x + y))).
    Evaluating the result raises SandwichViolationError wherever m breaks the Seiffert bounds.
    """
    return MeanDescriptor(
        id=mean_id or f"M[{seiffert.id}]",
        display_name=f"mean generated by {seiffert.id}",
        kind=MeanKind.seiffert_generated,
        formula=quotient_formula(seiffert.fn),
    )


def sandwich_bounds(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return z / (1.0 + z), z / (1.0 - z)


def validate_seiffert(
    seiffert: SeiffertDescriptor,
    grid: IntervalGrid | None = None,
    tolerance: float = CHECK_TOLERANCE,
) -> CheckReport:
    """
    Check z/(1+z) <= m(z) <= z/(1-z) on the grid, with absolute slack.
    """
    grid = grid or IntervalGrid.unit()
    if not grid.is_within(0.0, 1.0):
        raise MeanDomainError(f"sandwich check needs a grid inside (0, 1), got [{grid.lo}, {grid.hi}]")
    z = grid.points()
    with np.errstate(all="ignore"):
        values = seiffert.fn(z)
    lower, upper = sandwich_bounds(z)
    margins = np.minimum(values - lower, upper - values)
    return summarize(
        margins,
        (z,),
        relation="z/(1+z) <= m(z) <= z/(1-z)",
        means=(seiffert.id,),
        grid=grid,
        tolerance=tolerance,
    )


def default_roundtrip_grid() -> GridSpec:
    return GridSpec.square(1e-3, 0.5, 101, exclude_diagonal=True)


def roundtrip_check(
    mean: MeanDescriptor,
    grid: GridSpec | None = None,
    tolerance: float = ROUNDTRIP_TOLERANCE,
) -> CheckReport:
    """
    Compare M with the mean rebuilt from its own Seiffert function; margins are minus the relative error.
    """
    grid = grid or default_roundtrip_grid()
    x, y = grid.points()
    expected = mean(x, y)
    rebuilt = seiffert_to_mean(mean_to_seiffert(mean))(x, y)
    margins = -np.abs(rebuilt - expected) / expected
    return summarize(
        margins,
        (x, y),
        relation="seiffert_to_mean(mean_to_seiffert(M)) = M",
        means=(mean.id,),
        grid=grid,
        tolerance=tolerance,
    )


def main():
    z = 0.5
    for seiffert in list_seiffert():
        print(f"{seiffert.id:>7}({z}) = {seiffert(z):.15g}  {validate_seiffert(seiffert)}")


if __name__ == "__main__":
    main()
