# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import dataclasses
import enum
import fractions
import functools
import re
import types
import typing

import numpy as np

from kyfan_means import special
from kyfan_means.common import (
    FloatArray,
    MeanDomainError,
    RealLike,
    SandwichViolationError,
    UnknownMeanError,
    as_float_array,
    require_finite,
    unwrap_scalar,
)
from kyfan_means.consts import DIAGONAL_THRESHOLD, POWER_ZERO_THRESHOLD, SANDWICH_SLACK

# Receives sorted arguments 0 < lo < hi, never a diagonal pair.
OffDiagonalFormula = typing.Callable[[FloatArray, FloatArray], FloatArray]
RawSeiffert = typing.Callable[[FloatArray], FloatArray]
PowerMeanOrder = typing.NewType("PowerMeanOrder", float)

RE_POWER_MEAN_ID = re.compile(r"^Ar\((?P<order>[^()]+)\)$")


@enum.unique
class MeanKind(enum.Enum):
    direct_formula = "direct-formula"
    seiffert_generated = "seiffert-generated"

    def __str__(self) -> str:
        return self.value


def raise_for_arguments(x: FloatArray, y: FloatArray) -> None:
    for name, arg in (("x", x), ("y", y)):
        bad = ~(np.isfinite(arg) & (arg > 0))
        if np.any(bad):
            value = float(np.ravel(arg)[np.flatnonzero(np.ravel(bad))[0]])
            raise MeanDomainError(f"mean arguments must be positive and finite, got {name}={value!r}")


def diagonal_mask(lo: FloatArray, hi: FloatArray) -> FloatArray:
    return (hi - lo) < DIAGONAL_THRESHOLD * (hi + lo)


@dataclasses.dataclass(frozen=True)
class MeanDescriptor:
    id: str
    display_name: str
    kind: MeanKind
    formula: OffDiagonalFormula = dataclasses.field(repr=False, compare=False)

    def evaluator(self, x: RealLike, y: RealLike) -> RealLike:
        """
        Evaluate the mean at positive (x, y). Accepts scalars or broadcastable arrays.
        """
        xa, ya = as_float_array(x), as_float_array(y)
        raise_for_arguments(xa, ya)
        return unwrap_scalar(self.evaluate_sorted(np.minimum(xa, ya), np.maximum(xa, ya)), x, y)

    __call__ = evaluator

    def evaluate_sorted(self, lo: FloatArray, hi: FloatArray) -> FloatArray:
        lo, hi = np.broadcast_arrays(as_float_array(lo), as_float_array(hi))
        near = diagonal_mask(lo, hi)
        with np.errstate(all="ignore"):
            raw = self.formula(np.where(near, 1.0, lo), np.where(near, 2.0, hi))
        value = np.where(near, (lo + hi) / 2.0, raw)
        return self._enforce_bounds(lo, hi, value)

    def _enforce_bounds(self, lo: FloatArray, hi: FloatArray, value: FloatArray) -> FloatArray:
        inside = (value >= lo * (1.0 - SANDWICH_SLACK)) & (value <= hi * (1.0 + SANDWICH_SLACK))
        if not np.all(inside):
            i = int(np.flatnonzero(~np.ravel(inside))[0])
            lo_i, hi_i, value_i = (float(np.ravel(a)[i]) for a in (lo, hi, value))
            raise SandwichViolationError(self.id, lo_i, hi_i, value_i)
        return np.clip(value, lo, hi)


def quotient_formula(seiffert: RawSeiffert) -> OffDiagonalFormula:
    """
    M(x, y) = |x - y| / (2 m(|x - y| / (x + y))).
    """

    def formula(lo: FloatArray, hi: FloatArray) -> FloatArray:
        diff = hi - lo
        return diff / (2.0 * seiffert(diff / (hi + lo)))

    return formula


def arithmetic_formula(lo: FloatArray, hi: FloatArray) -> FloatArray:
    return (lo + hi) / 2.0


def geometric_formula(lo: FloatArray, hi: FloatArray) -> FloatArray:
    # hi / lo overflows for extreme pairs, the separate roots do not
    return np.sqrt(lo) * np.sqrt(hi)


def harmonic_formula(lo: FloatArray, hi: FloatArray) -> FloatArray:
    return 2.0 * lo * (hi / (lo + hi))


def logarithmic_formula(lo: FloatArray, hi: FloatArray) -> FloatArray:
    # log x - log y cancels for x/y near 1; log1p of the relative gap does not.
    diff = hi - lo
    gap = diff / lo
    log_ratio = np.where(np.isfinite(gap), np.log1p(gap), np.log(hi) - np.log(lo))
    return diff / log_ratio


def quadratic_formula(lo: FloatArray, hi: FloatArray) -> FloatArray:
    t = lo / hi
    return hi * np.sqrt((1.0 + t * t) / 2.0)


def heronian_formula(lo: FloatArray, hi: FloatArray) -> FloatArray:
    return (lo + geometric_formula(lo, hi) + hi) / 3.0


def power_formula(r: float) -> OffDiagonalFormula:
    """
    ((x^r + y^r)/2)^(1/r), computed as base * exp(log1p(expm1(r log ratio) / 2) / r)
    with the ratio raised to a non-positive power, so nothing overflows for large |r|.
    """
    if abs(r) < POWER_ZERO_THRESHOLD:
        return geometric_formula

    def formula(lo: FloatArray, hi: FloatArray) -> FloatArray:
        if r > 0:
            base, log_ratio = hi, np.log(lo / hi)
        else:
            base, log_ratio = lo, np.log(hi / lo)
        return base * np.exp(np.log1p(np.expm1(r * log_ratio) / 2.0) / r)

    return formula


def _catalog() -> typing.Mapping[str, MeanDescriptor]:
    direct, generated = MeanKind.direct_formula, MeanKind.seiffert_generated
    entries = (
        MeanDescriptor("A", "arithmetic mean", direct, arithmetic_formula),
        MeanDescriptor("G", "geometric mean", direct, geometric_formula),
        MeanDescriptor("H", "harmonic mean", direct, harmonic_formula),
        MeanDescriptor("L", "logarithmic mean", direct, logarithmic_formula),
        MeanDescriptor("P", "first Seiffert mean", generated, quotient_formula(special.arcsin)),
        MeanDescriptor("T", "second Seiffert mean", generated, quotient_formula(special.arctan)),
        MeanDescriptor("NS", "Neuman-Sándor mean", generated, quotient_formula(special.arsinh)),
        MeanDescriptor("Q", "quadratic mean", direct, quadratic_formula),
        MeanDescriptor("He", "Heronian mean", direct, heronian_formula),
        MeanDescriptor("Ssin", "sine mean", generated, quotient_formula(special.sin)),
        MeanDescriptor("Ssinh", "hyperbolic sine mean", generated, quotient_formula(special.sinh)),
        MeanDescriptor("Stan", "tangent mean", generated, quotient_formula(special.tan)),
        MeanDescriptor("Stanh", "hyperbolic tangent mean", generated, quotient_formula(special.tanh)),
    )
    return types.MappingProxyType({mean.id: mean for mean in entries})


CATALOG: typing.Final = _catalog()


def parse_power_order(text: str) -> float:
    """
    Parse the order of a power mean: a decimal ("0.5", "-1", "1e-3") or a fraction ("1/3").
    """
    try:
        return require_finite("power mean order", float(fractions.Fraction(text.strip())))
    except (ValueError, ZeroDivisionError) as ex:
        raise MeanDomainError(f"invalid power mean order: {text!r}") from ex


def format_power_order(r: float) -> str:
    if float(r).is_integer():
        return str(int(r))
    return repr(float(r))


@functools.cache
def power_mean_descriptor(r: float, label: str | None = None) -> MeanDescriptor:
    r = require_finite("power mean order", r)
    label = label or format_power_order(r)
    return MeanDescriptor(f"Ar({label})", f"power mean of order {label}", MeanKind.direct_formula, power_formula(r))


def get_mean(mean_id: str) -> MeanDescriptor:
    """
    Look up a catalog mean or resolve a parametric power mean "Ar(r)".
    """
    try:
        return CATALOG[mean_id]
    except KeyError:
        pass
    if match := re.match(RE_POWER_MEAN_ID, mean_id.strip()):
        label = match.group("order").strip()
        try:
            order = parse_power_order(label)
        except MeanDomainError as ex:
            raise UnknownMeanError(mean_id) from ex
        return power_mean_descriptor(order, label)
    raise UnknownMeanError(mean_id)


def list_means() -> list[MeanDescriptor]:
    """
    Catalog means in a fixed order.
    """
    return list(CATALOG.values())


def eval_mean(mean_id: str, x: RealLike, y: RealLike) -> RealLike:
    return get_mean(mean_id)(x, y)


def power_mean(r: PowerMeanOrder | float, x: RealLike, y: RealLike) -> RealLike:
    return power_mean_descriptor(require_finite("power mean order", r))(x, y)


def heronian(x: RealLike, y: RealLike) -> RealLike:
    return CATALOG["He"](x, y)


def main():
    for mean in list_means():
        print(f"{mean.id:>6} {mean.display_name:<24} {mean.kind}: M(1, 2) = {mean(1.0, 2.0):.15g}")
    print(f"{'Ar(1/3)':>6} M(1, 2) = {eval_mean('Ar(1/3)', 1.0, 2.0):.15g}")


if __name__ == "__main__":
    main()
