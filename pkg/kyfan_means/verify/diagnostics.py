# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import dataclasses
import enum
import types
import typing

import numpy as np

from kyfan_means import special
from kyfan_means.common import FloatArray, MeanDomainError, RealLike, as_float_array, unwrap_scalar
from kyfan_means.consts import DERIVATIVE_STEP, DERIVATIVE_THRESHOLD
from kyfan_means.grid import IntervalGrid
from kyfan_means.means import get_mean
from kyfan_means.report import CheckReport, Verdict, point_at
from kyfan_means.seiffert import get_seiffert


@dataclasses.dataclass(frozen=True)
class RealFunction:
    """
    A named vectorized real function of one variable.
    """

    name: str
    fn: typing.Callable[[FloatArray], FloatArray] = dataclasses.field(repr=False, compare=False)

    def __call__(self, t: RealLike) -> RealLike:
        return unwrap_scalar(self.fn(as_float_array(t)), t)


@enum.unique
class Sign(enum.Enum):
    positive = 1
    negative = -1

    def __str__(self) -> str:
        return self.name


def central_difference(f: RealFunction, z: FloatArray, step: float = DERIVATIVE_STEP) -> FloatArray:
    return (f.fn(z + step) - f.fn(z - step)) / (2.0 * step)


def check_derivative_sign(
    f: RealFunction,
    grid: IntervalGrid,
    sign: Sign,
    step: float = DERIVATIVE_STEP,
    threshold: float = DERIVATIVE_THRESHOLD,
) -> CheckReport:
    """
    Estimate f' by central differences and compare its sign with the claimed one.
    Estimates with magnitude at most `threshold` are counted as inconclusive, never as failures.
    """
    if step <= 0 or threshold < 0:
        raise MeanDomainError(f"need step > 0 and threshold >= 0, got step={step!r}, threshold={threshold!r}")
    z = grid.points()
    with np.errstate(all="ignore"):
        signed = sign.value * central_difference(f, z, step)
    signed = np.where(np.isnan(signed), -np.inf, signed)
    undecided = np.abs(signed) <= threshold
    wrong = ~undecided & (signed < 0)
    if wrong.any():
        verdict = Verdict.failed
    elif undecided.all():
        verdict = Verdict.inconclusive
    else:
        verdict = Verdict.passed
    worst = int(np.argmin(signed))
    return CheckReport(
        relation=f"sign of {f.name}' is {sign}",
        means=(f.name,),
        grid=grid,
        verdict=verdict,
        worst_margin=float(signed[worst]),
        worst_point=point_at((z,), worst),
        samples=int(z.size),
        first_violation=point_at((z,), int(np.argmax(wrong))) if wrong.any() else None,
        inconclusive=int(np.count_nonzero(undecided)),
    )


class DerivativeClaim(typing.NamedTuple):
    function: RealFunction
    sign: Sign
    grid: IntervalGrid


def seiffert_quotient(num_id: str, den_id: str) -> RealFunction:
    num, den = get_seiffert(num_id), get_seiffert(den_id)
    return RealFunction(f"{num_id}/{den_id}", lambda z: num.fn(z) / den.fn(z))


def seiffert_difference(left_id: str, right_id: str) -> RealFunction:
    left, right = get_seiffert(left_id), get_seiffert(right_id)
    return RealFunction(f"{left_id}-{right_id}", lambda z: left.fn(z) - right.fn(z))


def mean_quotient(num_id: str, den_id: str) -> RealFunction:
    """
    t -> M(1, t)/N(1, t).
    """
    num, den = get_mean(num_id), get_mean(den_id)
    return RealFunction(f"{num_id}(1,t)/{den_id}(1,t)", lambda t: num(1.0, t) / den(1.0, t))


def _claims() -> typing.Mapping[str, DerivativeClaim]:
    inner = IntervalGrid(0.01, 0.99, 981)
    positive, negative = Sign.positive, Sign.negative
    claims = {
        "arctan/q": DerivativeClaim(seiffert_quotient("arctan", "q"), positive, inner),
        "He/Ar(2/3)": DerivativeClaim(mean_quotient("He", "Ar(2/3)"), positive, inner),
        "He/Ar(1/2)": DerivativeClaim(mean_quotient("He", "Ar(1/2)"), negative, inner),
        "Ar(1/3)/L": DerivativeClaim(mean_quotient("Ar(1/3)", "L"), negative, IntervalGrid(0.01, 0.9, 891)),
        "sinh/id": DerivativeClaim(seiffert_quotient("sinh", "id"), positive, inner),
        "arcsin/a(1/2)": DerivativeClaim(seiffert_quotient("arcsin", "a(1/2)"), negative, inner),
        "artanh/tan": DerivativeClaim(seiffert_quotient("artanh", "tan"), positive, inner),
    }
    # differences of Seiffert functions along the harmonic chains, each increasing on (0, 1)
    for left, right in (
        ("arctan", "tanh"),
        ("sin", "arctan"),
        ("arsinh", "sin"),
        ("id", "arsinh"),
        ("sinh", "id"),
        ("tan", "sinh"),
        ("artanh", "tan"),
        ("arcsin", "sinh"),
        ("artanh", "arcsin"),
    ):
        function = seiffert_difference(left, right)
        claims[function.name] = DerivativeClaim(function, positive, inner)
    return types.MappingProxyType(claims)


# Monotonicity claims that the ratio and harmonic chains rest on.
DERIVATIVE_CLAIMS: typing.Final = _claims()


def check_claim(name: str, step: float = DERIVATIVE_STEP, threshold: float = DERIVATIVE_THRESHOLD) -> CheckReport:
    try:
        claim = DERIVATIVE_CLAIMS[name]
    except KeyError:
        raise MeanDomainError(f"unknown derivative claim {name!r}, choose one of: {', '.join(DERIVATIVE_CLAIMS)}")
    return check_derivative_sign(claim.function, claim.grid, claim.sign, step, threshold)


def main():
    for name in DERIVATIVE_CLAIMS:
        print(check_claim(name))


if __name__ == "__main__":
    main()
