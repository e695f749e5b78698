# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kyfan_means.common import MeanDomainError, UnknownMeanError
from kyfan_means.means import (
    CATALOG,
    MeanDescriptor,
    MeanKind,
    eval_mean,
    get_mean,
    heronian,
    list_means,
    power_mean,
)

CATALOG_IDS = [mean.id for mean in list_means()]
positive = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


@pytest.fixture(scope="module")
def random_pairs() -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(2003)
    return rng.uniform(1e-6, 10.0, 10_000), rng.uniform(1e-6, 10.0, 10_000)


def test_catalog_has_thirteen_means() -> None:
    assert CATALOG_IDS == ["A", "G", "H", "L", "P", "T", "NS", "Q", "He", "Ssin", "Ssinh", "Stan", "Stanh"]
    assert [mean.id for mean in list_means()] == CATALOG_IDS, "ordering should be stable"


@pytest.mark.parametrize(
    "mean_id, x, y, expected",
    [
        ("A", 0.1, 0.4, 0.25),
        ("G", 4.0, 9.0, 6.0),
        ("H", 1.0, 4.0, 1.6),
        ("Q", 1.0, 7.0, 5.0),
        ("L", 1.0, math.e, math.e - 1.0),
        ("He", 4.0, 9.0, 19.0 / 3.0),
        ("P", 1.0, 3.0, 6.0 / math.pi),
        ("T", 1.0, 3.0, 1.0 / math.atan(0.5)),
        ("NS", 1.0, 3.0, 1.0 / math.asinh(0.5)),
        ("Ssin", 1.0, 3.0, 1.0 / math.sin(0.5)),
        ("Ssinh", 1.0, 3.0, 1.0 / math.sinh(0.5)),
        ("Stan", 1.0, 3.0, 1.0 / math.tan(0.5)),
        ("Stanh", 1.0, 3.0, 1.0 / math.tanh(0.5)),
        ("Ar(1/3)", 1.0, 8.0, 27.0 / 8.0),
        ("Ar(0.5)", 1.0, 9.0, 4.0),
    ],
)
def test_known_values(mean_id: str, x: float, y: float, expected: float) -> None:
    assert eval_mean(mean_id, x, y) == pytest.approx(expected, rel=1e-14)


def test_power_mean_special_orders() -> None:
    assert power_mean(1, 0.1, 0.4) == pytest.approx(0.25, rel=1e-15)
    assert power_mean(0, 4.0, 9.0) == pytest.approx(6.0, rel=1e-15)
    assert power_mean(2, 1.0, 7.0) == pytest.approx(5.0, rel=1e-15)
    assert power_mean(-1, 1.0, 4.0) == pytest.approx(eval_mean("H", 1.0, 4.0), rel=1e-15)
    assert power_mean(1e-13, 4.0, 9.0) == power_mean(0, 4.0, 9.0)


def test_power_mean_does_not_overflow() -> None:
    assert power_mean(400, 1.0, 2.0) == pytest.approx(2.0 * 0.5 ** (1 / 400), rel=1e-12)
    assert power_mean(-400, 1.0, 2.0) == pytest.approx(2.0 ** (1 / 400), rel=1e-12)


def test_power_mean_is_continuous_at_zero() -> None:
    gaps = [abs(power_mean(r, 1.0, 5.0) - power_mean(0, 1.0, 5.0)) for r in (1e-2, 1e-4, 1e-6, 1e-8)]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 1e-7


def test_power_mean_increases_with_order() -> None:
    values = [power_mean(r, 0.3, 2.0) for r in (-3, -1, -0.5, 0, 1 / 3, 0.5, 1, 2, 3)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_heronian() -> None:
    assert heronian(4.0, 9.0) == pytest.approx(19.0 / 3.0, rel=1e-15)
    assert heronian(0.7, 0.7) == 0.7
    with pytest.raises(MeanDomainError):
        heronian(1.0, 0.0)


@pytest.mark.parametrize("mean_id", CATALOG_IDS)
def test_domain_errors(mean_id: str) -> None:
    for x, y in ((0.0, 1.0), (-1.0, 1.0), (1.0, math.nan), (math.inf, 1.0)):
        with pytest.raises(MeanDomainError):
            eval_mean(mean_id, x, y)


@pytest.mark.parametrize("mean_id", ["B", "Ar()", "Ar(x)", "Ar(1/0)", "a(1)", ""])
def test_unknown_mean(mean_id: str) -> None:
    with pytest.raises(UnknownMeanError):
        get_mean(mean_id)


def test_power_mean_ids_are_cached() -> None:
    assert get_mean("Ar(1/3)") is get_mean("Ar(1/3)")
    assert get_mean("Ar(2)").kind == MeanKind.direct_formula


@pytest.mark.parametrize("mean_id", CATALOG_IDS)
def test_diagonal(mean_id: str) -> None:
    mean = get_mean(mean_id)
    for x in (1e-6, 0.3, 1.0, 123.0):
        assert mean(x, x) == x
        h = 1e-10
        assert abs(mean(x, x * (1 + h)) - x) <= 2 * x * h


@pytest.mark.parametrize("mean_id", CATALOG_IDS)
def test_axioms_on_random_pairs(mean_id: str, random_pairs: tuple[np.ndarray, np.ndarray]) -> None:
    x, y = random_pairs
    mean = get_mean(mean_id)
    values = mean(x, y)
    assert np.all(np.minimum(x, y) <= values) and np.all(values <= np.maximum(x, y)), "mean must lie in [min, max]"
    assert np.array_equal(values, mean(y, x)), "mean must be symmetric"
    for scale in (1e-6, 1e6):
        np.testing.assert_allclose(mean(scale * x, scale * y), scale * values, rtol=1e-12)


@pytest.mark.parametrize("mean_id", CATALOG_IDS)
@given(x=positive, y=positive)
def test_axioms_property(mean_id: str, x: float, y: float) -> None:
    mean = get_mean(mean_id)
    value = mean(x, y)
    assert min(x, y) <= value <= max(x, y)
    assert value == mean(y, x)
    assert mean(1e6 * x, 1e6 * y) == pytest.approx(1e6 * value, rel=1e-12)


@given(r=st.floats(min_value=-5.0, max_value=5.0), x=positive, y=positive)
def test_power_mean_property(r: float, x: float, y: float) -> None:
    value = power_mean(r, x, y)
    assert min(x, y) <= value <= max(x, y)
    assert value == power_mean(r, y, x)


def test_classical_ordering(random_pairs: tuple[np.ndarray, np.ndarray]) -> None:
    x, y = random_pairs
    chain = [get_mean(mean_id)(x, y) for mean_id in ("H", "G", "L", "P", "A", "NS", "T", "Q")]
    for lower, upper in zip(chain, chain[1:]):
        assert np.all(lower <= upper * (1 + 1e-14))


def test_scalars_stay_scalars() -> None:
    assert isinstance(eval_mean("NS", 1.0, 2.0), float)
    assert eval_mean("NS", np.array([1.0, 2.0]), 2.0).shape == (2,)


def test_catalog_is_read_only() -> None:
    with pytest.raises(TypeError):
        CATALOG["X"] = MeanDescriptor("X", "x", MeanKind.direct_formula, lambda lo, hi: lo)  # type: ignore[index]


@pytest.mark.parametrize(
    "mean_id, expected",
    [
        ("G", 1.0),
        ("He", 1e200 / 3.0),
        ("L", 1e200 / (400.0 * math.log(10.0))),
    ],
)
def test_extreme_ratio(mean_id: str, expected: float) -> None:
    # max/min is not representable as a double here
    assert eval_mean(mean_id, 1e-200, 1e200) == pytest.approx(expected, rel=1e-12)
    assert eval_mean(mean_id, 1e200, 1e-200) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("mean_id", CATALOG_IDS)
def test_extreme_ratio_stays_between_arguments(mean_id: str) -> None:
    value = eval_mean(mean_id, 1e-200, 1e200)
    assert 1e-200 <= value <= 1e200
