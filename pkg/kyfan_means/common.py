# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import abc
import dataclasses
import math
import typing

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]
RealLike = typing.Union[float, FloatArray]


class KyFanException(Exception, abc.ABC):
    exit_code: typing.ClassVar[int] = 2

    @property
    @abc.abstractmethod
    def what(self) -> str:
        raise NotImplementedError()

    def __str__(self) -> str:
        return self.what


@dataclasses.dataclass(frozen=True)
class MeanDomainError(KyFanException, ValueError):
    what: str


@dataclasses.dataclass(frozen=True)
class UnknownMeanError(KyFanException, KeyError):
    mean_id: str

    @property
    def what(self) -> str:
        return f"Unknown mean: {self.mean_id!r}. Run 'kyfan catalog' to list registered means."


@dataclasses.dataclass(frozen=True)
class UnknownSeiffertError(KyFanException, KeyError):
    seiffert_id: str

    @property
    def what(self) -> str:
        return f"Unknown Seiffert function: {self.seiffert_id!r}."


@dataclasses.dataclass(frozen=True)
class SandwichViolationError(KyFanException, ArithmeticError):
    """
    A mean produced a value outside [min(x,y), max(x,y)].
    """

    mean_id: str
    x: float
    y: float
    value: float

    @property
    def what(self) -> str:
        return f"mean {self.mean_id} left [min, max] at ({self.x!r}, {self.y!r}): got {self.value!r}"


def require_finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise MeanDomainError(f"{name} must be finite, got {value!r}")
    return float(value)


def as_float_array(value: typing.Any) -> FloatArray:
    return np.asarray(value, dtype=np.float64)


def unwrap_scalar(value: FloatArray, *likes: typing.Any) -> RealLike:
    """
    Return a Python float when the caller passed scalars.
    """
    if all(np.ndim(like) == 0 for like in likes):
        return float(value)
    return value
