# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import dataclasses
import functools
import io
import math
import os
import os.path
import pathlib
import tomllib
import typing

from kyfan_means.common import KyFanException
from kyfan_means.consts import (
    CHECK_TOLERANCE,
    DEFAULT_GRID_ENV,
    DERIVATIVE_STEP,
    DERIVATIVE_THRESHOLD,
    INTERVAL_MARGIN,
    INTERVAL_POINTS,
    KYFAN_LOWER,
    KYFAN_POINTS,
    KYFAN_UPPER,
    PROG_NAME,
    S_MAX,
    SETTINGS_FILE_NAME,
)

OUTPUT_FORMATS = frozenset(["text", "json", "csv"])
INTEGER_SETTINGS = ("nx", "ny", "interval_points", "workers")
REAL_SETTINGS = ("lower", "upper", "interval_margin", "s_max", "tolerance", "derivative_step", "derivative_threshold")


@functools.cache
def get_xdg_config_dir() -> pathlib.Path:
    return pathlib.Path(os.environ.get("XDG_CONFIG_HOME", pathlib.Path.home() / ".config"))


@functools.cache
def config_locations() -> typing.Sequence[pathlib.Path]:
    return (
        get_xdg_config_dir() / PROG_NAME / SETTINGS_FILE_NAME,
        pathlib.Path.home() / SETTINGS_FILE_NAME,
        pathlib.Path("/etc/") / PROG_NAME / SETTINGS_FILE_NAME,
    )


def default_config_not_found_description() -> str:
    with io.StringIO() as si:
        si.write("Couldn't find config file. ")
        si.write("Create the file in one of the following locations:\n")
        si.write("\n".join(f"・ {location}" for location in config_locations()))
        return si.getvalue()


@dataclasses.dataclass(frozen=True)
class ConfigFileNotFoundError(KyFanException, FileNotFoundError):
    what: str = default_config_not_found_description()


@dataclasses.dataclass(frozen=True)
class ConfigFileInvalidError(KyFanException, ValueError):
    what: str


def as_toml_str(d: dict[str, typing.Any]) -> str:
    with io.StringIO() as si:
        for key, value in d.items():
            match value:
                case None:
                    si.write(f'{key} = ""\n')
                case bool():
                    si.write(f"{key} = {str(value).lower()}\n")
                case str() | pathlib.Path():
                    si.write(f'{key} = "{value}"\n')
                case int():
                    si.write(f"{key} = {value}\n")
                case float():
                    si.write(f"{key} = {value!r}\n")
                case dict():
                    si.write(f"[{key}]\n")
                    si.write(as_toml_str(value))
                case _:
                    raise RuntimeError(f"Unknown value type {type(value)}")
        return si.getvalue()


def parse_grid_counts(value: str) -> tuple[int, int]:
    """
    Parse "N" or "NxM" into (nx, ny).
    """
    try:
        parts = [int(part) for part in value.lower().replace("×", "x").split("x")]
    except ValueError as ex:
        raise ConfigFileInvalidError(f"{DEFAULT_GRID_ENV} must look like 'N' or 'NxM', got {value!r}") from ex
    match parts:
        case [n]:
            return n, n
        case [nx, ny]:
            return nx, ny
        case _:
            raise ConfigFileInvalidError(f"{DEFAULT_GRID_ENV} must look like 'N' or 'NxM', got {value!r}")


@dataclasses.dataclass(frozen=True)
class KyFanConfig:
    nx: int = KYFAN_POINTS
    ny: int = KYFAN_POINTS
    lower: float = KYFAN_LOWER  # Ky Fan box is [lower, upper]^2
    upper: float = KYFAN_UPPER
    interval_points: int = INTERVAL_POINTS
    interval_margin: float = INTERVAL_MARGIN  # 1-D grids cover [margin, 1 - margin]
    s_max: float = S_MAX
    tolerance: float = CHECK_TOLERANCE
    derivative_step: float = DERIVATIVE_STEP
    derivative_threshold: float = DERIVATIVE_THRESHOLD
    workers: int = 1
    output_format: str = "text"

    @classmethod
    def from_file(cls, file: typing.BinaryIO) -> typing.Self:
        try:
            instance = cls(**tomllib.load(file))
        except (TypeError, tomllib.TOMLDecodeError) as ex:
            raise ConfigFileInvalidError(f"Config file is malformed: {ex}") from ex
        return instance.with_env_overrides()

    def with_env_overrides(self) -> typing.Self:
        instance = self
        if grid := os.getenv(DEFAULT_GRID_ENV):
            nx, ny = parse_grid_counts(grid)
            instance = dataclasses.replace(instance, nx=nx, ny=ny)
        instance.raise_for_values()
        return instance

    def raise_for_types(self) -> None:
        for name in INTEGER_SETTINGS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigFileInvalidError(f"{name} must be an integer, got {value!r}.")
        for name in REAL_SETTINGS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigFileInvalidError(f"{name} must be a finite number, got {value!r}.")
        if not isinstance(self.output_format, str):
            raise ConfigFileInvalidError(f"output_format must be a string, got {self.output_format!r}.")

    def raise_for_values(self) -> None:
        self.raise_for_types()
        if min(self.nx, self.ny, self.interval_points) < 2:
            raise ConfigFileInvalidError("Grid point counts must be at least 2.")
        if not 0 < self.lower < self.upper <= 0.5:
            raise ConfigFileInvalidError("Ky Fan bounds must satisfy 0 < lower < upper <= 1/2.")
        if not 0 < self.interval_margin < 0.5:
            raise ConfigFileInvalidError("interval_margin must lie in (0, 1/2).")
        if self.s_max <= 1:
            raise ConfigFileInvalidError("s_max must be greater than 1.")
        if self.tolerance <= 0:
            raise ConfigFileInvalidError("tolerance must be positive.")
        if self.derivative_step <= 0 or self.derivative_threshold < 0:
            raise ConfigFileInvalidError("derivative_step must be positive and derivative_threshold non-negative.")
        if self.workers < 1:
            raise ConfigFileInvalidError("workers must be at least 1.")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigFileInvalidError(f"output_format must be one of {sorted(OUTPUT_FORMATS)}.")

    def as_toml_str(self) -> str:
        return as_toml_str(dataclasses.asdict(self))


class ReadConfigResult(typing.NamedTuple):
    data: KyFanConfig
    file_path: pathlib.Path | None


@functools.cache
def read_config_file(config_file_path: pathlib.Path) -> ReadConfigResult:
    try:
        with open(config_file_path, "rb") as f:
            return ReadConfigResult(KyFanConfig.from_file(f), pathlib.Path(config_file_path))
    except FileNotFoundError as ex:
        raise ConfigFileNotFoundError() from ex


def get_config(config_file_path: pathlib.Path | str | None = None) -> ReadConfigResult:
    """
    Read the settings file. Without an explicit path, fall back to defaults when no file exists.
    """
    if config_file_path:
        return read_config_file(pathlib.Path(config_file_path).expanduser())
    for config_file_path in config_locations():
        try:
            return read_config_file(config_file_path)
        except ConfigFileNotFoundError:
            continue
    return ReadConfigResult(KyFanConfig().with_env_overrides(), None)


class Config:
    """
    Proxy to get access to the config.
    """

    def __init__(self, config_path: str | None):
        self._config_path = config_path

    def load(self) -> ReadConfigResult:
        return get_config(self._config_path)

    def data(self) -> KyFanConfig:
        return self.load().data

    def file_path(self) -> pathlib.Path:
        if (path := self.load().file_path) is None:
            raise ConfigFileNotFoundError()
        return path

    def default_file_path(self) -> pathlib.Path:
        return pathlib.Path(self._config_path or config_locations()[0])

    def create_config_file(self) -> pathlib.Path:
        config_file_path = self.default_file_path()
        if config_file_path.is_file():
            raise RuntimeError(f"File already exists: {config_file_path}")
        config_file_path.parent.mkdir(exist_ok=True, parents=True)
        config_file_path.write_text(KyFanConfig().as_toml_str(), encoding="utf-8")
        return config_file_path


def main():
    from pprint import pprint

    pprint(KyFanConfig(), indent=2)


if __name__ == "__main__":
    main()
