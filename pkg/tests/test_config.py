# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import io
import pathlib
import tomllib

import pytest

from kyfan_means.config import (
    Config,
    ConfigFileInvalidError,
    ConfigFileNotFoundError,
    KyFanConfig,
    get_config,
    parse_grid_counts,
)
from kyfan_means.consts import DEFAULT_GRID_ENV


def load(text: str) -> KyFanConfig:
    return KyFanConfig.from_file(io.BytesIO(text.encode()))


@pytest.fixture(autouse=True)
def no_grid_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(DEFAULT_GRID_ENV, raising=False)


def test_defaults() -> None:
    config = KyFanConfig()
    assert (config.nx, config.ny, config.lower, config.upper) == (400, 400, 1e-3, 0.5)
    assert config.tolerance == 1e-12
    assert config.output_format == "text"


def test_from_file() -> None:
    config = load('nx = 50\ntolerance = 1e-10\noutput_format = "json"\n')
    assert config.nx == 50
    assert config.ny == 400
    assert config.tolerance == 1e-10
    assert config.output_format == "json"


@pytest.mark.parametrize(
    "text",
    [
        "unknown_key = 1\n",
        "nx = \n",
        "nx = 1\n",
        "tolerance = 0.0\n",
        "upper = 0.75\n",
        "lower = 0.3\nupper = 0.2\n",
        'output_format = "xml"\n',
        "workers = 0\n",
        "s_max = 1.0\n",
        "nx = 2.5\n",
        "workers = true\n",
        'tolerance = "x"\n',
        "tolerance = nan\n",
        "output_format = 1\n",
    ],
)
def test_invalid_files(text: str) -> None:
    with pytest.raises(ConfigFileInvalidError):
        load(text)


def test_toml_output_is_loadable() -> None:
    config = KyFanConfig(nx=12, tolerance=1e-9, output_format="csv")
    assert load(config.as_toml_str()) == config
    assert tomllib.loads(config.as_toml_str())["lower"] == 1e-3


@pytest.mark.parametrize("value, expected", [("50", (50, 50)), ("20x30", (20, 30)), ("7X9", (7, 9))])
def test_parse_grid_counts(value: str, expected: tuple[int, int]) -> None:
    assert parse_grid_counts(value) == expected


@pytest.mark.parametrize("value", ["", "x", "10x", "1x2x3", "ten"])
def test_parse_grid_counts_rejects(value: str) -> None:
    with pytest.raises(ConfigFileInvalidError):
        parse_grid_counts(value)


def test_env_override(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(DEFAULT_GRID_ENV, "30x40")
    config = KyFanConfig().with_env_overrides()
    assert (config.nx, config.ny) == (30, 40)
    monkeypatch.setenv(DEFAULT_GRID_ENV, "1")
    with pytest.raises(ConfigFileInvalidError):
        KyFanConfig().with_env_overrides()


def test_explicit_path_must_exist(tmp_path: pathlib.Path) -> None:
    with pytest.raises(ConfigFileNotFoundError):
        get_config(tmp_path / "missing.toml")
    with pytest.raises(ConfigFileNotFoundError):
        Config(str(tmp_path / "missing.toml")).file_path()


def test_create_and_read(tmp_path: pathlib.Path) -> None:
    path = tmp_path / "nested" / "kyfan.toml"
    config = Config(str(path))
    assert config.create_config_file() == path
    assert config.file_path() == path
    assert config.data() == KyFanConfig()
    with pytest.raises(RuntimeError):
        config.create_config_file()


def test_defaults_without_file(tmp_path: pathlib.Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr("kyfan_means.config.config_locations", lambda: (tmp_path / "none.toml",))
    result = get_config()
    assert result.file_path is None
    assert result.data == KyFanConfig()
    with pytest.raises(ConfigFileNotFoundError):
        Config(None).file_path()
