# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import json
import pathlib
from collections.abc import Sequence

import pytest

from kyfan_means.__main__ import main
from kyfan_means.config import KyFanConfig
from kyfan_means.consts import DEFAULT_GRID_ENV
from kyfan_means.grid import GridSpec
from kyfan_means.means import get_mean
from kyfan_means.runner import Command, RunConfig, export_ratio_surface, run

SMALL = ["--nx", "40", "--ny", "40"]


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: pathlib.Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr("kyfan_means.config.config_locations", lambda: (tmp_path / "absent" / "kyfan.toml",))
    monkeypatch.delenv(DEFAULT_GRID_ENV, raising=False)


def invoke(args: Sequence[str], capsys: pytest.CaptureFixture[str]) -> tuple[int, str, str]:
    with pytest.raises(SystemExit) as exc_info:
        main(list(args))
    captured = capsys.readouterr()
    return int(exc_info.value.code or 0), captured.out, captured.err


def test_eval(capsys: pytest.CaptureFixture[str]) -> None:
    assert invoke(["eval", "A", "0.1", "0.4"], capsys) == (0, "0.25\n", "")
    status, out, _ = invoke(["eval", "Ar(1/3)", "1", "8"], capsys)
    assert status == 0
    assert float(out) == pytest.approx(3.375, rel=1e-14)


def test_eval_json(capsys: pytest.CaptureFixture[str]) -> None:
    status, out, _ = invoke(["eval", "G", "4", "9", "--format", "json"], capsys)
    assert status == 0
    assert json.loads(out) == [{"mean": "G", "x": 4.0, "y": 9.0, "value": 6.0}]


@pytest.mark.parametrize(
    "args",
    [
        ["eval", "B", "1", "2"],
        ["eval", "A", "0", "2"],
        ["check", "bogus", "A", "G"],
        ["check", "ratio", "A"],
        ["chain", "ns2004"],
        ["surface", "G", "A"],
        ["chain", "ns2003", "--tol", "0"],
        ["chain", "ns2003", "--format", "xml"],
        ["chain", "ns2003", "--nx", "2.5"],
        ["chain", "ns2003", "--nx", "abc"],
        ["chain", "ns2003", "--tol", "x"],
        ["eval", "A", "abc", "0.4"],
        ["seiffert", "sin", "--z", "abc"],
        ["series", "--n_max", "abc"],
    ],
)
def test_usage_errors_exit_2(args: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    status, out, err = invoke(args, capsys)
    assert status == 2
    assert err


def test_chain_json(capsys: pytest.CaptureFixture[str]) -> None:
    status, out, _ = invoke(["chain", "ns2003", "--format", "json", *SMALL], capsys)
    assert status == 0
    reports = json.loads(out)
    assert len(reports) == 5
    assert all(report["verdict"] == "pass" for report in reports)
    assert list(reports[0]) == [
        "relation",
        "means",
        "grid",
        "verdict",
        "worst_margin",
        "worst_point",
        "samples",
        "first_violation",
        "inconclusive",
    ]
    assert reports[0]["samples"] == 1600


def test_failing_check_exits_1(capsys: pytest.CaptureFixture[str]) -> None:
    status, out, _ = invoke(["check", "ratio", "A", "G", *SMALL], capsys)
    assert status == 1
    assert out.startswith("[fail]")
    assert "first violation at" in out


@pytest.mark.parametrize(
    "args",
    [
        ["check", "harmonic", "A", "P"],
        ["check", "ratio-monotone", "arctan", "q"],
        ["check", "ratio-monotone", "T", "Q"],
        ["check", "q-increasing", "He", "Ar(2/3)"],
        ["check", "diff-decreasing", "tanh", "arctan"],
        ["check", "g-decreasing", "A", "Ssinh"],
        ["check", "roundtrip", "NS"],
        ["check", "sandwich", "tan"],
        ["check", "derivative", "artanh-tan"],
        ["seiffert", "NS"],
        ["series", "--n_max", "8", "--oracle"],
        ["note-demo"],
    ],
)
def test_passing_commands_exit_0(args: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    status, out, _ = invoke([*args, *SMALL], capsys)
    assert status == 0, out
    assert out


def test_seiffert_value(capsys: pytest.CaptureFixture[str]) -> None:
    assert invoke(["seiffert", "sin", "--z", "0.5"], capsys) == (0, "0.479425538604203\n", "")


def test_note_demo_shows_witness(capsys: pytest.CaptureFixture[str]) -> None:
    _, out, _ = invoke(["note-demo"], capsys)
    assert "witness: f(" in out
    assert "[pass]" in out and "[fail]" in out


def test_catalog_csv(capsys: pytest.CaptureFixture[str]) -> None:
    status, out, _ = invoke(["catalog", "--format", "csv"], capsys)
    lines = out.splitlines()
    assert status == 0
    assert lines[0] == "id,name,kind"
    assert len(lines) == 15
    assert lines[7] == "NS,Neuman-Sándor mean,seiffert-generated"
    assert lines[-1] == "Ar(r),power mean of order r,direct-formula"


.mark.parametrize("output_format", ["text", "json", "csv"])
def test_catalog_lists_power_means_in_every_format(output_format: str) -> None:
    assert "Ar(r)" in run(RunConfig(Command.catalog, output_format=output_format)).text


def test_output_is_reproducible(capsys: pytest.CaptureFixture[str]) -> None:
    first = invoke(["chain", "harmonic-lower", "--format", "csv", *SMALL], capsys)
    second = invoke(["chain", "harmonic-lower", "--format", "csv", "--workers", "4", *SMALL], capsys)
    assert first == second


def test_out_file(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "chain.json"
    status, out, _ = invoke(["chain", "harmonic-upper", "--format", "json", "--out", str(path), *SMALL], capsys)
    assert (status, out) == (0, "")
    data = path.read_bytes()
    assert b"\r\n" not in data
    assert len(json.loads(data.decode("utf-8"))) == 4


def test_out_file_error_exits_3(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "missing" / "chain.json"
    status, _, err = invoke(["chain", "ns2003", "--out", str(path), *SMALL], capsys)
    assert status == 3
    assert "Couldn't write" in err


def test_surface(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "surface.csv"
    status, out, _ = invoke(["surface", "G", "A", "--nx", "5", "--ny", "4", "--out", str(path)], capsys)
    assert status == 0
    assert out == f"Wrote 20 rows to {path}\n"
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,y,lhs,rhs,margin"
    assert len(lines) == 21
    rows = [[float(cell) for cell in line.split(",")] for line in lines[1:]]
    assert all(row[4] >= 0 for row in rows)
    assert rows[0][:2] == [1e-3, 1e-3]
    assert rows[1][0] == 1e-3, "x is the slow index"


def test_surface_of_a_mean_with_itself(tmp_path: pathlib.Path) -> None:
    path = tmp_path / "same.csv"
    mean = get_mean("NS")
    count = export_ratio_surface(mean, mean, GridSpec.square(1e-3, 0.5, 6), path, "harmonic")
    assert count == 36
    margins = [float(line.split(",")[4]) for line in path.read_text().splitlines()[1:]]
    assert margins == [0.0] * 36


def test_surface_write_error_exits_3(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "missing" / "surface.csv"
    status, _, _ = invoke(["surface", "G", "A", "--nx", "5", "--ny", "5", "--out", str(path)], capsys)
    assert status == 3


def test_soundness(capsys: pytest.CaptureFixture[str]) -> None:
    status, out, _ = invoke(["soundness", "--format", "json", *SMALL], capsys)
    assert status == 0
    records = json.loads(out)
    assert len(records) == 50
    assert all(record["sound"] and record["forms_agree"] for record in records)


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    status, out, _ = invoke(["--version"], capsys)
    assert status == 0
    assert out.startswith("kyfan version: ")


def test_config_show(capsys: pytest.CaptureFixture[str]) -> None:
    main(["config", "show"])
    assert "nx = 400" in capsys.readouterr().out


def test_env_grid_counts(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setenv(DEFAULT_GRID_ENV, "12x15")
    status, out, _ = invoke(["chain", "ns2003", "--format", "json"], capsys)
    assert status == 0
    assert json.loads(out)[0]["samples"] == 180


def test_run_overrides_settings() -> None:
    base = KyFanConfig(nx=10, ny=10)
    result = run(RunConfig(Command.check, ("ratio", "G", "A"), nx=20, output_format="json"), base)
    assert result.status == 0
    assert json.loads(result.text)[0]["samples"] == 200


def test_roundtrip_follows_grid_settings() -> None:
    result = run(RunConfig(Command.check, ("roundtrip", "NS"), nx=6, ny=6, tolerance=1e-9, output_format="json"))
    report = json.loads(result.text)[0]
    assert result.status == 0
    assert report["samples"] == 30, "diagonal points are excluded"
    assert report["grid"]["nx"] == 6
