# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import pytest

from kyfan_means.common import MeanDomainError
from kyfan_means.grid import IntervalGrid
from kyfan_means.means import get_mean
from kyfan_means.report import Verdict
from kyfan_means.seiffert import get_seiffert
from kyfan_means.verify.hypotheses import (
    check_diff_decreasing,
    check_g_decreasing,
    check_q_increasing,
    check_ratio_monotone,
    default_g_grid,
)


@pytest.mark.parametrize(
    "m_id, n_id",
    [("arctan", "q"), ("id", "id"), ("sinh", "id"), ("arcsin", "id"), ("id", "arsinh"), ("artanh", "tan")],
)
def test_ratio_monotone_passes(m_id: str, n_id: str) -> None:
    report = check_ratio_monotone(get_seiffert(m_id), get_seiffert(n_id))
    assert report.verdict == Verdict.passed, str(report)
    assert report.samples == 3999, "one margin per consecutive pair"


def test_ratio_monotone_reversed_fails() -> None:
    report = check_ratio_monotone(get_seiffert("id"), get_seiffert("sinh"))
    assert report.verdict == Verdict.failed
    z1, z2 = report.first_violation
    assert z1 < z2


@pytest.mark.parametrize("m_id, n_id", [("He", "Ar(2/3)"), ("Ar(1/2)", "Ar(1)"), ("Ar(1/2)", "He"), ("L", "Ar(1/3)")])
def test_q_increasing_passes(m_id: str, n_id: str) -> None:
    assert check_q_increasing(get_mean(m_id), get_mean(n_id)).passed


def test_q_increasing_reversed_fails() -> None:
    report = check_q_increasing(get_mean("Ar(2/3)"), get_mean("He"))
    assert report.verdict == Verdict.failed
    assert report.worst_point is not None


def test_diff_decreasing() -> None:
    tanh, arctan = get_seiffert("tanh"), get_seiffert("arctan")
    identity, arsinh = get_seiffert("id"), get_seiffert("arsinh")
    assert check_diff_decreasing(tanh, arctan).passed
    assert check_diff_decreasing(identity, arsinh).verdict == Verdict.failed
    assert check_diff_decreasing(arsinh, identity).passed
    same = check_diff_decreasing(arctan, arctan)
    assert same.passed
    assert same.worst_margin == 0.0


def test_g_decreasing() -> None:
    a, ssinh = get_mean("A"), get_mean("Ssinh")
    assert check_g_decreasing(a, ssinh).passed
    assert check_g_decreasing(ssinh, a).verdict == Verdict.failed
    same = check_g_decreasing(ssinh, ssinh)
    assert same.passed
    assert same.worst_margin == 0.0


def test_default_g_grid() -> None:
    grid = default_g_grid()
    assert grid.lo > 1.0
    assert grid.hi == 100.0


def test_grids_outside_domain() -> None:
    sin, identity = get_seiffert("sin"), get_seiffert("id")
    a, g = get_mean("A"), get_mean("G")
    with pytest.raises(MeanDomainError):
        check_ratio_monotone(sin, identity, IntervalGrid(0.5, 1.0, 10))
    with pytest.raises(MeanDomainError):
        check_diff_decreasing(sin, identity, IntervalGrid(0.0, 0.5, 10))
    with pytest.raises(MeanDomainError):
        check_q_increasing(a, g, IntervalGrid(0.5, 2.0, 10))
    with pytest.raises(MeanDomainError):
        check_g_decreasing(a, g, IntervalGrid(1.0, 2.0, 10))
    with pytest.raises(MeanDomainError):
        check_g_decreasing(a, g, IntervalGrid(2.0, 200.0, 10))
    assert check_g_decreasing(a, g, IntervalGrid(2.0, 200.0, 10), s_max=200.0).samples == 9
