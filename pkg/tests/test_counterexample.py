# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import numpy as np
import pytest

from kyfan_means.grid import GridSpec
from kyfan_means.report import Verdict
from kyfan_means.verify.counterexample import (
    NoteCounterexample,
    check_note_inequality,
    note_counterexample,
    note_function,
    sup_complement_ratio,
)
from kyfan_means.verify.diagnostics import RealFunction


@pytest.fixture(scope="module")
def demo() -> NoteCounterexample:
    return note_counterexample()


def test_function_shape() -> None:
    t = np.linspace(1e-3, 1 / 3 - 1e-3, 50)
    assert np.all(np.diff(note_function(t)) > 0), "increasing below 1/3"
    s = np.linspace(1 / 3, 1.0, 50)
    assert np.all(note_function(s) >= 1 / 3 - 1e-16), "never below the left limit at 1/3"
    assert note_function(2 / 3) == pytest.approx(1 / 3 + 1 / 9, rel=1e-15)
    assert note_function(1.0) == pytest.approx(1 / 3, rel=1e-15)


def test_inequality_holds(demo: NoteCounterexample) -> None:
    assert demo.inequality.verdict == Verdict.passed
    assert demo.inequality.worst_margin > 0
    assert demo.inequality.samples == 400 * 399 // 2, "only pairs with x < y"


def test_function_is_not_monotone(demo: NoteCounterexample) -> None:
    assert demo.monotonicity.verdict == Verdict.failed
    t1, t2 = demo.monotonicity.first_violation
    assert t1 < t2
    assert demo.function(t1) > demo.function(t2)
    assert t1 == pytest.approx(2 / 3, abs=1e-3), "the first decrease is right after the maximum"


def test_sup_complement_ratio() -> None:
    assert sup_complement_ratio() <= 1 / 3
    assert sup_complement_ratio(GridSpec.square(1e-6, 0.499999, 50)) == pytest.approx(1 / 3, abs=1e-5)


def test_monotone_function_also_satisfies_inequality() -> None:
    assert check_note_inequality(RealFunction("id", lambda t: t)).passed
    assert check_note_inequality(RealFunction("minus id", lambda t: -t)).verdict == Verdict.failed
