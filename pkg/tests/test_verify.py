import os
import sys
from unittest.mock import patch

import pytest

# Add the source directory to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), "..", "src"))

from treeenergy.config import Config
from treeenergy.events import (
    CaseCompletedEvent,
    CompletionEvent,
    ErrorEvent,
    EventType,
    SuiteProgressEvent,
    SuiteStartedEvent,
)
from treeenergy.models import Verdict, Winner
from treeenergy.trees import EnumerationCapError, FamilyParams, FamilyParamsError, build_Ta, build_Tc
from treeenergy.verify import (
    SUITE_NAMES,
    CaseOutcome,
    SuiteCase,
    UnknownSuiteError,
    _verdict_case,
    expected_extremal_tree,
    expected_winner,
    run_suite,
    run_suite_stream,
    verify_theorem_1_1,
)


def _drain(stream):
    """Collect every event and the generator's return value."""
    events = []
    while True:
        try:
            events.append(next(stream))
        except StopIteration as e:
            return events, e.value


def _explode():
    raise RuntimeError("kaboom")


def _fake_cases(config, workers, max_order):
    yield SuiteCase("good", lambda: CaseOutcome.holds(True))
    yield SuiteCase("bad", lambda: CaseOutcome(False, 1, 2))
    yield SuiteCase("boom", _explode)


def _broken_cases(config, workers, max_order):
    raise RuntimeError("cannot build cases")


class TestExpectedWinner:
    """Test the reference verdict table."""

    @pytest.mark.parametrize(
        "delta,t,winner",
        [
            (3, 3, Winner.TA),
            (3, 100, Winner.TA),
            (4, 4, Winner.TB),
            (4, 3, Winner.TA),
            (4, 60, Winner.TA),
            (5, 89, Winner.TA),
            (5, 91, Winner.TB),
            (5, 10, Winner.TB),
            (6, 7, Winner.TA),
            (6, 4, Winner.TB),
            (6, 9, Winner.TB),
            (7, 3, Winner.TB),
            (42, 17, Winner.TB),
        ],
    )
    def test_table(self, delta, t, winner):
        """Winners case by case in delta."""
        assert expected_winner(delta, t) is winner

    def test_domain(self):
        """Outside delta, t >= 3 there is no verdict."""
        with pytest.raises(FamilyParamsError):
            expected_winner(3, 2)


class TestExtremalTree:
    """Test the expected energy-maximal tree and the brute-force check."""

    def test_tc_range(self):
        """Up to n = 4*delta - 2 the answer is T_c."""
        label, tree = expected_extremal_tree(10, 3)
        assert label == "Tc"
        assert tree.is_isomorphic(build_Tc(3, 10))

    def test_family_range(self):
        """From n = 4*delta - 1 on the answer is the verdict winner."""
        label, tree = expected_extremal_tree(11, 3)
        assert label == "Ta"
        assert tree.is_isomorphic(build_Ta(FamilyParams(3, 3)))

    @pytest.mark.parametrize("n", [6, 7, 9, 10, 11])
    def test_brute_force_delta3(self, n):
        """Exhaustive search agrees with the expected extremal tree."""
        report = verify_theorem_1_1(n, 3)
        assert report.passed
        assert report.cases_run == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("n,delta", [(14, 3), (14, 4), (15, 4), (16, 4)])
    def test_brute_force_large(self, n, delta):
        """Exhaustive search at the top of the enumeration range."""
        assert verify_theorem_1_1(n, delta).passed

    def test_enumeration_cap_recorded(self):
        """An order past the hard cap is a recorded failure, not a crash."""
        report = verify_theorem_1_1(20, 3)
        assert not report.passed
        assert report.failures[0].case_id == "theorem11:20:3"
        assert "EnumerationCapError" in report.failures[0].got


class TestSuiteStream:
    """Test suite event streaming and failure capture."""

    def test_unknown_suite(self):
        """Unknown names are rejected before any event."""
        with pytest.raises(UnknownSuiteError):
            run_suite_stream("nope")

    def test_order_above_hard_cap(self):
        """max_order beyond the hard cap is rejected up front."""
        with pytest.raises(EnumerationCapError):
            run_suite_stream("theorem11", max_order=17)

    def test_event_sequence(self):
        """Started, one event per case, progress, completion; failures carry their details."""
        with patch.dict("treeenergy.verify._CASE_BUILDERS", {"identities": _fake_cases}):
            events, report = _drain(run_suite_stream("identities"))

        assert isinstance(events[0], SuiteStartedEvent)
        assert events[0].data["total_cases"] == 3
        cases = [e for e in events if isinstance(e, CaseCompletedEvent)]
        assert [e.data["case_id"] for e in cases] == ["good", "bad", "boom"]
        assert [e.data["passed"] for e in cases] == [True, False, False]
        assert cases[1].data["expected"] == "1"
        assert cases[1].data["got"] == "2"
        assert isinstance(events[-2], SuiteProgressEvent)
        assert events[-2].data["progress_percentage"] == 100.0
        assert isinstance(events[-1], CompletionEvent)
        assert events[-1].data["passed"] is False

        assert report.cases_run == 3
        assert [f.case_id for f in report.failures] == ["bad", "boom"]
        assert report.failures[1].got == "RuntimeError: kaboom"

    def test_builder_failure_yields_error_event(self):
        """A suite that cannot even list its cases ends with an ErrorEvent."""
        with patch.dict("treeenergy.verify._CASE_BUILDERS", {"lemmas": _broken_cases}):
            events, report = _drain(run_suite_stream("lemmas"))

        assert len(events) == 1
        assert isinstance(events[0], ErrorEvent)
        assert events[0].type == EventType.ERROR
        assert events[0].data["error_type"] == "RuntimeError"
        assert report.cases_run == 0

    def test_run_suite_returns_report(self):
        """run_suite drains the stream."""
        with patch.dict("treeenergy.verify._CASE_BUILDERS", {"identities": _fake_cases}):
            report = run_suite("identities")
        assert not report.passed
        assert report.to_dict()["cases_run"] == 3

    def test_small_theorem11_suite(self):
        """n = 6 and 7 give one delta each."""
        report = run_suite("theorem11", max_order=7)
        assert report.cases_run == 2
        assert report.passed


@pytest.mark.slow
class TestFullSuites:
    """Run every suite end to end."""

    @pytest.mark.parametrize("name", [name for name in SUITE_NAMES if name != "verdict-grid"])
    def test_suite_passes(self, name):
        """Each suite passes with the default configuration."""
        report = run_suite(name, Config(), workers=2)
        assert report.passed, report.failures[:5]

    def test_verdict_grid(self):
        """The full verdict grid, including the delta = 5 switch at t = 89/91."""
        report = run_suite("verdict-grid", workers=4)
        assert report.passed, report.failures[:5]


class TestVerdictCase:
    """Test how one verdict-grid cell is judged."""

    def test_unresolved_cross_check_becomes_note(self):
        """A correct verdict passes; its unresolved direct checks travel as a report note."""
        verdict = Verdict(3, 5, Winner.TA, 0.1, 1e-12, True, ("eigen",))
        outcome = _verdict_case(3, 5, (5,), lambda delta, ts: {5: verdict})
        assert outcome.ok
        assert "delta=3 t=5" in outcome.note
        assert "eigen" in outcome.note

    def test_error_string_fails(self):
        """A cell that raised is a failure carrying the error text."""
        outcome = _verdict_case(3, 5, (5,), lambda delta, ts: {5: "CrossCheckError: boom"})
        assert not outcome.ok
        assert outcome.got == "CrossCheckError: boom"
