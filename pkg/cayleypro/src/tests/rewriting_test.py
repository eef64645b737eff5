"""Implementation of tests for rewriting systems and suffix balls"""

# pylint: disable=redefined-outer-name
import pytest

from cayleypro import (MarkedSubgraph, RewritingSystem, BudgetExceededError, parse_rws, suffix_successors,
                       suffix_predecessors, ball_distances, suffix_ball, check_interior_stability, interior_flags,
                       ball_property_report)


def test_rws_from_text(rules):
    """test_rws_from_text"""
    assert len(rules) == 6
    assert rules.alphabet == ("0", "1", "a", "b")
    assert rules.labels == ("a", "b", "c")
    assert parse_rws(rules.to_text()).rules == rules.rules

def test_rws_empty_word(tmp_path):
    """test_rws_empty_word"""
    rws = RewritingSystem([("_", "a", "0"), ("0", "b", "")])
    assert rws.rules == (("0", "b", ""), ("", "a", "0"))
    path = str(tmp_path / "empty.rws")
    rws.dump(path)
    assert RewritingSystem.from_file(path).rules == rws.rules
    assert rws.to_text() == "0\tb\t_\n_\ta\t0\n"

@pytest.mark.parametrize('text', ["", "0\ta\n", "0\ta\ta0\textra\n"])
def test_rws_from_text_errors(text):
    """test_rws_from_text_errors"""
    with pytest.raises(ValueError, match="Malformed rewriting system"):
        RewritingSystem.from_text(text)

@pytest.mark.parametrize('rules, alphabet', [
    ([], None),
    ([("0_", "a", "0")], None),
    ([("0", "a", "1")], ["0"]),
    ([("0", "a", "0")], ["00"]),
])
def test_rws_errors(rules, alphabet):
    """test_rws_errors"""
    with pytest.raises(ValueError):
        RewritingSystem(rules, alphabet=alphabet)

def test_suffix_steps(rules):
    """test_suffix_steps"""
    assert suffix_successors(rules, "0") == [("a", "a0"), ("b", "b0"), ("c", "1")]
    assert suffix_successors(rules, "b1") == [("a", "ba1"), ("b", "bb1"), ("c", "b0")]
    assert suffix_predecessors(rules, "a0") == [("a", "0"), ("c", "a1")]
    assert suffix_predecessors(rules, "0") == [("c", "1")]
    assert suffix_successors(rules, "_") == []

def test_suffix_steps_unknown_letter(rules):
    """test_suffix_steps_unknown_letter"""
    with pytest.raises(ValueError):
        suffix_successors(rules, "x0")

def test_ball_distances(rules):
    """test_ball_distances"""
    assert ball_distances(rules, "0", 1) == {"0": 0, "a0": 1, "b0": 1, "1": 1}
    distances = ball_distances(rules, "0", 2)
    assert distances["a1"] == 2 and distances["aa0"] == 2
    with pytest.raises(ValueError):
        ball_distances(rules, "0", -1)

def test_ball_distances_cap(rules):
    """test_ball_distances_cap"""
    with pytest.raises(BudgetExceededError):
        ball_distances(rules, "0", 3, cap=3)

def test_suffix_ball(rules):
    """test_suffix_ball"""
    ball = suffix_ball(rules, "0", 1)
    expected = MarkedSubgraph([("0", "a", "a0"), ("0", "b", "b0"), ("0", "c", "1"), ("1", "c", "0")],
                              ["a0", "b0", "1"])
    assert ball == expected
    assert ball.sorted_marks == ("1", "a0", "b0")

def test_suffix_ball_radius_zero(rules):
    """test_suffix_ball_radius_zero"""
    ball = suffix_ball(rules, "0", 0)
    assert ball.is_empty
    assert ball.marks == {"0"}

    looped = suffix_ball(RewritingSystem([("0", "a", "0")]), "00", 0)
    assert looped.edges == {("00", "a", "00")}

def test_suffix_ball_finite_component(rules):
    """test_suffix_ball_finite_component"""
    ball = suffix_ball(rules, "_", 2)
    assert ball.is_empty
    assert ball.marks == {"_"}

    cycle = suffix_ball(RewritingSystem([("0", "c", "1"), ("1", "c", "0")]), "0", 5)
    assert cycle.edges == {("0", "c", "1"), ("1", "c", "0")}
    assert cycle.marks == {"0"}

@pytest.mark.parametrize('start', ["0", "1", "ab1"])
@pytest.mark.parametrize('radius', range(7))
def test_interior_stability(rules, start, radius):
    """test_interior_stability"""
    assert check_interior_stability(rules, start, radius)

def test_interior_flags(rules):
    """test_interior_flags"""
    flags = interior_flags(rules, "0", 2)
    assert flags == {"simple": True, "deterministic": True, "coDeterministic": True, "sourceComplete": True,
                     "targetComplete": False}

def test_interior_flags_no_interior(rules):
    """test_interior_flags_no_interior"""
    assert all(interior_flags(rules, "0", 0).values())

def test_ball_property_report(rules):
    """test_ball_property_report"""
    ball = suffix_ball(rules, "0", 1)
    with pytest.warns(RuntimeWarning):
        report = ball_property_report(ball)
    assert report["deterministic"] and report["simple"]
    assert not report["sourceComplete"]

def test_ball_property_report_empty(rules):
    """test_ball_property_report_empty"""
    with pytest.raises(ValueError):
        ball_property_report(suffix_ball(rules, "0", 0))
