import pytest

from teamtl.errors import LassoForestViolation
from teamtl.kripke import (
    KripkeStructure,
    MultiTeam,
    enumerate_traces,
    is_successor_team,
    successor_sets_step,
    successor_teams,
    validate,
)
from teamtl.qbf import assignment_structure
from teamtl.trace import LassoTrace


def chain(*worlds, loop_last=True):
    edges = list(zip(worlds, worlds[1:]))
    if loop_last:
        edges.append((worlds[-1], worlds[-1]))
    return KripkeStructure.of(worlds, edges, initial=worlds[0])


def test_validate_reports_problems():
    k = KripkeStructure.of(["a", "b"], [("a", "b")], {"c": ["p"]}, initial="d")
    problems = validate(k)
    assert any("no successor" in m for m in problems)  # b is not left-total
    assert any("undeclared world 'c'" in m for m in problems)
    assert any("initial world 'd'" in m for m in problems)
    assert validate(chain("a", "b")) == []


class TestSuccessorTeam:
    def test_simple_step(self):
        k = chain("a", "b")
        assert is_successor_team(k, MultiTeam.of(["a"]), MultiTeam.of(["b"]))
        assert not is_successor_team(k, MultiTeam.of(["a"]), MultiTeam.of(["a"]))

    def test_multiplicity_must_match(self):
        k = KripkeStructure.of(
            ["a", "x", "y"], [("a", "x"), ("a", "y"), ("x", "x"), ("y", "y")]
        )
        t1 = MultiTeam.of(["a", "a"])
        assert is_successor_team(k, t1, MultiTeam.of(["x", "y"]))
        assert is_successor_team(k, t1, MultiTeam.of(["x", "x"]))
        assert not is_successor_team(k, t1, MultiTeam.of(["x"]))
        assert not is_successor_team(k, t1, MultiTeam.of(["x", "x", "y"]))

    def test_per_position_feasibility_is_not_enough(self):
        """Every left member can reach some right world, every right world is
        reached, and the sizes match — yet no per-member assignment uses each
        right entry exactly once.  The matching test must reject this."""
        k = KripkeStructure.of(
            ["a", "b", "c", "x", "y"],
            [("a", "x"), ("b", "x"), ("c", "x"), ("c", "y"),
             ("x", "x"), ("y", "y")],
        )
        t1 = MultiTeam.of(["a", "b", "c"])
        t2 = MultiTeam.of(["x", "y", "y"])
        assert not is_successor_team(k, t1, t2)
        assert is_successor_team(k, t1, MultiTeam.of(["x", "x", "y"]))

    def test_indices_are_ignored(self):
        k = chain("a", "b")
        t2a = MultiTeam(((0, "b"), (1, "b")))
        t2b = MultiTeam(((7, "b"), (3, "b")))
        t1 = MultiTeam.of(["a", "a"])
        assert is_successor_team(k, t1, t2a) == is_successor_team(k, t1, t2b)

    def test_unknown_world_rejected(self):
        k = chain("a", "b")
        with pytest.raises(ValueError):
            is_successor_team(k, MultiTeam.of(["z"]), MultiTeam.of(["a"]))


def test_successor_teams_deduplicates():
    k = KripkeStructure.of(
        ["a", "x", "y"], [("a", "x"), ("a", "y"), ("x", "x"), ("y", "y")]
    )
    succ = successor_teams(k, MultiTeam.of(["a", "a"]))
    assert sorted(t.key() for t in succ) == [
        ("x", "x"), ("x", "y"), ("y", "y"),
    ]


def test_successor_sets_step():
    k = KripkeStructure.of(
        ["a", "x", "y"], [("a", "x"), ("a", "y"), ("x", "x"), ("y", "y")]
    )
    assert successor_sets_step(k, frozenset({"a"})) == {"x", "y"}
    assert successor_sets_step(k, frozenset({"x", "y"})) == {"x", "y"}


class TestEnumerateTraces:
    def test_single_chain(self):
        k = chain("a", "b")
        k = KripkeStructure.of(k.worlds, k.edges, {"b": ["p"]}, initial="a")
        team = enumerate_traces(k)
        assert set(team.traces) == {
            LassoTrace.of([[]], [["p"]]),
        }

    def test_branching_stem_is_fine(self):
        k = KripkeStructure.of(
            ["r", "a", "b"],
            [("r", "a"), ("r", "b"), ("a", "a"), ("b", "b")],
            {"a": ["p"]},
            initial="r",
        )
        assert len(enumerate_traces(k)) == 2

    def test_branching_on_cycle_rejected(self):
        k = KripkeStructure.of(
            ["a", "b"], [("a", "a"), ("a", "b"), ("b", "b")], initial="a"
        )
        with pytest.raises(LassoForestViolation):
            enumerate_traces(k)

    def test_unreachable_violations_are_ignored(self):
        k = KripkeStructure.of(
            ["a", "u"], [("a", "a"), ("u", "u"), ("u", "a")], initial="a"
        )
        assert len(enumerate_traces(k)) == 1

    def test_assignment_structure_yields_all_assignments(self):
        k = assignment_structure(["x", "y"])
        team = enumerate_traces(k)
        assert len(team) == 4

    def test_requires_initial_world(self):
        k = KripkeStructure.of(["a"], [("a", "a")])
        with pytest.raises(ValueError):
            enumerate_traces(k)
