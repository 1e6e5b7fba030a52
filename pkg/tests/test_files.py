import pytest

from teamtl.files import (
    FileFormatError,
    dumps_kripke,
    dumps_team,
    loads_kripke,
    loads_team,
)
from teamtl.fixtures import ef_counterexample_structure, union_closure_team


def test_team_round_trip():
    team = union_closure_team()
    assert loads_team(dumps_team(team)) == team


def test_kripke_round_trip():
    k = ef_counterexample_structure()
    k2 = loads_kripke(dumps_kripke(k))
    assert set(k2.worlds) == set(k.worlds)
    assert k2.edges == k.edges
    assert all(k2.label(w) == k.label(w) for w in k.worlds)
    assert k2.initial == k.initial


def test_comments_are_stripped():
    text = '# a team\n{"traces": [{"prefix": [], "loop": [["p"]]}]}'
    assert len(loads_team(text)) == 1


def test_malformed_inputs():
    with pytest.raises(FileFormatError):
        loads_team("{not json")
    with pytest.raises(FileFormatError):
        loads_team('{"traces": [{"prefix": []}]}')
    with pytest.raises(FileFormatError):
        loads_team('{"traces": [{"prefix": [], "loop": []}]}')
    with pytest.raises(FileFormatError):
        loads_kripke('{"worlds": ["a"]}')
