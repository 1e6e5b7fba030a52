import random

import pytest
from hypothesis import given, settings, strategies as st

from teamtl.errors import ResourceCapError
from teamtl.eval_classical import check_ltl_classical
from teamtl.eval_team_ltl import (
    SplitStrategy,
    check_team,
    eval_gen_atom,
    naive_oracle,
)
from teamtl.fixtures import union_closure_team
from teamtl.formula import (
    CNeg,
    GenAtomApp,
    Prop,
    Split,
    classify,
    dependence_atom,
    inclusion_atom,
)
from teamtl.parser import parse_ltl
from teamtl.selftest import random_ltl_formula, random_team, random_trace
from teamtl.trace import LassoTrace, TeamEncoding

p, q = Prop("p"), Prop("q")


def team_of(*specs):
    return TeamEncoding.of(LassoTrace.of(pre, loop) for pre, loop in specs)


class TestBasics:
    def test_union_closure_counterexample(self):
        team = union_closure_team()
        f_p = parse_ltl("F p")
        assert not check_team(team, f_p)
        for t in team:
            assert check_team(TeamEncoding.of([t]), f_p)

    def test_empty_team_satisfies_cneg_free_formulas(self):
        empty = TeamEncoding.of([])
        for text in ["p", "!p", "F p", "G p", "p U q", "dep(p; q)", "BOT"]:
            assert check_team(empty, parse_ltl(text))
        assert not check_team(empty, CNeg(parse_ltl("p")))

    def test_split_needs_synchronous_witnesses(self):
        # Each trace satisfies its own side of the splitjunction.
        team = team_of(([["p"]], [[]]), ([["q"]], [[]]))
        assert check_team(team, parse_ltl("p | q"))
        assert not check_team(team, parse_ltl("p & q | p & q"))

    def test_globally(self):
        team = team_of(([], [["p"]]), ([["p"]], [["p"], ["p", "q"]]))
        assert check_team(team, parse_ltl("G p"))
        assert not check_team(team, parse_ltl("G q"))

    def test_cneg_flips_team_verdict(self):
        team = union_closure_team()
        assert check_team(team, parse_ltl("~F p"))

    def test_boolor_needs_whole_team(self):
        team = team_of(([["p"]], [[]]), ([["q"]], [[]]))
        assert check_team(team, parse_ltl("p | q"))
        assert not check_team(team, parse_ltl("p \\|/ q"))


class TestGenAtoms:
    def test_dependence(self):
        # q constant wherever p is constant: rows (p,q) must be functional.
        functional = team_of(
            ([["p", "q"]], [[]]), ([[]], [[]]), ([["p", "q"]], [["p"]])
        )
        broken = team_of(([["p", "q"]], [[]]), ([["p"]], [[]]))
        dep = parse_ltl("dep(p; q)")
        assert check_team(functional, dep)
        assert not check_team(broken, dep)

    def test_constancy(self):
        assert check_team(team_of(([["p"]], [[]]), ([["p"]], [["q"]])),
                          parse_ltl("dep(p)"))
        assert not check_team(team_of(([["p"]], [[]]), ([[]], [[]])),
                              parse_ltl("dep(p)"))

    def test_inclusion_is_not_downward_closed(self):
        inc = parse_ltl("inc(p; q)")
        team = team_of(([["p"]], [[]]), ([["q"]], [[]]))
        assert check_team(team, inc)
        # Dropping the witness trace breaks the inclusion.
        smaller = team_of(([["p"]], [[]]),)
        assert not check_team(smaller, inc)

    def test_eval_gen_atom_uses_classical_rows(self):
        team = team_of(([["p"]], [[]]), ([[]], [[]]))
        atom = dependence_atom(0, 1)
        assert not eval_gen_atom(team, atom, (p,))
        assert eval_gen_atom(team, atom, (Prop("r"),))

    def test_atoms_see_temporal_parameters(self):
        # dep(; F p): eventual satisfaction of p is constant across the team.
        team = team_of(([["p"]], [[]]), ([[]], [["p"], []]))
        assert check_team(team, parse_ltl("dep(F p)"))
        mixed = team_of(([["p"]], [[]]), ([[]], [[]]))
        assert not check_team(mixed, parse_ltl("dep(F p)"))


class TestStrategies:
    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32))
    def test_disjoint_and_cover_splits_agree_on_dc_formulas(self, seed):
        rng = random.Random(seed)
        team = random_team(rng)
        phi = random_ltl_formula(rng, rng.randint(1, 5), allow_atoms=True)
        if not classify(phi).downward_closed_fragment:
            return
        assert check_team(team, phi, strategy=SplitStrategy.DISJOINT_ONLY) == \
            check_team(team, phi, strategy=SplitStrategy.COVERS)

    def test_cover_splits_needed_under_cneg(self):
        # ~(p-side empty) forces both parts nonempty; with covers the single
        # trace can sit on both sides.
        team = team_of(([["p"]], [[]]),)
        phi = Split(CNeg(parse_ltl("BOT")), CNeg(parse_ltl("BOT")))
        assert check_team(team, phi)

    def test_team_cap(self):
        team = TeamEncoding.of(
            LassoTrace.of([], [[f"p{i}"]]) for i in range(5)
        )
        phi = parse_ltl("~p0 | ~p1")
        with pytest.raises(ResourceCapError):
            check_team(team, phi, max_team=4)


class TestOracleAgreement:
    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 2**32))
    def test_matches_naive_oracle(self, seed):
        rng = random.Random(seed)
        team = random_team(rng)
        phi = random_ltl_formula(
            rng, rng.randint(1, 6),
            allow_cneg=True, allow_boolor=True, allow_atoms=True,
        )
        assert check_team(team, phi) == naive_oracle(team, phi)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 2**32))
    def test_singleton_equals_classical(self, seed):
        rng = random.Random(seed)
        t = random_trace(rng, max_prefix=3, max_loop=3)
        phi = random_ltl_formula(rng, rng.randint(1, 6))
        assert check_team(TeamEncoding.of([t]), phi) == check_ltl_classical(t, phi)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 2**32))
    def test_downward_closure(self, seed):
        rng = random.Random(seed)
        team = random_team(rng)
        phi = random_ltl_formula(rng, rng.randint(1, 6), allow_atoms=True)
        if not classify(phi).downward_closed_fragment:
            return
        if check_team(team, phi):
            members = list(team.traces)
            sub = TeamEncoding(frozenset(
                t for t in members if rng.random() < 0.5
            ))
            assert check_team(sub, phi)
