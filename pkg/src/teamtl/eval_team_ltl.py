"""Team path checking for LTL: synchronous team semantics over finite
teams of lasso traces, with the extension connectives (Boolean
disjunction, contradictory negation) and generalised atoms.

Temporal witnesses are bounded: a team's suffixes repeat with period
lcm(loop lengths) once the longest prefix is consumed, so every Until /
Release quantifier over k can stop at prfx(T) + lcm(T).

Splitjunctions are the expensive part.  On downward-closed subformulas it
suffices to enumerate disjoint subsets, pruned by per-trace feasibility;
otherwise every ordered cover (each trace goes left, right, or both) must
be considered.  ``naive_oracle`` is a deliberately independent and
unoptimized second implementation used for differential testing.
"""

from __future__ import annotations

import itertools
from enum import Enum

from .errors import ResourceCapError, UnsupportedNodeError
from .eval_classical import check_ltl_classical, prop_sat
from .formula import (
    And,
    BoolOr,
    CNeg,
    Formula,
    GenAtomApp,
    NegProp,
    Next,
    Prop,
    Release,
    Split,
    Until,
    classify,
    formula_length,
)
from .trace import (
    LassoTrace,
    TeamEncoding,
    lcm_loop,
    prfx,
    suffix_team,
    trace_at,
    trace_sort_key,
)

DEFAULT_MAX_TEAM = 16


class SplitStrategy(Enum):
    """How splitjunctions enumerate team divisions.

    DISJOINT_ONLY is sound only on downward-closed formulas; COVERS is
    always sound but costs 3^|T| in the worst case.
    """

    DISJOINT_ONLY = "disjoint"
    COVERS = "covers"


def _is_flat(phi: Formula) -> bool:
    """Flat formulas (literals, And, Split) hold on a team iff they hold
    classically on every member; evaluated per trace in linear time."""
    if isinstance(phi, (Prop, NegProp)):
        return True
    if isinstance(phi, (And, Split)):
        return _is_flat(phi.left) and _is_flat(phi.right)
    return False


class _TeamEval:
    def __init__(self, max_team: int, strategy: SplitStrategy | None):
        self.max_team = max_team
        self.strategy = strategy
        self.memo: dict[tuple[frozenset[LassoTrace], int], bool] = {}

    def check(self, traces: frozenset[LassoTrace], phi: Formula) -> bool:
        key = (traces, id(phi))
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        verdict = self._check(traces, phi)
        self.memo[key] = verdict
        return verdict

    def _check(self, traces: frozenset[LassoTrace], phi: Formula) -> bool:
        if isinstance(phi, Prop):
            return all(phi.name in trace_at(t, 0) for t in traces)
        if isinstance(phi, NegProp):
            return all(phi.name not in trace_at(t, 0) for t in traces)
        if isinstance(phi, And):
            return self.check(traces, phi.left) and self.check(traces, phi.right)
        if isinstance(phi, BoolOr):
            return self.check(traces, phi.left) or self.check(traces, phi.right)
        if isinstance(phi, CNeg):
            return not self.check(traces, phi.child)
        if isinstance(phi, Split):
            return self._split(traces, phi)
        if isinstance(phi, Next):
            return self.check(self._suffix(traces, 1), phi.child)
        if isinstance(phi, (Until, Release)):
            return self._temporal(traces, phi)
        if isinstance(phi, GenAtomApp):
            return eval_gen_atom(TeamEncoding(traces), phi.atom, phi.params)
        raise UnsupportedNodeError(
            f"team LTL evaluation does not support {type(phi).__name__}"
        )

    @staticmethod
    def _suffix(traces: frozenset[LassoTrace], i: int) -> frozenset[LassoTrace]:
        return suffix_team(TeamEncoding(traces), i).traces

    def _temporal(self, traces: frozenset[LassoTrace], phi: Until | Release) -> bool:
        team = TeamEncoding(traces)
        bound = prfx(team) + lcm_loop(team)
        suffixes = [traces]
        for _ in range(bound):
            suffixes.append(self._suffix(suffixes[-1], 1))
        if isinstance(phi, Until):
            for step in suffixes:
                if self.check(step, phi.right):
                    return True
                if not self.check(step, phi.left):
                    return False
            return False
        for step in suffixes:
            if not self.check(step, phi.right):
                return False
            if self.check(step, phi.left):
                return True
        return True

    def _split(self, traces: frozenset[LassoTrace], phi: Split) -> bool:
        if _is_flat(phi):
            return all(prop_sat(trace_at(t, 0), phi) for t in traces)
        if len(traces) > self.max_team:
            raise ResourceCapError(
                f"team of size {len(traces)} exceeds the split cap {self.max_team}"
            )
        strategy = self.strategy
        if strategy is None:
            strategy = (
                SplitStrategy.DISJOINT_ONLY
                if classify(phi).downward_closed_fragment
                else SplitStrategy.COVERS
            )
        if strategy is SplitStrategy.DISJOINT_ONLY:
            return self._split_disjoint(traces, phi.left, phi.right)
        return self._split_covers(traces, phi.left, phi.right)

    def _split_disjoint(self, traces, left, right) -> bool:
        # Downward closure makes minimal assignments complete: a trace that
        # can only live on one side must go there, and when one side is flat
        # the other side's part can be taken as small as possible.
        if _is_flat(left):
            rest = frozenset(t for t in traces if not prop_sat(trace_at(t, 0), left))
            return self.check(rest, right)
        if _is_flat(right):
            rest = frozenset(t for t in traces if not prop_sat(trace_at(t, 0), right))
            return self.check(rest, left)
        can_left = frozenset(t for t in traces if self.check(frozenset([t]), left))
        can_right = frozenset(t for t in traces if self.check(frozenset([t]), right))
        if can_left | can_right != traces:
            return False
        base = traces - can_right
        free = sorted(can_left & can_right, key=trace_sort_key)
        for size in range(len(free), -1, -1):
            for extra in itertools.combinations(free, size):
                part = base | frozenset(extra)
                if self.check(part, left) and self.check(traces - part, right):
                    return True
        return False

    def _split_covers(self, traces, left, right) -> bool:
        members = sorted(traces, key=trace_sort_key)
        n = len(members)
        full = (1 << n) - 1

        def subteam(mask: int) -> frozenset[LassoTrace]:
            return frozenset(members[i] for i in range(n) if mask >> i & 1)

        sat_left = [m for m in range(full + 1) if self.check(subteam(m), left)]
        sat_right = {m for m in range(full + 1) if self.check(subteam(m), right)}
        for m1 in sat_left:
            needed = full & ~m1
            for m2 in sat_right:
                if m1 | m2 == full and m2 & needed == needed:
                    return True
        return False


def check_team(
    team: TeamEncoding,
    phi: Formula,
    *,
    max_team: int = DEFAULT_MAX_TEAM,
    strategy: SplitStrategy | None = None,
) -> bool:
    """Team satisfaction of an LTL formula on a finite trace team.

    ``strategy`` forces the splitjunction enumeration mode; by default it
    is chosen per split node (disjoint on downward-closed subformulas,
    covers otherwise).  Raises ResourceCapError instead of guessing when a
    split would enumerate more than 2^max_team subteams.
    """
    return _TeamEval(max_team, strategy).check(team.traces, phi)


def eval_gen_atom(team: TeamEncoding, atom, params) -> bool:
    """Apply a generalised atom: build one membership row per team member
    (classical satisfaction of each parameter) and hand the rows to the
    atom's evaluator."""
    params = tuple(params)
    if len(params) != atom.arity:
        raise ValueError(
            f"atom {atom.name} has arity {atom.arity}, got {len(params)} parameters"
        )
    rows = [
        tuple(check_ltl_classical(t, p) for p in params)
        for t in sorted(team.traces, key=trace_sort_key)
    ]
    return atom.evaluator(rows)


# ---------------------------------------------------------------------------
# Independent oracle


ORACLE_MAX_TEAM = 4
ORACLE_MAX_LEN = 8


def naive_oracle(team: TeamEncoding, phi: Formula) -> bool:
    """Direct transcription of the team semantics, for differential tests.

    Works on (trace tuple, offset) pairs without canonicalization or
    memoization, always enumerates ordered covers for splits, and verifies
    temporal-bound stability: the verdict with witness bound
    prfx + lcm must equal the verdict with bound prfx + 2·lcm.
    """
    if len(team) > ORACLE_MAX_TEAM:
        raise ResourceCapError("oracle supports teams of at most 4 traces")
    if formula_length(phi) > ORACLE_MAX_LEN:
        raise ResourceCapError("oracle supports formulas of length at most 8")
    traces = tuple(sorted(team.traces, key=trace_sort_key))
    return _osat(traces, 0, phi)


def _obound(traces: tuple[LassoTrace, ...], off: int, periods: int) -> int:
    import math

    stem = max((len(t.prefix) - off for t in traces), default=0)
    stem = max(stem, 0)
    if not traces:
        return stem + periods
    return stem + periods * math.lcm(*(len(t.loop) for t in traces))


def _osat(traces: tuple[LassoTrace, ...], off: int, phi: Formula) -> bool:
    if isinstance(phi, Prop):
        return all(phi.name in trace_at(t, off) for t in traces)
    if isinstance(phi, NegProp):
        return all(phi.name not in trace_at(t, off) for t in traces)
    if isinstance(phi, And):
        return _osat(traces, off, phi.left) and _osat(traces, off, phi.right)
    if isinstance(phi, BoolOr):
        return _osat(traces, off, phi.left) or _osat(traces, off, phi.right)
    if isinstance(phi, CNeg):
        return not _osat(traces, off, phi.child)
    if isinstance(phi, Split):
        for sides in itertools.product("LRB", repeat=len(traces)):
            part1 = tuple(t for t, s in zip(traces, sides) if s in "LB")
            part2 = tuple(t for t, s in zip(traces, sides) if s in "RB")
            if _osat(part1, off, phi.left) and _osat(part2, off, phi.right):
                return True
        return False
    if isinstance(phi, Next):
        return _osat(traces, off + 1, phi.child)
    if isinstance(phi, Until):
        short = _otemporal(traces, off, phi, _obound(traces, off, 1))
        long = _otemporal(traces, off, phi, _obound(traces, off, 2))
        assert short == long, "temporal verdict not stable across period bounds"
        return short
    if isinstance(phi, Release):
        short = _otemporal(traces, off, phi, _obound(traces, off, 1))
        long = _otemporal(traces, off, phi, _obound(traces, off, 2))
        assert short == long, "temporal verdict not stable across period bounds"
        return short
    if isinstance(phi, GenAtomApp):
        rows = [
            tuple(_oclassical(t, off, p) for p in phi.params) for t in traces
        ]
        return phi.atom.evaluator(rows)
    raise UnsupportedNodeError(
        f"oracle does not support {type(phi).__name__}"
    )


def _otemporal(traces, off, phi, bound) -> bool:
    if isinstance(phi, Until):
        for k in range(bound + 1):
            if _osat(traces, off + k, phi.right) and all(
                _osat(traces, off + j, phi.left) for j in range(k)
            ):
                return True
        return False
    for k in range(bound + 1):
        if not _osat(traces, off + k, phi.right) and not any(
            _osat(traces, off + j, phi.left) for j in range(k)
        ):
            return False
    return True


def _oclassical(t: LassoTrace, off: int, phi: Formula) -> bool:
    """Single-trace classical evaluation local to the oracle."""
    if isinstance(phi, Prop):
        return phi.name in trace_at(t, off)
    if isinstance(phi, NegProp):
        return phi.name not in trace_at(t, off)
    if isinstance(phi, And):
        return _oclassical(t, off, phi.left) and _oclassical(t, off, phi.right)
    if isinstance(phi, Split):
        return _oclassical(t, off, phi.left) or _oclassical(t, off, phi.right)
    if isinstance(phi, Next):
        return _oclassical(t, off + 1, phi.child)
    if isinstance(phi, (Until, Release)):
        bound = _obound((t,), off, 1)
        if isinstance(phi, Until):
            return any(
                _oclassical(t, off + k, phi.right)
                and all(_oclassical(t, off + j, phi.left) for j in range(k))
                for k in range(bound + 1)
            )
        return all(
            _oclassical(t, off + k, phi.right)
            or any(_oclassical(t, off + j, phi.left) for j in range(k))
            for k in range(bound + 1)
        )
    raise UnsupportedNodeError(
        f"generalised-atom parameters must be pure classical formulas, "
        f"got {type(phi).__name__}"
    )
