"""Classical (single-trace / single-world) semantics.

LTL on lasso traces evaluates positions directly; since the suffix
structure of a lasso repeats with its loop length, temporal searches walk
positions until a reduced position repeats, which bounds every witness by
|prefix| + |loop| steps from the current offset.

CTL on pointed Kripke structures uses bottom-up subformula labeling with
the standard fixpoint computations.
"""

from __future__ import annotations

from .errors import UnsupportedNodeError
from .formula import (
    AR,
    AU,
    AX,
    And,
    BoolOr,
    CNeg,
    ER,
    EU,
    EX,
    Formula,
    GenAtomApp,
    NegProp,
    Next,
    Prop,
    Release,
    Split,
    Until,
)
from .kripke import KripkeStructure, MultiTeam
from .trace import LassoTrace, trace_at

_CTL_NODES = (EX, AX, EU, AU, ER, AR)


def prop_sat(labels: frozenset[str], phi: Formula) -> bool:
    """Propositional satisfaction against a single proposition set.

    Split and BoolOr both act as classical disjunction here.
    """
    if isinstance(phi, Prop):
        return phi.name in labels
    if isinstance(phi, NegProp):
        return phi.name not in labels
    if isinstance(phi, And):
        return prop_sat(labels, phi.left) and prop_sat(labels, phi.right)
    if isinstance(phi, (Split, BoolOr)):
        return prop_sat(labels, phi.left) or prop_sat(labels, phi.right)
    raise UnsupportedNodeError(
        f"node {type(phi).__name__} is not propositional"
    )


# ---------------------------------------------------------------------------
# LTL on lasso traces


def _require_pure_ltl(phi: Formula):
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, (CNeg, BoolOr, GenAtomApp) + _CTL_NODES):
            raise UnsupportedNodeError(
                f"classical LTL evaluation does not support {type(node).__name__}"
            )
        if isinstance(node, (Prop, NegProp)):
            continue
        if isinstance(node, Next):
            stack.append(node.child)
        else:
            stack.append(node.left)
            stack.append(node.right)


class _LassoEval:
    """Positionwise evaluation on one lasso trace with memoization over
    (reduced position, subformula)."""

    def __init__(self, t: LassoTrace, extended: bool):
        self.t = t
        self.extended = extended
        self.memo: dict[tuple[int, int], bool] = {}

    def reduce(self, i: int) -> int:
        s = len(self.t.prefix)
        if i < s:
            return i
        return s + (i - s) % len(self.t.loop)

    def eval(self, i: int, phi: Formula) -> bool:
        key = (self.reduce(i), id(phi))
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        verdict = self._eval(self.reduce(i), phi)
        self.memo[key] = verdict
        return verdict

    def _eval(self, i: int, phi: Formula) -> bool:
        t = self.t
        if isinstance(phi, Prop):
            return phi.name in trace_at(t, i)
        if isinstance(phi, NegProp):
            return phi.name not in trace_at(t, i)
        if isinstance(phi, And):
            return self.eval(i, phi.left) and self.eval(i, phi.right)
        if isinstance(phi, Split):
            return self.eval(i, phi.left) or self.eval(i, phi.right)
        if isinstance(phi, Next):
            return self.eval(i + 1, phi.child)
        if isinstance(phi, Until):
            k, seen = i, set()
            while True:
                r = self.reduce(k)
                if r in seen:
                    return False
                seen.add(r)
                if self.eval(k, phi.right):
                    return True
                if not self.eval(k, phi.left):
                    return False
                k += 1
        if isinstance(phi, Release):
            k, seen = i, set()
            while True:
                r = self.reduce(k)
                if r in seen:
                    return True
                seen.add(r)
                if not self.eval(k, phi.right):
                    return False
                if self.eval(k, phi.left):
                    return True
                k += 1
        if self.extended:
            if isinstance(phi, CNeg):
                return not self.eval(i, phi.child)
            if isinstance(phi, BoolOr):
                return self.eval(i, phi.left) or self.eval(i, phi.right)
        raise UnsupportedNodeError(
            f"classical LTL evaluation does not support {type(phi).__name__}"
        )


def check_ltl_classical(t: LassoTrace, phi: Formula) -> bool:
    """Classical satisfaction of a pure-grammar LTL formula on one trace."""
    _require_pure_ltl(phi)
    return _LassoEval(t, extended=False).eval(0, phi)


def check_ltl_classical_extended(t: LassoTrace, phi: Formula) -> bool:
    """Classical evaluation admitting CNeg (as negation) and BoolOr (as
    disjunction); used by the flattening-based model checker."""
    return _LassoEval(t, extended=True).eval(0, phi)


# ---------------------------------------------------------------------------
# CTL on pointed Kripke structures


def _require_pure_ctl(phi: Formula):
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, (CNeg, BoolOr, GenAtomApp, Next, Until, Release)):
            raise UnsupportedNodeError(
                f"classical CTL evaluation does not support {type(node).__name__}"
            )
        if isinstance(node, (Prop, NegProp)):
            continue
        if isinstance(node, (EX, AX)):
            stack.append(node.child)
        else:
            stack.append(node.left)
            stack.append(node.right)


def _ctl_sat_sets(k: KripkeStructure, phi: Formula) -> dict[int, frozenset[str]]:
    worlds = frozenset(k.worlds)
    table: dict[int, frozenset[str]] = {}

    def sat(node: Formula) -> frozenset[str]:
        cached = table.get(id(node))
        if cached is not None:
            return cached
        if isinstance(node, Prop):
            result = frozenset(w for w in worlds if node.name in k.label(w))
        elif isinstance(node, NegProp):
            result = frozenset(w for w in worlds if node.name not in k.label(w))
        elif isinstance(node, And):
            result = sat(node.left) & sat(node.right)
        elif isinstance(node, Split):
            result = sat(node.left) | sat(node.right)
        elif isinstance(node, EX):
            child = sat(node.child)
            result = frozenset(w for w in worlds if any(s in child for s in k.succ[w]))
        elif isinstance(node, AX):
            child = sat(node.child)
            result = frozenset(w for w in worlds if all(s in child for s in k.succ[w]))
        elif isinstance(node, (EU, AU)):
            left, right = sat(node.left), sat(node.right)
            universal = isinstance(node, AU)
            result = right
            while True:
                if universal:
                    grow = frozenset(
                        w
                        for w in left - result
                        if all(s in result for s in k.succ[w])
                    )
                else:
                    grow = frozenset(
                        w
                        for w in left - result
                        if any(s in result for s in k.succ[w])
                    )
                if not grow:
                    break
                result |= grow
        elif isinstance(node, (ER, AR)):
            left, right = sat(node.left), sat(node.right)
            universal = isinstance(node, AR)
            result = right
            while True:
                if universal:
                    keep = frozenset(
                        w
                        for w in result
                        if w in left or all(s in result for s in k.succ[w])
                    )
                else:
                    keep = frozenset(
                        w
                        for w in result
                        if w in left or any(s in result for s in k.succ[w])
                    )
                if keep == result:
                    break
                result = keep
        else:
            raise UnsupportedNodeError(
                f"classical CTL evaluation does not support {type(node).__name__}"
            )
        table[id(node)] = result
        return result

    sat(phi)
    return table


def check_ctl_classical(k: KripkeStructure, w: str, phi: Formula) -> bool:
    """Standard CTL satisfaction at one world, by bottom-up labeling."""
    if w not in k.worlds:
        raise ValueError(f"{w!r} is not a world of the structure")
    _require_pure_ctl(phi)
    return w in _ctl_sat_sets(k, phi)[id(phi)]


def check_ctl_classical_multiset(k: KripkeStructure, team: MultiTeam, phi: Formula) -> bool:
    """The flat lift: every team member satisfies the formula classically."""
    _require_pure_ctl(phi)
    support = team.support()
    for w in support:
        if w not in k.worlds:
            raise ValueError(f"{w!r} is not a world of the structure")
    if not support:
        return True
    table = _ctl_sat_sets(k, phi)[id(phi)]
    return all(w in table for w in support)
