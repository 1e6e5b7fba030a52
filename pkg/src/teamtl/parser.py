"""Concrete text syntax for LTL and CTL formulas.

Precedence, loosest to tightest: the prefix `~` (contradictory negation,
greedy: it swallows the longest expression starting at its position);
binary `U`/`R` (right-associative, LTL only); `|` (splitjunction); `\\|/`
(Boolean disjunction); `&`; the prefix operators `X`/`F`/`G` (LTL) and
`EX`/`AX`/`EF`/... (CTL); `!` directly before a proposition.  Atoms:
`dep(p1,..;q1,..)`, `inc(p1,..;q1,..)`, `TOP`, `BOT`, and registered
generalised atoms.  `#` starts a comment; whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .errors import TeamTLError
from .formula import (
    AR,
    AU,
    And,
    BoolOr,
    CNeg,
    ER,
    EU,
    AX,
    EX,
    Formula,
    GenAtomApp,
    GenAtomDef,
    NegProp,
    Next,
    Prop,
    Release,
    Split,
    Until,
    bot,
    dependence_atom,
    expand_shorthand,
    inclusion_atom,
    top,
)


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseError(TeamTLError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} (at offset {span.start}..{span.end})")
        self.message = message
        self.span = span


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<boolor>\\\|/)
  | (?P<sym>[()\[\],;&|!~])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_LTL_KEYWORDS = {"U", "R", "X", "F", "G", "TOP", "BOT", "dep", "inc"}
_CTL_KEYWORDS = {
    "E", "A", "EX", "AX", "EF", "AF", "EG", "AG", "U", "R", "X", "F", "G",
    "TOP", "BOT", "dep", "inc",
}


@dataclass(frozen=True)
class _Token:
    kind: str  # symbol text, "ident", "boolor", or "eof"
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1)
            )
        span = SourceSpan(m.start(), m.end())
        if m.lastgroup == "ws":
            pass
        elif m.lastgroup == "boolor":
            tokens.append(_Token("boolor", m.group(), span))
        elif m.lastgroup == "sym":
            tokens.append(_Token(m.group(), m.group(), span))
        else:
            tokens.append(_Token("ident", m.group(), span))
        pos = m.end()
    tokens.append(_Token("eof", "", SourceSpan(len(text), len(text))))
    return tokens


class _Parser:
    def __init__(self, text: str, mode: str, atoms: Mapping[str, GenAtomDef]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.mode = mode
        self.atoms = atoms
        self.keywords = _LTL_KEYWORDS if mode == "ltl" else _CTL_KEYWORDS

    # -- token helpers ----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.span)
        return self.advance()

    def at_keyword(self, *names: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text in names

    # -- grammar ----------------------------------------------------------

    def parse(self) -> Formula:
        phi = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            if self.mode == "ctl" and tok.kind == "ident" and tok.text in ("U", "R", "X", "F", "G"):
                raise ParseError(
                    f"bare {tok.text} without path quantifier", tok.span
                )
            raise ParseError(f"unexpected {tok.text!r}", tok.span)
        return phi

    def expr(self) -> Formula:
        if self.peek().kind == "~":
            self.advance()
            return CNeg(self.expr())
        if self.mode == "ltl":
            return self.until_expr()
        return self.split_expr()

    def until_expr(self) -> Formula:
        left = self.split_expr()
        if self.at_keyword("U", "R"):
            op = self.advance().text
            right = self.until_expr()
            return Until(left, right) if op == "U" else Release(left, right)
        return left

    def split_expr(self) -> Formula:
        left = self.boolor_expr()
        while self.peek().kind == "|":
            self.advance()
            left = Split(left, self.boolor_expr())
        return left

    def boolor_expr(self) -> Formula:
        left = self.and_expr()
        while self.peek().kind == "boolor":
            self.advance()
            left = BoolOr(left, self.and_expr())
        return left

    def and_expr(self) -> Formula:
        left = self.unary_expr()
        while self.peek().kind == "&":
            self.advance()
            left = And(left, self.unary_expr())
        return left

    def unary_expr(self) -> Formula:
        tok = self.peek()
        if tok.kind == "~":
            self.advance()
            return CNeg(self.expr())
        if tok.kind == "!":
            self.advance()
            prop = self.peek()
            if prop.kind != "ident" or prop.text in self.keywords:
                raise ParseError(
                    "negation `!` applies only to propositions "
                    "(formulas are in negation normal form)",
                    prop.span,
                )
            self.advance()
            return NegProp(prop.text)
        if self.mode == "ltl" and tok.kind == "ident":
            if tok.text == "X":
                self.advance()
                return Next(self.unary_expr())
            if tok.text in ("F", "G"):
                self.advance()
                return expand_shorthand(tok.text, [self.unary_expr()])
        if self.mode == "ctl" and tok.kind == "ident":
            if tok.text in ("EX", "AX"):
                self.advance()
                child = self.unary_expr()
                return EX(child) if tok.text == "EX" else AX(child)
            if tok.text in ("EF", "AF", "EG", "AG"):
                self.advance()
                return expand_shorthand(tok.text, [self.unary_expr()])
            if tok.text in ("E", "A"):
                return self.bracketed_path(tok.text)
            if tok.text in ("X", "F", "G", "U", "R"):
                raise ParseError(
                    f"bare {tok.text} without path quantifier", tok.span
                )
        return self.primary()

    def bracketed_path(self, quantifier: str) -> Formula:
        self.advance()
        self.expect("[")
        left = self.expr()
        op = self.peek()
        if not self.at_keyword("U", "R"):
            raise ParseError("expected U or R inside path brackets", op.span)
        self.advance()
        right = self.expr()
        self.expect("]")
        if quantifier == "E":
            return EU(left, right) if op.text == "U" else ER(left, right)
        return AU(left, right) if op.text == "U" else AR(left, right)

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            phi = self.expr()
            self.expect(")")
            return phi
        if tok.kind == "ident":
            if tok.text == "TOP":
                self.advance()
                return top()
            if tok.text == "BOT":
                self.advance()
                return bot()
            if tok.text in ("dep", "inc"):
                return self.builtin_atom(tok.text)
            if tok.text in self.atoms:
                return self.registered_atom(self.atoms[tok.text])
            if tok.text in self.keywords:
                raise ParseError(f"unexpected keyword {tok.text!r}", tok.span)
            self.advance()
            return Prop(tok.text)
        raise ParseError(
            f"expected a formula, found {tok.text or 'end of input'!r}", tok.span
        )

    def builtin_atom(self, name: str) -> Formula:
        start = self.advance()
        self.expect("(")
        first, second = self.param_lists()
        self.expect(")")
        if name == "dep":
            if second is None:
                # Constancy shorthand dep(p) = dep(;p).
                first, second = [], first
            if not second:
                raise ParseError("dep needs at least one determined parameter", start.span)
            atom = dependence_atom(len(first), len(second))
        else:
            if second is None or len(first) != len(second):
                raise ParseError(
                    "inc needs two parameter lists of equal length", start.span
                )
            atom = inclusion_atom(len(first))
        return GenAtomApp(atom, tuple(first + second))

    def param_lists(self) -> tuple[list[Formula], list[Formula] | None]:
        first = [self.expr()]
        while self.peek().kind == ",":
            self.advance()
            first.append(self.expr())
        if self.peek().kind != ";":
            return first, None
        self.advance()
        second = [self.expr()]
        while self.peek().kind == ",":
            self.advance()
            second.append(self.expr())
        return first, second

    def registered_atom(self, atom: GenAtomDef) -> Formula:
        start = self.advance()
        self.expect("(")
        first, second = self.param_lists()
        params = first + (second or [])
        self.expect(")")
        if len(params) != atom.arity:
            raise ParseError(
                f"atom {atom.name} expects {atom.arity} parameters, got {len(params)}",
                start.span,
            )
        return GenAtomApp(atom, tuple(params))


def parse_ltl(text: str, atoms: Mapping[str, GenAtomDef] | None = None) -> Formula:
    return _Parser(text, "ltl", atoms or {}).parse()


def parse_ctl(text: str, atoms: Mapping[str, GenAtomDef] | None = None) -> Formula:
    return _Parser(text, "ctl", atoms or {}).parse()


# ---------------------------------------------------------------------------
# Rendering


_TOP = top()
_BOT = bot()


def _binary(phi: Formula):
    """(operator text, precedence) for infix nodes, else None."""
    if isinstance(phi, (Until, Release)):
        return ("U" if isinstance(phi, Until) else "R", 1)
    if isinstance(phi, Split):
        return ("|", 2)
    if isinstance(phi, BoolOr):
        return ("\\|/", 3)
    if isinstance(phi, And):
        return ("&", 4)
    return None


def render(phi: Formula) -> str:
    """Concrete syntax such that parsing it yields the same tree.

    Expansions of TOP/BOT and the derived temporal operators are folded
    back to their shorthand spelling.  Because `~` greedily consumes the
    rest of its scope, a contradictory negation is written bare only when
    its rendering extends to the end of the enclosing scope (`tail`);
    otherwise the whole `~`-expression is parenthesized.
    """
    return _render(phi, 0, tail=True)


def _render(phi: Formula, parent_prec: int, tail: bool) -> str:
    if phi == _TOP:
        return "TOP"
    if phi == _BOT:
        return "BOT"
    if isinstance(phi, Prop):
        return phi.name
    if isinstance(phi, NegProp):
        return f"!{phi.name}"
    if isinstance(phi, CNeg):
        inner = _render(phi.child, 0, tail=True)
        # In CTL the path-operator keywords already stop the greedy `~`.
        if tail:
            return f"~{inner}"
        return f"(~{inner})"
    shorthand = _shorthand_name(phi)
    if shorthand is not None:
        name, child = shorthand
        return f"{name} {_render(child, 5, tail)}"
    if isinstance(phi, Next):
        return f"X {_render(phi.child, 5, tail)}"
    if isinstance(phi, EX):
        return f"EX {_render(phi.child, 5, tail)}"
    if isinstance(phi, AX):
        return f"AX {_render(phi.child, 5, tail)}"
    if isinstance(phi, (EU, AU, ER, AR)):
        quantifier = "E" if isinstance(phi, (EU, ER)) else "A"
        op = "U" if isinstance(phi, (EU, AU)) else "R"
        left = _render(phi.left, 0, tail=True)
        right = _render(phi.right, 0, tail=True)
        return f"{quantifier}[{left} {op} {right}]"
    if isinstance(phi, GenAtomApp):
        sep = phi.atom.sep
        parts = [_render(p, 0, tail=True) for p in phi.params]
        if sep is None:
            inner = ", ".join(parts)
        else:
            inner = ", ".join(parts[:sep]) + "; " + ", ".join(parts[sep:])
            if sep == 0:
                inner = inner[2:]  # constancy: no leading "; "
        return f"{phi.atom.name}({inner})"
    binary = _binary(phi)
    if binary is not None:
        op, prec = binary
        parenthesize = prec < parent_prec
        child_tail = tail and not parenthesize
        if op in ("U", "R"):
            # Right-associative: the left operand must bind tighter.
            left = _render(phi.left, prec + 1, tail=False)
            right = _render(phi.right, prec, child_tail or parenthesize)
        else:
            left = _render(phi.left, prec, tail=False)
            right = _render(phi.right, prec + 1, child_tail or parenthesize)
        text = f"{left} {op} {right}"
        return f"({text})" if parenthesize else text
    raise ValueError(f"cannot render {type(phi).__name__}")


def _shorthand_name(phi: Formula):
    if isinstance(phi, Until) and phi.left == _TOP:
        return ("F", phi.right)
    if isinstance(phi, Release) and phi.left == _BOT:
        return ("G", phi.right)
    if isinstance(phi, EU) and phi.left == _TOP:
        return ("EF", phi.right)
    if isinstance(phi, AU) and phi.left == _TOP:
        return ("AF", phi.right)
    if isinstance(phi, ER) and phi.left == _BOT:
        return ("EG", phi.right)
    if isinstance(phi, AR) and phi.left == _BOT:
        return ("AG", phi.right)
    return None
