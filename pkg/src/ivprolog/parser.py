"""Lexer and recursive-descent parser for ``.ipl`` source text.

Grammar::

    program    = { clause | directive | proximity } ;
    clause     = atom [ interval ] "."
               | atom ":-" bodyatom { "," bodyatom } [ interval ] "." ;
    bodyatom   = atom [ interval ] ;
    directive  = ":-" "lambdaCutIVFS" "(" interval ")" "." ;
    proximity  = symbol "~" symbol "=" interval "." ;
    interval   = "[" number "," number "]" ;
    atom       = symbol [ "(" term { "," term } ")" ] ;
    term       = variable | symbol [ "(" term { "," term } ")" ] | number ;

``%`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
import warnings
from typing import NamedTuple

from .errors import InvalidInterval, LexError, ParseError
from .interval import BOTTOM, TOP, Interval
from .terms import Atom, Clause, Compound, Constant, Goal, Program, ProximityEquation, Variable

__all__ = ["Token", "tokenize", "parse_program", "parse_goal", "parse_term", "parse_atom"]


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


_PUNCT = {
    "(": "lparen", ")": "rparen", ",": "comma", ".": "period", "~": "tilde",
    "=": "equals", "[": "lbracket", "]": "rbracket",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<neck>:-)
  | (?P<punct>[(),.~=\[\]])
    """,
    re.VERBOSE,
)


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise LexError(f"illegal character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "punct":
            tokens.append(Token(_PUNCT[text], text, line, col))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0
        self.anon = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, *expected) -> ParseError:
        t = self.tok
        found = repr(t.text) if t.kind != "eof" else "end of input"
        return ParseError(f"{message}, found {found}", t.line, t.column, expected)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.error("unexpected token", kind)
        return self.advance()

    # terms -------------------------------------------------------------

    def interval(self) -> Interval:
        start = self.expect("lbracket")
        lo = float(self.expect("num").text)
        self.expect("comma")
        hi = float(self.expect("num").text)
        self.expect("rbracket")
        try:
            return Interval(lo, hi)
        except InvalidInterval as exc:
            raise InvalidInterval(f"{start.line}:{start.column}: {exc}") from None

    def term(self):
        t = self.tok
        if t.kind == "var":
            self.advance()
            if t.text == "_":
                self.anon += 1
                return Variable(f"_Anon{self.anon}")
            return Variable(t.text)
        if t.kind == "num":
            self.advance()
            return Constant(t.text)
        if t.kind == "ident":
            self.advance()
            if self.tok.kind == "lparen":
                return Compound(t.text, self.arguments())
            return Constant(t.text)
        raise self.error("expected a term", "var", "ident", "num")

    def arguments(self) -> tuple:
        self.expect("lparen")
        args = [self.term()]
        while self.tok.kind == "comma":
            self.advance()
            args.append(self.term())
        self.expect("rparen")
        return tuple(args)

    def atom(self) -> Atom:
        t = self.tok
        if t.kind != "ident":
            if t.kind == "var":
                raise self.error("predicate symbol cannot be a variable", "ident")
            raise self.error("expected an atom", "ident")
        self.advance()
        args = self.arguments() if self.tok.kind == "lparen" else ()
        return Atom(t.text, args)

    # statements --------------------------------------------------------

    def program(self) -> Program:
        clauses, proximities = [], []
        lambda_cut = BOTTOM
        seen_cut = False
        while self.tok.kind != "eof":
            if self.tok.kind == "neck":
                cut = self.directive()
                if seen_cut:
                    warnings.warn(
                        f"lambdaCutIVFS directive overrides earlier value with {cut}",
                        stacklevel=3)
                lambda_cut, seen_cut = cut, True
            elif self.tok.kind in ("ident", "num") and self.peek().kind == "tilde":
                proximities.append(self.proximity())
            else:
                clauses.append(self.clause())
        return Program(tuple(clauses), tuple(proximities), lambda_cut)

    def directive(self) -> Interval:
        self.expect("neck")
        name = self.tok
        if name.kind != "ident" or name.text != "lambdaCutIVFS":
            raise self.error("unknown directive", "lambdaCutIVFS")
        self.advance()
        self.expect("lparen")
        value = self.interval()
        self.expect("rparen")
        self.expect("period")
        return value

    def proximity(self) -> ProximityEquation:
        left = self.advance()
        self.expect("tilde")
        right = self.tok
        if right.kind not in ("ident", "num"):
            raise self.error("expected a symbol", "ident", "num")
        self.advance()
        self.expect("equals")
        degree = self.interval()
        self.expect("period")
        if left.text == right.text:
            raise ParseError(f"reflexive proximity {left.text}~{right.text} is implicit",
                             left.line, left.column)
        return ProximityEquation(left.text, right.text, degree)

    def clause(self) -> Clause:
        self.anon = 0
        head = self.atom()
        if self.tok.kind == "lbracket":
            ann = self.interval()
            self.expect("period")
            return Clause(head, (), ann)
        if self.tok.kind == "period":
            self.advance()
            return Clause(head)
        if self.tok.kind != "neck":
            raise self.error("unexpected token after clause head", "neck", "lbracket", "period")
        self.advance()
        body, trailing = [], []
        while True:
            body.append(self.atom())
            intervals = []
            while self.tok.kind == "lbracket" and len(intervals) < 2:
                intervals.append(self.interval())
            trailing.append(intervals)
            if self.tok.kind == "comma":
                if len(intervals) > 1:
                    raise self.error("a body atom takes at most one guard", "comma")
                self.advance()
                continue
            break
        self.expect("period")
        guards = [iv[0] if iv else None for iv in trailing[:-1]]
        last = trailing[-1]
        annotation = TOP
        if len(last) == 2:
            guards.append(last[0])
            annotation = last[1]
        elif len(last) == 1:
            if any(g is not None for g in guards):
                guards.append(last[0])
            else:
                guards.append(None)
                annotation = last[0]
        else:
            guards.append(None)
        return Clause(head, tuple(body), annotation, tuple(guards))

    def goal(self) -> Goal:
        if self.tok.kind == "var" and self.peek().kind == "lparen":
            raise self.error("predicate symbol cannot be a variable", "ident")
        atoms = [self.atom()]
        while self.tok.kind == "comma":
            self.advance()
            atoms.append(self.atom())
        if self.tok.kind == "period":
            self.advance()
        if self.tok.kind != "eof":
            raise self.error("unexpected token after goal", "comma", "period", "eof")
        return Goal(tuple(atoms))


def parse_program(source: str) -> Program:
    return _Parser(source).program()


def parse_goal(source: str) -> Goal:
    """Parse a conjunctive goal; a leading ``?-`` and trailing ``.`` are optional."""
    text = source.strip()
    if text.startswith("?-"):
        text = text[2:]
    return _Parser(text).goal()


def parse_term(source: str):
    p = _Parser(source)
    t = p.term()
    p.expect("eof")
    return t


def parse_atom(source: str) -> Atom:
    p = _Parser(source)
    a = p.atom()
    p.expect("eof")
    return a
