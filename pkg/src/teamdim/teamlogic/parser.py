"""Concrete syntax for formulas.

Binding strength from loosest to tightest: ``->``, ``ior``, ``or``, ``tand``,
``and``. ``->`` groups to the right, the others to the left. A quantifier
body extends as far right as possible. ``E x y . φ`` is shorthand for
``E x . E y . φ`` (likewise for ``A``); ``x != y`` is accepted for ``!x = y``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ArityError, ParseError, UnsupportedError
from .quantifiers import quantifier_class
from .syntax import (
    PRECEDENCE,
    Ano,
    Binary,
    Const,
    Dep,
    Eq,
    Even,
    Exc,
    Formula,
    Half,
    Inc,
    Ind,
    NonEmpty,
    Quant,
    Rel,
)

_TOKEN = re.compile(
    r"(?P<space>\s+)|(?P<arrow>->)|(?P<neq>!=)|(?P<sym>[().;=!,])|(?P<word>[A-Za-z_][A-Za-z0-9_']*)"
)

_CONNECTIVES = {"and": "and", "or": "or", "tand": "tand", "ior": "ior", "->": "implies"}
_QUANTIFIERS = {"E", "A", "E1", "A1", "d1", "Q"}
_ATOMS = {"dep", "const", "exc", "inc", "ano", "ind", "even", "half"}
RESERVED = frozenset(_QUANTIFIERS | _ATOMS | {"and", "or", "tand", "ior", "NE"})


@dataclass(frozen=True)
class Token:
    kind: str  # "word", "sym", or "end"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        chunk = match.group()
        if kind == "space":
            for offset, ch in enumerate(chunk):
                if ch == "\n":
                    line += 1
                    line_start = pos + offset + 1
        else:
            tokens.append(Token("word" if kind == "word" else "sym", chunk, line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.current
        self.pos += 1
        return tok

    def fail(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.current
        return ParseError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        if self.current.text != text or self.current.kind == "end":
            found = self.current.text or "end of input"
            raise self.fail(f"expected {text!r}, found {found!r}")
        return self.advance()

    def variable(self) -> str:
        tok = self.current
        if tok.kind != "word" or tok.text in RESERVED:
            raise self.fail(f"expected a variable, found {tok.text or 'end of input'!r}")
        self.advance()
        return tok.text

    def variables_until(self, *stops: str) -> tuple[str, ...]:
        out = []
        while self.current.text not in stops:
            if self.current.text == ",":
                self.advance()
                continue
            out.append(self.variable())
        return tuple(out)

    # -- grammar

    def parse(self) -> Formula:
        formula = self.formula(0)
        if self.current.kind != "end":
            raise self.fail(f"unexpected {self.current.text!r}")
        return formula

    def connective(self) -> str | None:
        return _CONNECTIVES.get(self.current.text) if self.current.kind != "end" else None

    def formula(self, min_level: int) -> Formula:
        left = self.unary()
        while True:
            op = self.connective()
            if op is None or PRECEDENCE[op] < min_level:
                return left
            tok = self.advance()
            level = PRECEDENCE[op]
            right = self.formula(level if op == "implies" else level + 1)
            left = self._build(lambda: Binary(op, left, right), tok)

    def unary(self) -> Formula:
        tok = self.current
        if tok.kind == "word" and tok.text in _QUANTIFIERS:
            return self.quantifier()
        if tok.text == "(":
            self.advance()
            inner = self.formula(0)
            self.expect(")")
            return inner
        return self.literal_or_atom()

    def quantifier(self) -> Formula:
        tok = self.advance()
        qclass = None
        if tok.text == "Q":
            name = self.current
            if name.kind != "word":
                raise self.fail("expected a quantifier class name after 'Q'")
            try:
                quantifier_class(name.text)
            except UnsupportedError as exc:
                raise ParseError(str(exc), name.line, name.column) from None
            qclass = self.advance().text
        names = self.variables_until(".")
        if not names:
            raise self.fail("a quantifier needs at least one variable")
        self.expect(".")
        body = self.formula(0)
        if tok.text in ("E", "A"):
            for v in reversed(names):
                body = Quant(tok.text, (v,), body)
            return body
        return self._build(lambda: Quant(tok.text, names, body, qclass), tok)

    def literal_or_atom(self) -> Formula:
        tok = self.current
        if tok.kind == "end":
            raise self.fail("unexpected end of input")
        if tok.text == "!":
            self.advance()
            inner = self.current
            if inner.kind == "word" and self.peek().text == "(" and inner.text not in RESERVED:
                rel = self.relation()
                return Rel(rel.name, rel.args, negated=True)
            left = self.variable()
            self.expect("=")
            return Eq(left, self.variable(), negated=True)
        if tok.kind != "word":
            raise self.fail(f"unexpected {tok.text!r}")
        if tok.text == "NE":
            self.advance()
            return NonEmpty()
        if tok.text in _ATOMS:
            return self.atom()
        if self.peek().text == "(":
            return self.relation()
        left = self.variable()
        if self.current.text == "!=":
            self.advance()
            return Eq(left, self.variable(), negated=True)
        self.expect("=")
        return Eq(left, self.variable())

    def relation(self) -> Rel:
        name = self.advance().text
        self.expect("(")
        args = self.variables_until(")")
        self.expect(")")
        return Rel(name, args)

    def _build(self, make, tok: Token):
        try:
            return make()
        except (ArityError, ValueError) as exc:
            raise ParseError(str(exc), tok.line, tok.column) from None

    def atom(self) -> Formula:
        tok = self.advance()
        kind = tok.text
        self.expect("(")
        groups = [self.variables_until(";", ")")]
        while self.current.text == ";":
            self.advance()
            groups.append(self.variables_until(";", ")"))
        self.expect(")")
        expected = {"dep": 2, "exc": 2, "inc": 2, "ano": 2, "ind": 3}.get(kind, 1)
        if len(groups) != expected:
            raise ParseError(
                f"{kind} takes {expected} ';'-separated group(s), got {len(groups)}", tok.line, tok.column
            )
        if kind in ("dep", "ano") and len(groups[1]) != 1:
            hint = "; use const(...) for constancy" if kind == "dep" and not groups[1] else ""
            raise ParseError(f"{kind} needs exactly one variable after ';'{hint}", tok.line, tok.column)
        builders = {
            "dep": lambda: Dep(groups[0], groups[1][0]),
            "const": lambda: Const(groups[0]),
            "exc": lambda: Exc(groups[0], groups[1]),
            "inc": lambda: Inc(groups[0], groups[1]),
            "ano": lambda: Ano(groups[0], groups[1][0]),
            "ind": lambda: Ind(groups[0], groups[1], groups[2]),
            "even": lambda: Even(groups[0]),
            "half": lambda: Half(groups[0]),
        }
        return self._build(builders[kind], tok)


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()
