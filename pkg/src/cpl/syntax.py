"""Tokenizer and recursive-descent parser for the surface language.

Identifiers are runs of letters, digits, ``_``, ``'`` and ``!``, so ``0``,
``s``, ``in1``, ``dyn'`` and ``!`` are all identifiers.  Composition is
infix ``.``; parentheses may group but grouping is not retained.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .environment import Component, ObjectDeclaration
from .errors import CPLSyntaxError
from .functorial import FApp, FExpr, FVar
from .morphism import ID, Call, Expr, Name, comp

_TOKEN = re.compile(r"(?P<ws>\s+)|(?P<arrow>->)|(?P<ident>[A-Za-z0-9_'!]+)|(?P<punct>[().,:=;])")


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "ident", "punct", "arrow" or "eof"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens = []
    pos, col = 0, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise CPLSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        chunk = m.group()
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class Parser:
    def __init__(self, text: str, line: int = 1):
        self.tokens = tokenize(text, line)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def error(self, message: str, tok: Token | None = None) -> CPLSyntaxError:
        tok = tok or self.tok
        found = repr(tok.text) if tok.kind != "eof" else "end of input"
        return CPLSyntaxError(f"{message}, found {found}", tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected '{text}'")
        tok = self.tok
        self.i += 1
        return tok

    def ident(self, what: str = "identifier") -> str:
        if self.tok.kind != "ident":
            raise self.error(f"expected {what}")
        name = self.tok.text
        self.i += 1
        return name

    def end(self) -> None:
        self.accept(";")
        if self.tok.kind != "eof":
            raise self.error("unexpected trailing input")

    # -- morphism expressions ------------------------------------------------

    def expr(self) -> Expr:
        parts = [self.term()]
        while self.accept("."):
            parts.append(self.term())
        return comp(*parts)

    def term(self) -> Expr:
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        name = self.ident("expression")
        if name == "id":
            return ID
        if self.accept("("):
            args = [self.expr()]
            while self.accept(","):
                args.append(self.expr())
            self.expect(")")
            return Call(name, tuple(args))
        return Name(name)

    # -- declarations --------------------------------------------------------

    def declaration(self) -> ObjectDeclaration:
        side_tok = self.tok
        side = self.ident("'left' or 'right'")
        if side not in ("left", "right"):
            raise self.error("expected 'left' or 'right'", side_tok)
        self.expect("object")
        name = self.ident("object name")
        params: list[str] = []
        if self.accept("("):
            params.append(self.ident("parameter name"))
            while self.accept(","):
                params.append(self.ident("parameter name"))
            self.expect(")")
        self.expect("with")
        factorizer = self.ident("factorizer name")
        scope = {name: 0, **{p: k + 1 for k, p in enumerate(params)}}
        components = []
        if self.accept("is"):
            while not (self.at("end") and self.peek().text == "object"):
                cname = self.ident("component name or 'end object'")
                self.expect(":")
                dom = self.fexpr(scope)
                self.expect("->")
                cod = self.fexpr(scope)
                components.append(Component(cname, dom, cod))
        self.expect("end")
        self.expect("object")
        return ObjectDeclaration(side, name, tuple(params), factorizer, tuple(components))

    def fexpr(self, scope: dict[str, int]) -> FExpr:
        tok = self.tok
        name = self.ident("functorial expression")
        if self.accept("("):
            args = [self.fexpr(scope)]
            while self.accept(","):
                args.append(self.fexpr(scope))
            self.expect(")")
            if name in scope:
                raise self.error(f"'{name}' cannot take arguments here", tok)
            return FApp(name, tuple(args))
        if name in scope:
            return FVar(scope[name])
        return FApp(name)


def parse_expr(text: str, line: int = 1) -> Expr:
    p = Parser(text, line)
    e = p.expr()
    p.end()
    return e


def parse_declaration(text: str, line: int = 1) -> ObjectDeclaration:
    p = Parser(text, line)
    d = p.declaration()
    p.end()
    return d
