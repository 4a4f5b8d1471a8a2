"""Recursive-descent parser for the concrete grammar.

    type  ::= 'mu' x '.' type | tatom ('->' type)?
    tatom ::= 'Int' | 'Top' | x | '(' type ')'
    cast  ::= carr (';' carr)*                    -- left associative
    carr  ::= catom ('->' carr)?
    catom ::= 'id' | 'fold' '[' type ']' | 'unfold' '[' type ']' | i
            | 'fix' i (':' type '=>' type)? '.' cast | '(' cast ')'
    term  ::= '\\' x ':' type '.' term | atom+     -- a lambda may close an application
    atom  ::= x | n | '(' term ')' | 'cast' '<' cast '>' '(' term ')'
"""
from __future__ import annotations

import re

from ..errors import ParseError
from .syntax import (
    INT, TOP, Abs, App, Arrow, ArrowC, CastApp, CVar, Fix, Fold, ID, IntLit, Mu,
    Seq, TBound, TVar, Unfold, Var,
)

KEYWORDS = {"Int", "Top", "mu", "id", "fold", "unfold", "fix", "cast"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>->|=>|[()\[\]<>.:;\\])
    """,
    re.VERBOSE,
)


def tokenize(src: str) -> list[tuple[str, str, int]]:
    toks, pos = [], 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r} at offset {pos}")
        kind = m.lastgroup
        if kind != "ws":
            toks.append((kind, m.group(), pos))
        pos = m.end()
    toks.append(("eof", "", pos))
    return toks


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    # -- token helpers
    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text) -> bool:
        kind, val, _ = self.peek()
        return val == text and kind in ("sym", "ident")

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def ident(self):
        kind, val, _ = self.peek()
        if kind != "ident" or val in KEYWORDS:
            self.error("expected an identifier")
        self.advance()
        return val

    def error(self, msg):
        kind, val, pos = self.peek()
        found = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"{msg}, found {found} at offset {pos}")

    def done(self):
        if self.peek()[0] != "eof":
            self.error("trailing input")

    # -- types
    def type_(self, env=()):
        if self.at("mu"):
            self.advance()
            name = self.ident()
            self.expect(".")
            body = self.type_(env + (name,))
            return Mu(body, name)
        left = self.type_atom(env)
        if self.at("->"):
            self.advance()
            return Arrow(left, self.type_(env))
        return left

    def type_atom(self, env):
        if self.at("Int"):
            self.advance()
            return INT
        if self.at("Top"):
            self.advance()
            return TOP
        if self.at("("):
            self.advance()
            t = self.type_(env)
            self.expect(")")
            return t
        name = self.ident()
        for depth, bound in enumerate(reversed(env)):
            if bound == name:
                return TBound(depth)
        return TVar(name)

    # -- casts
    def cast(self):
        c = self.cast_arrow()
        while self.at(";"):
            self.advance()
            c = Seq(c, self.cast_arrow())
        return c

    def cast_arrow(self):
        c = self.cast_atom()
        if self.at("->"):
            self.advance()
            return ArrowC(c, self.cast_arrow())
        return c

    def cast_atom(self):
        if self.at("id"):
            self.advance()
            return ID
        if self.at("fold") or self.at("unfold"):
            kw = self.advance()[1]
            self.expect("[")
            t = self.type_()
            self.expect("]")
            if not isinstance(t, Mu):
                self.error(f"{kw} annotation must be a recursive type")
            return Fold(t) if kw == "fold" else Unfold(t)
        if self.at("fix"):
            self.advance()
            name = self.ident()
            declared = None
            if self.at(":"):
                self.advance()
                src = self.type_()
                self.expect("=>")
                tgt = self.type_()
                declared = (src, tgt)
            self.expect(".")
            return Fix(name, self.cast(), declared)
        if self.at("("):
            self.advance()
            c = self.cast()
            self.expect(")")
            return c
        return CVar(self.ident())

    # -- terms
    def term(self):
        if self.at("\\"):
            return self.lam()
        fn = self.term_atom()
        while True:
            if self.at("\\"):
                return App(fn, self.lam())
            if not self.starts_atom():
                return fn
            fn = App(fn, self.term_atom())

    def lam(self):
        self.expect("\\")
        x = self.ident()
        self.expect(":")
        t = self.type_()
        self.expect(".")
        return Abs(x, t, self.term())

    def starts_atom(self):
        kind, val, _ = self.peek()
        if kind == "int":
            return True
        if kind == "ident":
            return val == "cast" or val not in KEYWORDS
        return val == "("

    def term_atom(self):
        kind, val, _ = self.peek()
        if kind == "int":
            self.advance()
            return IntLit(int(val))
        if self.at("("):
            self.advance()
            e = self.term()
            self.expect(")")
            return e
        if self.at("cast"):
            self.advance()
            self.expect("<")
            c = self.cast()
            self.expect(">")
            self.expect("(")
            e = self.term()
            self.expect(")")
            return CastApp(c, e)
        return Var(self.ident())


def parse_type(src: str):
    p = Parser(src)
    t = p.type_()
    p.done()
    return t


def parse_cast(src: str):
    p = Parser(src)
    c = p.cast()
    p.done()
    return c


def parse_term(src: str):
    p = Parser(src)
    e = p.term()
    p.done()
    return e

