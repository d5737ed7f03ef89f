"""Text syntax for class expressions.

Grammar (whitespace is ignored)::

    expr    := ["+" | "-"] term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := atom ["^" INT]
    atom    := INT ["/" INT]
             | ("psi" | "psih" | "lambda") "(" INT ")"
             | ("D" | "Delta") "(" INT ("," INT)+ ")"
             | "(" expr ")"

Example: ``3/2 * psi(1)^2 * psih(3) * D(1,2,4) - Delta(1,2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExprParseError
from .hassett import TautExpr

__all__ = ["parse_expr", "format_expr"]

_TOKEN = re.compile(r"\s*(?:(\d+)|(Delta|psih|psi|lambda|D)|(.))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "sym", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            start = m.start(2)
            # reject identifiers such as "psix" or "Dx" instead of splitting them
            tail = re.match(r"[A-Za-z_]\w*", text[start:])
            if tail.group(0) != m.group(2):
                raise ExprParseError(f"unknown name {tail.group(0)!r}", text, start)
            toks.append(_Tok("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*/^(),":
                if ch.isalpha() or ch == "_":
                    word = re.match(r"[A-Za-z_]\w*", text[m.start(3):]).group(0)
                    raise ExprParseError(f"unknown name {word!r}", text, m.start(3))
                raise ExprParseError(f"unexpected character {ch!r}", text, m.start(3))
            toks.append(_Tok("sym", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, d: int | None, m: int | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.d = d
        self.m = m

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ExprParseError(msg, self.text, tok.pos)

    def expect(self, sym: str) -> _Tok:
        tok = self.peek()
        if tok.kind != "sym" or tok.text != sym:
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            self.fail(f"expected {sym!r}, found {found}")
        return self.take()

    def integer(self) -> tuple[int, _Tok]:
        tok = self.peek()
        if tok.kind != "int":
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            self.fail(f"expected an integer, found {found}")
        self.take()
        return int(tok.text), tok

    def parse(self) -> TautExpr:
        if self.peek().kind == "end":
            self.fail("empty expression")
        e = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return e

    def expr(self) -> TautExpr:
        sign = 1
        tok = self.peek()
        if tok.kind == "sym" and tok.text in "+-":
            self.take()
            sign = -1 if tok.text == "-" else 1
        out = self.term() * sign
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text in "+-":
                self.take()
                t = self.term()
                out = out + t if tok.text == "+" else out - t
            else:
                return out

    def term(self) -> TautExpr:
        out = self.factor()
        while self.peek().kind == "sym" and self.peek().text == "*":
            self.take()
            out = out * self.factor()
        return out

    def factor(self) -> TautExpr:
        base = self.atom()
        if self.peek().kind == "sym" and self.peek().text == "^":
            self.take()
            k, _ = self.integer()
            return base**k
        return base

    def check_index(self, value: int, tok: _Tok, bound: int | None, what: str):
        if value < 1 or (bound is not None and value > bound):
            rng = f"1..{bound}" if bound is not None else ">= 1"
            self.fail(f"{what} index {value} out of range ({rng})", tok)

    def atom(self) -> TautExpr:
        tok = self.peek()
        if tok.kind == "int":
            num, _ = self.integer()
            nxt = self.peek()
            if nxt.kind == "sym" and nxt.text == "/":
                self.take()
                den, dtok = self.integer()
                if den == 0:
                    self.fail("zero denominator", dtok)
                return TautExpr.const(Fraction(num, den))
            return TautExpr.const(num)
        if tok.kind == "sym" and tok.text == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "name":
            self.take()
            self.expect("(")
            if tok.text in ("psi", "psih", "lambda"):
                i, itok = self.integer()
                self.expect(")")
                if tok.text == "psi":
                    self.check_index(i, itok, self.m, "psi")
                    return TautExpr.psi(i)
                if tok.text == "psih":
                    self.check_index(i, itok, self.d, "psih")
                    return TautExpr.psih(i)
                self.check_index(i, itok, None, "lambda")
                return TautExpr.hodge(i)
            members = []
            while True:
                j, jtok = self.integer()
                self.check_index(j, jtok, self.d, tok.text)
                if j in members:
                    self.fail(f"repeated index {j} in {tok.text}-set", jtok)
                members.append(j)
                if self.peek().kind == "sym" and self.peek().text == ",":
                    self.take()
                    continue
                break
            self.expect(")")
            if len(members) < 2:
                self.fail(f"{tok.text}-set needs at least two indices", tok)
            return TautExpr.D(members) if tok.text == "D" else TautExpr.Delta(members)
        if tok.kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {tok.text!r}")


def parse_expr(text: str, d: int | None = None, m: int | None = None) -> TautExpr:
    """Parse ``text``; ``d`` and ``m`` bound the light and heavy marking indices."""
    return _Parser(text, d, m).parse()


def format_expr(e: TautExpr) -> str:
    return e.format()
