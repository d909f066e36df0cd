"""Text syntax for algebra elements.

    elem   := ['-'] term (('+' | '-') term)*
    term   := coeff | [coeff '*'] factor ('.' factor)*
    coeff  := INT ['/' INT] | '(' literal (',' literal)* ')'
    factor := NAME ['^*']

``e^*`` is the ghost of edge ``e``.  A bare NAME is a vertex or an edge; a name
used for both is rejected as ambiguous.  The zero element renders as ``0``.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING

from .errors import ParseError
from .rings import PRODUCT, parse_literal

if TYPE_CHECKING:
    from .lpa import LeavittPathAlgebra, NormalElement

_TOKEN = re.compile(
    r"\s*(?:(?P<tuple>\([^()]*\))|(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<ghost>\^\*)|(?P<op>[-+*.]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", line=1, column=col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, algebra: "LeavittPathAlgebra", text: str):
        self.alg = algebra
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg: str, tok=None):
        col = tok[2] if tok else len(self.text) + 1
        raise ParseError(msg, line=1, column=col)

    def parse(self) -> "NormalElement":
        if not self.toks:
            self.fail("empty expression")
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        total = self.term().scale(sign)
        while self.peek() is not None:
            tok = self.take()
            if tok[0] != "op" or tok[1] not in "+-":
                self.fail(f"expected '+' or '-', found {tok[1]!r}", tok)
            t = self.term()
            total = total + t if tok[1] == "+" else total - t
        return total

    def term(self) -> "NormalElement":
        tok = self.peek()
        if tok is None:
            self.fail("expected a term")
        coeff = 1
        if tok[0] in ("num", "tuple"):
            self.take()
            try:
                coeff = self.alg.ring.coerce(parse_literal(tok[1]))
            except ParseError as exc:
                self.fail(str(exc), tok)
            except ValueError as exc:
                self.fail(str(exc), tok)
            nxt = self.peek()
            if nxt is None or (nxt[0] == "op" and nxt[1] in "+-"):
                return self.alg.one().scale(coeff)
            if not (nxt[0] == "op" and nxt[1] == "*"):
                self.fail("expected '*' after coefficient", nxt)
            self.take()
        x = self.factor()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] != ".":
                break
            self.take()
            x = x * self.factor()
        return x.scale(coeff)

    def factor(self) -> "NormalElement":
        tok = self.take()
        if tok is None or tok[0] != "name":
            self.fail("expected a vertex or edge name", tok)
        name = tok[1]
        g = self.alg.graph
        nxt = self.peek()
        if nxt is not None and nxt[0] == "ghost":
            self.take()
            if not g.has_edge(name):
                self.fail(f"unknown edge {name!r}", tok)
            return self.alg.ghost(name)
        is_v, is_e = g.has_vertex(name), g.has_edge(name)
        if is_v and is_e:
            self.fail(f"name {name!r} is both a vertex and an edge", tok)
        if is_v:
            return self.alg.vertex(name)
        if is_e:
            return self.alg.edge(name)
        self.fail(f"unknown generator {name!r}", tok)


def parse_element(algebra: "LeavittPathAlgebra", text: str) -> "NormalElement":
    return _Parser(algebra, text).parse()


def _monomial_text(key) -> str:
    from .lpa import render_key

    return render_key(key)


def render_element(x: "NormalElement") -> str:
    R = x.ring
    terms = x.terms()
    if not terms:
        return "0"
    out = []
    for key, c in terms:
        mono = _monomial_text(key)
        if R.kind == PRODUCT:
            body = mono if R.is_one(c) else f"{R.render(c)}*{mono}"
            out.append(("+", body))
            continue
        neg = c < 0
        a = -c if neg else c
        body = mono if a == 1 else f"{a}*{mono}"
        out.append(("-" if neg else "+", body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text
