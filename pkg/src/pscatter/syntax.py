"""Text syntax for ordinals and space terms.

Term grammar (whitespace is insignificant)::

    term    := item ("+" item)*
    item    := mult "*" primary | primary
    primary := "0" | "pt" | "isum" | "J(" ord ")" | "i(" nat ")"
             | "cone(" term ")" | "(" term ")"
    mult    := nat | "w" | "w1"

Ordinal grammar::

    ord   := oterm ("+" oterm)*
    oterm := nat | base ["^" atom] ["*" atom]
    base  := "w" | "w1"
    atom  := nat | "w" | "w1" | "(" ord ")"

``ω`` and ``ω₁`` are accepted as aliases of ``w`` and ``w1``.
"""
from __future__ import annotations

import re

from .ordinal import OMEGA, OMEGA1, ONE, Ordinal, format_ordinal, ord_add, ord_mul, omega1_pow, omega_pow
from .terms import (
    EMPTY,
    ISUM,
    PT,
    Cone,
    Empty,
    ISumOmega,
    Jlim,
    Mult,
    Pt,
    Sum,
    Term,
    TermError,
    build_i,
    build_J,
    is_i,
    is_J,
    make_sum,
)

__all__ = ["ParseError", "parse_term", "parse_ordinal", "format_term", "format_ordinal"]


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


def _tokenize(text: str):
    text = text.replace("ω₁", "w1").replace("ω1", "w1").replace("ω", "w")
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            if sym not in "()+*^":
                raise ParseError(f"unexpected character {sym!r}", start)
            out.append(("sym", sym, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.tok
        if t[0] != kind or (value is not None and t[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {t[1] if t[1] is not None else 'end of input'!r}", t[2])
        return self.advance()

    def at(self, kind, value=None):
        t = self.tok
        return t[0] == kind and (value is None or t[1] == value)

    def done(self):
        if not self.at("end"):
            raise ParseError(f"unexpected {self.tok[1]!r}", self.tok[2])

    # -- ordinals ----------------------------------------------------------
    def ordinal(self) -> Ordinal:
        value = self.oterm()
        while self.at("sym", "+"):
            self.advance()
            value = ord_add(value, self.oterm())
        return value

    def oterm(self) -> Ordinal:
        t = self.tok
        if t[0] == "num":
            self.advance()
            return Ordinal.of(t[1])
        if t[0] == "name" and t[1] in ("w", "w1"):
            self.advance()
            exp = ONE
            if self.at("sym", "^"):
                self.advance()
                exp = self.atom()
            coeff = ONE
            if self.at("sym", "*"):
                self.advance()
                coeff = self.atom()
            if not exp.is_countable or not coeff.is_countable:
                raise ParseError("exponents and coefficients must be countable", t[2])
            if t[1] == "w":
                return ord_mul(omega_pow(exp), coeff)
            return omega1_pow(exp, coeff)
        raise ParseError(f"expected an ordinal, found {t[1]!r}", t[2])

    def atom(self) -> Ordinal:
        t = self.tok
        if t[0] == "num":
            self.advance()
            return Ordinal.of(t[1])
        if t[0] == "name" and t[1] == "w":
            self.advance()
            return OMEGA
        if t[0] == "name" and t[1] == "w1":
            self.advance()
            return OMEGA1
        if t[0] == "sym" and t[1] == "(":
            self.advance()
            v = self.ordinal()
            self.expect("sym", ")")
            return v
        raise ParseError(f"expected an ordinal atom, found {t[1]!r}", t[2])

    # -- terms ---------------------------------------------------------------
    def term(self) -> Term:
        items = [self.item()]
        while self.at("sym", "+"):
            self.advance()
            items.append(self.item())
        if len(items) == 1:
            return items[0][1] if items[0][0] == 1 else make_sum(items)
        return make_sum(items)

    def item(self):
        t = self.tok
        if t[0] in ("num", "name") and self.peek()[0] == "sym" and self.peek()[1] == "*":
            if t[0] == "name" and t[1] not in ("w", "w1"):
                raise ParseError(f"bad multiplicity {t[1]!r}", t[2])
            self.advance()
            self.advance()
            m = Mult.of(t[1])
            return (m, self.primary())
        return (Mult(1), self.primary())

    def primary(self) -> Term:
        t = self.tok
        if t[0] == "num":
            if t[1] != 0:
                raise ParseError("a bare number must be 0 (the empty space)", t[2])
            self.advance()
            return EMPTY
        if t[0] == "sym" and t[1] == "(":
            self.advance()
            v = self.term()
            self.expect("sym", ")")
            return v
        if t[0] != "name":
            raise ParseError(f"expected a term, found {t[1]!r}", t[2])
        name = t[1]
        if name == "pt":
            self.advance()
            return PT
        if name == "isum":
            self.advance()
            return ISUM
        if name == "J":
            self.advance()
            self.expect("sym", "(")
            a = self.ordinal()
            self.expect("sym", ")")
            try:
                return build_J(a)
            except TermError as exc:
                raise TermError(f"{exc} (at position {t[2]})") from None
        if name == "i":
            self.advance()
            self.expect("sym", "(")
            n = self.expect("num")[1]
            self.expect("sym", ")")
            return build_i(n)
        if name == "cone":
            self.advance()
            self.expect("sym", "(")
            body = self.term()
            self.expect("sym", ")")
            if isinstance(body, Empty):
                raise TermError(f"cone slice must be nonempty (at position {t[2]})")
            return Cone(body)
        raise ParseError(f"unknown name {name!r}", t[2])


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_ordinal(text: str) -> Ordinal:
    p = _Parser(text)
    o = p.ordinal()
    p.done()
    return o


def format_term(t: Term) -> str:
    if isinstance(t, Empty):
        return "0"
    if isinstance(t, Pt):
        return "pt"
    if isinstance(t, ISumOmega):
        return "isum"
    if isinstance(t, Jlim):
        return f"J({format_ordinal(t.lam)})"
    if isinstance(t, Cone):
        a = is_J(t)
        if a is not None:
            return f"J({format_ordinal(a)})"
        n = is_i(t)
        if n is not None:
            return f"i({n})"
        return f"cone({format_term(t.slice)})"
    if isinstance(t, Sum):
        parts = []
        for m, s in t.entries:
            body = format_term(s)
            if isinstance(s, Sum):
                body = f"({body})"
            parts.append(body if m == 1 else f"{m}*{body}")
        return " + ".join(parts)
    raise TypeError(f"not a term: {t!r}")
