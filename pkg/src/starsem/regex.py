"""Small regular-expression language over single-letter atoms.

Grammar:
    expr   := term ('|' term)*
    term   := factor+
    factor := atom ('*' | '+')?
    atom   := LETTER | '(' expr ')'

No escapes, no character classes, no empty regex. Whitespace is not allowed;
any letter must belong to the alphabet the regex is later compiled against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError


class Regex:
    __slots__ = ()


@dataclass(frozen=True)
class Letter(Regex):
    a: str


@dataclass(frozen=True)
class Concat(Regex):
    parts: tuple


@dataclass(frozen=True)
class Union(Regex):
    parts: tuple


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


@dataclass(frozen=True)
class Plus(Regex):
    inner: Regex


_SPECIAL = set("|()*+")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def expr(self):
        parts = [self.term()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def term(self):
        parts = [self.factor()]
        while self.peek() is not None and self.peek() not in "|)":
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def factor(self):
        node = self.atom()
        c = self.peek()
        if c == "*":
            self.pos += 1
            node = Star(node)
        elif c == "+":
            self.pos += 1
            node = Plus(node)
        return node

    def atom(self):
        c = self.peek()
        if c is None:
            raise ParseError("unexpected end of regex", self.pos)
        if c == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                raise ParseError("missing closing parenthesis", self.pos)
            self.pos += 1
            return node
        if c in _SPECIAL:
            raise ParseError(f"unexpected {c!r}", self.pos)
        if c.isspace():
            raise ParseError("whitespace not allowed in regex", self.pos)
        self.pos += 1
        return Letter(c)


def parse_regex(text: str) -> Regex:
    if not text:
        raise ParseError("empty regex", 0)
    p = _Parser(text)
    node = p.expr()
    if p.pos != len(text):
        raise ParseError(f"trailing input {text[p.pos:]!r}", p.pos)
    return node


def regex_letters(r: Regex) -> set:
    if isinstance(r, Letter):
        return {r.a}
    if isinstance(r, (Concat, Union)):
        out = set()
        for p in r.parts:
            out |= regex_letters(p)
        return out
    return regex_letters(r.inner)


@dataclass(frozen=True)
class _Eps(Regex):
    pass


_EPSILON = _Eps()


def matches_empty(r: Regex) -> bool:
    if isinstance(r, Letter):
        return False
    if isinstance(r, (Star, _Eps)):
        return True
    if isinstance(r, Plus):
        return matches_empty(r.inner)
    if isinstance(r, Concat):
        return all(matches_empty(p) for p in r.parts)
    return any(matches_empty(p) for p in r.parts)


def _derive(r: Regex, a: str):
    """Brzozowski derivative; None plays the empty language."""
    if isinstance(r, _Eps):
        return None
    if isinstance(r, Letter):
        return _EPSILON if r.a == a else None
    if isinstance(r, Union):
        parts = [d for p in r.parts if (d := _derive(p, a)) is not None]
        if not parts:
            return None
        return parts[0] if len(parts) == 1 else Union(tuple(parts))
    if isinstance(r, Star):
        d = _derive(r.inner, a)
        return None if d is None else _seq(d, r)
    if isinstance(r, Plus):
        d = _derive(r.inner, a)
        return None if d is None else _seq(d, Star(r.inner))
    # Concat
    first, rest = r.parts[0], r.parts[1:]
    tail = rest[0] if len(rest) == 1 else Concat(rest)
    d = _derive(first, a)
    out = None if d is None else _seq(d, tail)
    if matches_empty(first):
        d2 = _derive(tail, a)
        if d2 is not None:
            out = d2 if out is None else Union((out, d2))
    return out


def _seq(x, y):
    if isinstance(x, _Eps):
        return y
    if isinstance(y, _Eps):
        return x
    return Concat((x, y))


def regex_match(r: Regex, w: str) -> bool:
    """Derivative-based matcher, independent of the automaton pipeline.

    Deliberately naive; exists as an oracle for round-trip tests.
    """
    cur = r
    for a in w:
        cur = None if isinstance(cur, _Eps) else _derive(cur, a)
        if cur is None:
            return False
    return isinstance(cur, _Eps) or matches_empty(cur)
