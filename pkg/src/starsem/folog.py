"""First-order formulas over word positions with a neighbour predicate.

Atoms speak about positions 1..|w| of a nonempty word: P_a(t) holds when the
letter at t is a, N(t, t') when the positions are adjacent (|t - t'| = 1,
direction-blind), and t = t' when they coincide. Terms are variables or the
constants min and max (first and last position). Quantifiers range over
positions.

Grammar (whitespace between tokens is free):

    form := quant | imp
    quant:= ('exists' | 'forall') VAR '.' form
    imp  := disj (('->' | '<->') imp)?
    disj := conj ('|' conj)*
    conj := neg ('&' neg)*
    neg  := '!' neg | quant | atom
    atom := 'P_' LETTER '(' term ')' | 'N' '(' term ',' term ')'
          | term '=' term | '(' form ')'
    term := VAR | 'min' | 'max'

A quantifier is allowed wherever a negation is and its scope extends as far
right as possible, so "A & forall x. B & C" reads as A & (forall x. (B & C)).
'->' and '<->' are sugar and desugared while parsing. 'exists', 'forall',
'min', 'max' and 'N' are reserved; variable names may not start with 'P_'.

Every variable must be bound by a quantifier; parsing rejects unbound names.
Formulas assembled by hand may have free variables and `evaluate` takes an
environment for them. The empty word has no positions, so no formula holds
on it: languages defined here live in A+.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import Alphabet
from .errors import ParseError
from .words import words_up_to


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class LetterAt(Formula):
    letter: str
    term: str


@dataclass(frozen=True)
class Adjacent(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Equals(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Not(Formula):
    inner: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: tuple


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


_RESERVED = {"exists", "forall", "min", "max", "N"}
_PUNCT = ("<->", "->", "|", "&", "!", "(", ")", ".", ",", "=")


def _tokenize(text):
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                out.append((p, p, i))
                i += len(p)
                break
        else:
            if c.isalpha() or c == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                out.append(("name", text[i:j], i))
                i = j
            else:
                raise ParseError(f"unexpected character {c!r}", i)
    return out


class _Parser:
    def __init__(self, tokens, alphabet, length):
        self.tokens = tokens
        self.alphabet = alphabet
        self.length = length
        self.pos = 0
        self.scope = []

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self):
        if self.pos >= len(self.tokens):
            raise ParseError("unexpected end of formula", self.length)
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, got {tok[1]!r}", tok[2])
        return tok

    def form(self):
        return self.quantified() if self.at_quantifier() else self.imp()

    def at_quantifier(self):
        return (self.pos < len(self.tokens)
                and self.tokens[self.pos][:2] in (("name", "exists"), ("name", "forall")))

    def quantified(self):
        _, word, _ = self.take()
        tok = self.expect("name")
        var = tok[1]
        if var in _RESERVED or var.startswith("P_"):
            raise ParseError(f"{var!r} cannot be used as a variable", tok[2])
        self.expect(".")
        self.scope.append(var)
        body = self.form()
        self.scope.pop()
        return Exists(var, body) if word == "exists" else Forall(var, body)

    def imp(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Or((Not(left), self.imp()))
        if self.peek() == "<->":
            self.take()
            right = self.imp()
            return And((Or((Not(left), right)), Or((Not(right), left))))
        return left

    def disj(self):
        parts = [self.conj()]
        while self.peek() == "|":
            self.take()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj(self):
        parts = [self.neg()]
        while self.peek() == "&":
            self.take()
            parts.append(self.neg())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def neg(self):
        if self.peek() == "!":
            self.take()
            return Not(self.neg())
        if self.at_quantifier():
            return self.quantified()
        return self.atom()

    def atom(self):
        if self.peek() == "(":
            self.take()
            node = self.form()
            self.expect(")")
            return node
        tok = self.expect("name")
        name = tok[1]
        if name.startswith("P_"):
            letter = name[2:]
            if len(letter) != 1:
                raise ParseError(f"malformed letter predicate {name!r}", tok[2])
            if letter not in self.alphabet:
                raise ParseError(f"unknown letter {letter!r}", tok[2])
            self.expect("(")
            t = self.term()
            self.expect(")")
            return LetterAt(letter, t)
        if name == "N":
            self.expect("(")
            s = self.term()
            self.expect(",")
            t = self.term()
            self.expect(")")
            return Adjacent(s, t)
        s = self.term(tok)
        self.expect("=")
        return Equals(s, self.term())

    def term(self, tok=None):
        if tok is None:
            tok = self.expect("name")
        name = tok[1]
        if name in ("min", "max"):
            return name
        if name in _RESERVED or name.startswith("P_"):
            raise ParseError(f"{name!r} is not a term", tok[2])
        if name not in self.scope:
            raise ParseError(f"unbound variable {name!r}", tok[2])
        return name


def parse_formula(text: str, alphabet: Alphabet) -> Formula:
    if not text.strip():
        raise ParseError("empty formula", 0)
    p = _Parser(_tokenize(text), alphabet, len(text))
    node = p.form()
    if p.pos != len(p.tokens):
        tok = p.tokens[p.pos]
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return node


def free_variables(f: Formula, bound=frozenset()) -> set:
    if isinstance(f, (Exists, Forall)):
        return free_variables(f.body, bound | {f.var})
    if isinstance(f, Not):
        return free_variables(f.inner, bound)
    if isinstance(f, (And, Or)):
        out = set()
        for p in f.parts:
            out |= free_variables(p, bound)
        return out
    terms = (f.term,) if isinstance(f, LetterAt) else (f.left, f.right)
    return {t for t in terms if t not in ("min", "max") and t not in bound}


def evaluate(f: Formula, w: str, env=None) -> bool:
    """Truth of f on w, positions 1..|w|, free variables read from env."""
    if not w:
        raise ValueError("no formula holds on the empty word; languages live in A+")
    n = len(w)
    positions = range(1, n + 1)

    def value(t, env):
        if t == "min":
            return 1
        if t == "max":
            return n
        try:
            return env[t]
        except KeyError:
            raise ValueError(f"no binding for variable {t!r}") from None

    def ev(node, env):
        if isinstance(node, LetterAt):
            return w[value(node.term, env) - 1] == node.letter
        if isinstance(node, Adjacent):
            return abs(value(node.left, env) - value(node.right, env)) == 1
        if isinstance(node, Equals):
            return value(node.left, env) == value(node.right, env)
        if isinstance(node, Not):
            return not ev(node.inner, env)
        if isinstance(node, And):
            return all(ev(p, env) for p in node.parts)
        if isinstance(node, Or):
            return any(ev(p, env) for p in node.parts)
        if isinstance(node, Exists):
            return any(ev(node.body, {**env, node.var: i}) for i in positions)
        return all(ev(node.body, {**env, node.var: i}) for i in positions)

    return ev(f, dict(env) if env else {})


def bounded_language(f: Formula, alphabet: Alphabet, maxlen: int) -> list:
    """All words of length <= maxlen satisfying the sentence f, length-lex."""
    fv = free_variables(f)
    if fv:
        raise ValueError(f"not a sentence; free variables {sorted(fv)}")
    return [w for w in words_up_to(alphabet, maxlen) if evaluate(f, w)]


def consistency_check(f: Formula, d, maxlen: int):
    """Compare the sentence f against a DFA on all words of length <= maxlen.

    Returns (True, None) on agreement, else (False, first word they
    disagree on). The empty word is outside the comparison: formulas never
    hold on it.
    """
    fv = free_variables(f)
    if fv:
        raise ValueError(f"not a sentence; free variables {sorted(fv)}")
    for w in words_up_to(d.alphabet, maxlen):
        if evaluate(f, w) != d.member(w):
            return False, w
    return True, None
