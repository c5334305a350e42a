"""Complete DFAs over an involutory alphabet, with A+ language semantics.

Every automaton here is complete (a sink is added where needed) and its
language is taken to be a set of *non-empty* words; the empty word is never a
member, and complement is relative to A+. `minimize` therefore first makes
the initial state's finality irrelevant (fresh initial with no incoming
edges, marked non-final) so that minimal automata are canonical for the A+
language and structural equality after BFS renumbering decides equality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .alphabet import Alphabet
from .errors import ParseError, ResourceLimitError
from .regex import Regex, parse_regex, regex_letters
from .words import word_involution

DEFAULT_STATE_BUDGET = 1_000_000


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    trans: tuple  # trans[state][letter_index] -> state
    initial: int
    finals: frozenset

    @property
    def n(self):
        return len(self.trans)

    def step(self, q, a):
        return self.trans[q][self.alphabet.index(a)]

    def run(self, w, q=None):
        q = self.initial if q is None else q
        for a in w:
            q = self.trans[q][self.alphabet.index(a)]
        return q

    def member(self, w):
        self.alphabet.check_word(w)
        if not w:
            return False
        return self.run(w) in self.finals


def _bfs_order(trans, initial):
    order = [initial]
    seen = {initial}
    for q in order:
        for q2 in trans[q]:
            if q2 not in seen:
                seen.add(q2)
                order.append(q2)
    return order


def _renumber(d: Dfa) -> Dfa:
    """Drop unreachable states and renumber in BFS/letter order (canonical)."""
    order = _bfs_order(d.trans, d.initial)
    remap = {q: i for i, q in enumerate(order)}
    trans = tuple(tuple(remap[d.trans[q][x]] for x in range(len(d.alphabet))) for q in order)
    finals = frozenset(remap[q] for q in d.finals if q in remap)
    return Dfa(d.alphabet, trans, 0, finals)


def _split_initial(d: Dfa) -> Dfa:
    """Fresh non-final initial state with no incoming edges, same behaviour."""
    fresh = d.n
    trans = [tuple(row) for row in d.trans]
    trans.append(tuple(d.trans[d.initial]))
    return Dfa(d.alphabet, tuple(trans), fresh, frozenset(d.finals))


def minimize(d: Dfa) -> Dfa:
    """Canonical minimal DFA for the A+ language of d."""
    d = _renumber(_split_initial(d))
    n = len(d.trans)
    na = len(d.alphabet)
    # Moore partition refinement; sizes here never warrant Hopcroft
    block = [1 if q in d.finals else 0 for q in range(n)]
    while True:
        signat = {}
        new_block = [0] * n
        for q in range(n):
            sig = (block[q],) + tuple(block[d.trans[q][x]] for x in range(na))
            if sig not in signat:
                signat[sig] = len(signat)
            new_block[q] = signat[sig]
        if new_block == block:
            break
        block = new_block
    k = max(block) + 1
    trans = [None] * k
    for q in range(n):
        trans[block[q]] = tuple(block[d.trans[q][x]] for x in range(na))
    finals = frozenset(block[q] for q in d.finals)
    return _renumber(Dfa(d.alphabet, tuple(trans), block[d.initial], finals))


def equal_language(d1: Dfa, d2: Dfa) -> bool:
    if d1.alphabet != d2.alphabet:
        raise ValueError("alphabet mismatch")
    return minimize(d1) == minimize(d2)


# ---------------------------------------------------------------- NFA side


@dataclass
class Nfa:
    alphabet: Alphabet
    n: int
    edges: list  # edges[state] -> list[(letter_index, state)]
    eps: list  # eps[state] -> list[state]
    initial: set = field(default_factory=set)
    finals: set = field(default_factory=set)

    def add_state(self):
        self.edges.append([])
        self.eps.append([])
        self.n += 1
        return self.n - 1


def _eps_closure(nfa, states):
    out = set(states)
    stack = list(states)
    while stack:
        q = stack.pop()
        for q2 in nfa.eps[q]:
            if q2 not in out:
                out.add(q2)
                stack.append(q2)
    return frozenset(out)


def nfa_to_dfa(nfa: Nfa, budget: int = DEFAULT_STATE_BUDGET) -> Dfa:
    """Subset construction; raises ResourceLimitError past the state budget."""
    na = len(nfa.alphabet)
    start = _eps_closure(nfa, nfa.initial)
    index = {start: 0}
    rows = []
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        row = []
        for x in range(na):
            nxt = set()
            for q in cur:
                for xi, q2 in nfa.edges[q]:
                    if xi == x:
                        nxt.add(q2)
            nxt = _eps_closure(nfa, nxt)
            if nxt not in index:
                if len(index) >= budget:
                    raise ResourceLimitError(
                        "determinization exceeded state budget",
                        budget=budget,
                        reached=len(index),
                    )
                index[nxt] = len(index)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    finals = frozenset(i for s, i in index.items() if s & nfa.finals)
    return _renumber(Dfa(nfa.alphabet, tuple(rows), 0, finals))


def _thompson(r: Regex, alphabet: Alphabet, nfa: Nfa):
    """Returns (entry, exit) state pair for r."""
    from . import regex as rx

    if isinstance(r, rx.Letter):
        i, o = nfa.add_state(), nfa.add_state()
        nfa.edges[i].append((alphabet.index(r.a), o))
        return i, o
    if isinstance(r, rx.Concat):
        first = prev = _thompson(r.parts[0], alphabet, nfa)
        for p in r.parts[1:]:
            nxt = _thompson(p, alphabet, nfa)
            nfa.eps[prev[1]].append(nxt[0])
            prev = nxt
        return first[0], prev[1]
    if isinstance(r, rx.Union):
        i, o = nfa.add_state(), nfa.add_state()
        for p in r.parts:
            pi, po = _thompson(p, alphabet, nfa)
            nfa.eps[i].append(pi)
            nfa.eps[po].append(o)
        return i, o
    if isinstance(r, rx.Star):
        i, o = nfa.add_state(), nfa.add_state()
        pi, po = _thompson(r.inner, alphabet, nfa)
        nfa.eps[i].extend([pi, o])
        nfa.eps[po].extend([pi, o])
        return i, o
    if isinstance(r, rx.Plus):
        pi, po = _thompson(r.inner, alphabet, nfa)
        o = nfa.add_state()
        nfa.eps[po].extend([pi, o])
        return pi, o
    raise TypeError(f"unexpected node {r!r}")


def regex_to_dfa(r, alphabet: Alphabet | None = None, budget: int = DEFAULT_STATE_BUDGET) -> Dfa:
    """Compile a regex (text or AST) to the canonical minimal DFA."""
    if isinstance(r, str):
        r = parse_regex(r)
    if alphabet is None:
        alphabet = Alphabet(sorted(regex_letters(r)))
    else:
        missing = regex_letters(r) - set(alphabet.letters)
        if missing:
            raise ParseError(f"regex letters {sorted(missing)} outside alphabet")
    nfa = Nfa(alphabet, 0, [], [])
    i, o = _thompson(r, alphabet, nfa)
    nfa.initial = {i}
    nfa.finals = {o}
    return minimize(nfa_to_dfa(nfa, budget))


# ----------------------------------------------------------- boolean algebra


def _product(d1: Dfa, d2: Dfa, keep):
    if d1.alphabet != d2.alphabet:
        raise ValueError("alphabet mismatch")
    na = len(d1.alphabet)
    index = {(d1.initial, d2.initial): 0}
    rows = []
    queue = deque([(d1.initial, d2.initial)])
    while queue:
        q1, q2 = queue.popleft()
        row = []
        for x in range(na):
            nxt = (d1.trans[q1][x], d2.trans[q2][x])
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    finals = frozenset(
        i for (q1, q2), i in index.items() if keep(q1 in d1.finals, q2 in d2.finals)
    )
    return minimize(Dfa(d1.alphabet, tuple(rows), 0, finals))


def union(d1, d2):
    return _product(d1, d2, lambda a, b: a or b)


def intersect(d1, d2):
    return _product(d1, d2, lambda a, b: a and b)


def difference(d1, d2):
    return _product(d1, d2, lambda a, b: a and not b)


def complement(d: Dfa) -> Dfa:
    """Complement relative to A+ (the empty word stays out)."""
    flipped = Dfa(d.alphabet, d.trans, d.initial, frozenset(range(d.n)) - d.finals)
    return minimize(flipped)


def empty_dfa(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet, (tuple(0 for _ in alphabet.letters),), 0, frozenset())


def all_words_dfa(alphabet: Alphabet) -> Dfa:
    # two states so that only non-empty words reach the final one
    na = len(alphabet)
    return Dfa(alphabet, (tuple(1 for _ in range(na)), tuple(1 for _ in range(na))), 0, frozenset({1}))


def is_empty(d: Dfa) -> bool:
    # finality of the initial state does not matter under A+ semantics
    seen = {d.initial}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for q2 in d.trans[q]:
            if q2 in d.finals:
                return False
            if q2 not in seen:
                seen.add(q2)
                queue.append(q2)
    return True


# ------------------------------------------------------------- derived ops


def quotient_left(d: Dfa, a: str) -> Dfa:
    """{ w in A+ : a w in L }"""
    q = d.trans[d.initial][d.alphabet.index(a)]
    return minimize(Dfa(d.alphabet, d.trans, q, d.finals))


def quotient_right(d: Dfa, a: str) -> Dfa:
    """{ w in A+ : w a in L }"""
    x = d.alphabet.index(a)
    finals = frozenset(q for q in range(d.n) if d.trans[q][x] in d.finals)
    return minimize(Dfa(d.alphabet, d.trans, d.initial, finals))


def quotient_word_left(d: Dfa, u: str) -> Dfa:
    for a in u:
        d = quotient_left(d, a)
    return d


def quotient_word_right(d: Dfa, u: str) -> Dfa:
    for a in reversed(u):
        d = quotient_right(d, a)
    return d


def language_involution(d: Dfa, budget: int = DEFAULT_STATE_BUDGET) -> Dfa:
    """DFA for { involution(w) : w in L }.

    Reverse all edges, determinize, then relabel each letter by its dagger
    (the dagger is its own inverse, so reading letter a must simulate the
    reversed automaton on dagger(a)).
    """
    na = len(d.alphabet)
    nfa = Nfa(d.alphabet, d.n, [[] for _ in range(d.n)], [[] for _ in range(d.n)])
    for q in range(d.n):
        for x in range(na):
            nfa.edges[d.trans[q][x]].append((x, q))
    nfa.initial = set(d.finals)
    nfa.finals = {d.initial}
    rev = nfa_to_dfa(nfa, budget)
    dag = d.alphabet.dagger
    perm = [d.alphabet.index(dag[a]) for a in d.alphabet.letters]
    trans = tuple(tuple(row[perm[x]] for x in range(na)) for row in rev.trans)
    return minimize(Dfa(d.alphabet, trans, rev.initial, rev.finals))


def inverse_morphism_image(
    d: Dfa,
    letter_map: dict,
    src_alphabet: Alphabet,
    require_involutory: bool = False,
) -> Dfa:
    """DFA for { w over src_alphabet : h(w) in L(d) } where h maps letters to
    non-empty words over d's alphabet, extended multiplicatively.

    With require_involutory=True, checks h(dagger(a)) = involution(h(a)).
    """
    for a in src_alphabet.letters:
        if a not in letter_map:
            raise ValueError(f"morphism misses letter {a!r}")
        img = letter_map[a]
        if not img:
            raise ValueError("letter images must be non-empty words")
        d.alphabet.check_word(img)
    if require_involutory:
        for a in src_alphabet.letters:
            want = word_involution(d.alphabet, letter_map[a])
            got = letter_map[src_alphabet.dagger[a]]
            if got != want:
                raise ValueError(
                    f"morphism is not involutory at {a!r}: h(dagger) = {got!r}, "
                    f"involution(h) = {want!r}"
                )
    trans = tuple(
        tuple(d.run(letter_map[a], q) for a in src_alphabet.letters) for q in range(d.n)
    )
    return minimize(Dfa(src_alphabet, trans, d.initial, d.finals))


def bounded_words(d: Dfa, max_len: int):
    """All members of length <= max_len, in length-lex order."""
    out = []
    layer = [("", d.initial)]
    for _ in range(max_len):
        nxt = []
        for w, q in layer:
            for a in d.alphabet.letters:
                q2 = d.trans[q][d.alphabet.index(a)]
                w2 = w + a
                if q2 in d.finals:
                    out.append(w2)
                nxt.append((w2, q2))
        layer = nxt
    return out


# ----------------------------------------------------------------- text IO


def dfa_to_text(d: Dfa) -> str:
    lines = [f"states: {d.n}", f"initial: {d.initial}"]
    lines.append("finals: " + " ".join(str(q) for q in sorted(d.finals)))
    for q in range(d.n):
        for x, a in enumerate(d.alphabet.letters):
            lines.append(f"{q} {a} {d.trans[q][x]}")
    return "\n".join(lines) + "\n"


def dfa_from_text(text: str, alphabet: Alphabet) -> Dfa:
    n = None
    initial = None
    finals = None
    trans = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("states:"):
            n = int(line.split(":", 1)[1])
        elif line.startswith("initial:"):
            initial = int(line.split(":", 1)[1])
        elif line.startswith("finals:"):
            finals = frozenset(int(v) for v in line.split(":", 1)[1].split())
        else:
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: expected `q a q'`, got {raw!r}")
            q, a, q2 = parts
            trans[(int(q), alphabet.index(a))] = int(q2)
    if n is None or initial is None or finals is None:
        raise ParseError("DFA text needs states:, initial: and finals: lines")
    rows = []
    for q in range(n):
        row = []
        for x in range(len(alphabet)):
            if (q, x) not in trans:
                raise ParseError(
                    f"missing transition for state {q} letter {alphabet.letters[x]!r}"
                )
            q2 = trans[(q, x)]
            if not 0 <= q2 < n:
                raise ParseError(f"transition target {q2} out of range")
            row.append(q2)
        rows.append(tuple(row))
    if not 0 <= initial < n or any(not 0 <= q < n for q in finals):
        raise ParseError("initial/final state out of range")
    return Dfa(alphabet, tuple(rows), initial, finals)
