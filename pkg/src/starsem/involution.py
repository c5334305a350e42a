"""Semigroups carrying an involution (star).

A star is a unary map with (x*)* = x and (xy)* = y* x*. Hermitian elements
are the fixed points of the star. The flip product S x S^op with
(x, y)* = (y, x) is the canonical way to equip a plain semigroup with an
involution, and evaluation morphisms from words respect stars when the
letter map intertwines dagger and star.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from ._accel import kernels
from .alphabet import Alphabet
from .dfa import Dfa
from .errors import ParseError
from .semigroups import FiniteSemigroup, direct_product, opposite
from .words import word_involution


class InvolutionSemigroup:
    def __init__(self, sg: FiniteSemigroup, star):
        star = np.asarray(star, dtype=np.int32)
        if star.shape != (sg.n,):
            raise ValueError("star must assign one element per element")
        witness = validate_involution(sg, star)
        if witness is not None:
            raise ValueError(f"not an involution: {witness}")
        self.sg = sg
        self.star = star
        self.star.setflags(write=False)

    @property
    def n(self):
        return self.sg.n

    def product(self, i, j):
        return self.sg.product(i, j)

    def star_of(self, i):
        return int(self.star[i])

    def label(self, i):
        return self.sg.label(i)

    def __repr__(self):
        return f"InvolutionSemigroup(n={self.n})"


def validate_involution(sg: FiniteSemigroup, star):
    """None when star is a valid involution, else a readable witness tuple."""
    star = np.asarray(star, dtype=np.int32)
    if star.size and (star.min() < 0 or star.max() >= sg.n):
        raise ValueError("star entries must be element indices")
    code, i, j = kernels.involution_witness(sg.table, star)
    if code == 0:
        return None
    if code == 1:
        return ("double-star", i)
    return ("antimorphism", i, j)


def flip_product(sg: FiniteSemigroup) -> InvolutionSemigroup:
    """S x S^op with the coordinate flip as star. Pair (i, j) -> i*n + j."""
    base = direct_product(sg, opposite(sg))
    n = sg.n
    star = np.array([(x % n) * n + (x // n) for x in range(n * n)], dtype=np.int32)
    return InvolutionSemigroup(base, star)


def star_twisted_letter_map(alphabet: Alphabet, letter_map: dict) -> dict:
    """Letter map of the morphism w -> h(involution(w)).

    Viewed in the opposite semigroup this is again a morphism: evaluate it
    by folding with reversed products. On letters it is just h after dagger.
    """
    return {a: letter_map[alphabet.dagger[a]] for a in alphabet.letters}


def is_involutory_letter_map(inv: InvolutionSemigroup, alphabet: Alphabet, letter_map: dict) -> bool:
    return all(
        letter_map[alphabet.dagger[a]] == inv.star_of(letter_map[a])
        for a in alphabet.letters
    )


def evaluate_word(sg: FiniteSemigroup, alphabet: Alphabet, letter_map: dict, w: str) -> int:
    alphabet.check_word(w)
    if not w:
        raise ValueError("evaluation needs a non-empty word")
    it = iter(w)
    acc = letter_map[next(it)]
    for a in it:
        acc = sg.product(acc, letter_map[a])
    return acc


def hermitian_elements(inv: InvolutionSemigroup) -> list:
    return [i for i in range(inv.n) if inv.star_of(i) == i]


def is_hermitian_generated(inv: InvolutionSemigroup):
    """Is the whole carrier generated by hermitian elements under product and
    star? Returns (bool, reached_set).
    """
    seed = hermitian_elements(inv)
    seen = set(seed)
    queue = deque(seed)
    while queue:
        x = queue.popleft()
        nxt = [inv.star_of(x)]
        nxt.extend(inv.product(x, y) for y in list(seen))
        nxt.extend(inv.product(y, x) for y in list(seen))
        for y in nxt:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == inv.n, seen


def image_closure(inv: InvolutionSemigroup, alphabet: Alphabet, letter_map: dict):
    """Sub-star-semigroup generated by the letter images, with witness words.

    Returns a dict element -> witness word. The star of an element with
    witness w gets the witness involution(w), which is correct whenever the
    letter map intertwines dagger and star (callers validate that).
    """
    witness = {}
    queue = deque()
    for a in alphabet.letters:
        x = letter_map[a]
        if x not in witness:
            witness[x] = a
            queue.append(x)
    while queue:
        x = queue.popleft()
        w = witness[x]
        xs = inv.star_of(x)
        if xs not in witness:
            witness[xs] = word_involution(alphabet, w)
            queue.append(xs)
        for y, wy in list(witness.items()):
            for z, wz in ((inv.product(x, y), w + wy), (inv.product(y, x), wy + w)):
                if z not in witness:
                    witness[z] = wz
                    queue.append(z)
    return witness


def recognizes(
    inv: InvolutionSemigroup,
    alphabet: Alphabet,
    letter_map: dict,
    accepting,
    d: Dfa,
    require_involutory: bool = True,
):
    """Does (inv, letter_map, accepting) recognize exactly L(d)?

    Explores reachable (dfa state, element) pairs; the pair automaton is
    finite, and L(d) = h^{-1}(accepting) iff acceptance agrees on every
    reachable pair. Returns (bool, witness_word_or_None).
    """
    if d.alphabet != alphabet:
        raise ValueError("alphabet mismatch")
    if require_involutory and not is_involutory_letter_map(inv, alphabet, letter_map):
        raise ValueError("letter map does not intertwine dagger and star")
    accepting = set(accepting)
    start = [
        ((d.trans[d.initial][alphabet.index(a)], letter_map[a]), a)
        for a in alphabet.letters
    ]
    seen = {}
    queue = deque()
    for pair, w in start:
        if pair not in seen:
            seen[pair] = w
            queue.append(pair)
    while queue:
        q, x = queue.popleft()
        w = seen[(q, x)]
        if (q in d.finals) != (x in accepting):
            return False, w
        for a in alphabet.letters:
            pair = (d.trans[q][alphabet.index(a)], inv.product(x, letter_map[a]))
            if pair not in seen:
                seen[pair] = w + a
                queue.append(pair)
    return True, None


# ------------------------------------------------------------------ text IO


def involution_from_text(text: str) -> InvolutionSemigroup:
    from .semigroups import semigroup_from_text

    sg, star = semigroup_from_text(text)
    if star is None:
        raise ParseError("missing star: line")
    return InvolutionSemigroup(sg, star)


def involution_to_text(inv: InvolutionSemigroup) -> str:
    from .semigroups import semigroup_to_text

    return semigroup_to_text(inv.sg, star=[int(x) for x in inv.star])
