"""Syntactic semigroups and syntactic star-semigroups of regular languages.

The syntactic semigroup of L is realized as the transition semigroup of the
minimal complete DFA of L, acting on states by nonempty words. Its star
refinement pairs each class with the class of the involuted word, multiplied
coordinatewise in S(L) x S(L)^op and starred by the flip.
"""

from collections import deque
from dataclasses import dataclass

from .alphabet import Alphabet
from .dfa import Dfa, language_involution, minimize
from .involution import InvolutionSemigroup, image_closure, is_involutory_letter_map, recognizes
from .semigroups import FiniteSemigroup, generate

import numpy as np


@dataclass(frozen=True)
class SyntacticData:
    dfa: Dfa
    semigroup: FiniteSemigroup
    letter_map: dict
    accepting: frozenset
    witness: tuple


@dataclass(frozen=True)
class StarSyntacticData:
    dfa: Dfa
    invsemigroup: InvolutionSemigroup
    chi: dict
    accepting: frozenset
    witness: tuple
    pairs: tuple  # element i of the star-semigroup = pairs[i] in S(L) x S(L)


def syntactic_semigroup(d: Dfa, budget: int = 100_000) -> SyntacticData:
    """Transition semigroup of the minimal DFA of L(d), with witness words."""
    m = minimize(d)
    k = len(m.alphabet.letters)
    transformations = [
        tuple(m.trans[q][i] for q in range(len(m.trans))) for i in range(k)
    ]
    sg, witness = generate(transformations, list(m.alphabet.letters), budget=budget)
    # letters sharing a transformation share an element; the witness carries
    # the first such letter
    first = {}
    for a, f in zip(m.alphabet.letters, transformations):
        first.setdefault(f, a)
    letter_map = {
        a: witness.index(first[f])
        for a, f in zip(m.alphabet.letters, transformations)
    }
    accepting = frozenset(i for i, w in enumerate(witness) if m.member(w))
    return SyntacticData(m, sg, letter_map, accepting, tuple(witness))


def _fold(sg: FiniteSemigroup, letter_map: dict, w: str) -> int:
    x = letter_map[w[0]]
    for a in w[1:]:
        x = sg.product(x, letter_map[a])
    return x


def syntactic_star_semigroup(d: Dfa, alphabet: Alphabet = None, budget: int = 100_000) -> StarSyntacticData:
    """The star refinement of the syntactic semigroup.

    chi(w) = (class of w, class of the involution of w), both read in S(L);
    the second coordinate multiplies opposite-wise and star is the flip.
    Only the reachable pairs are materialized.
    """
    if alphabet is None:
        alphabet = d.alphabet
    if alphabet != d.alphabet:
        raise ValueError("alphabet mismatch")
    sd = syntactic_semigroup(d, budget=budget)
    sg = sd.semigroup
    h = sd.letter_map

    def prod(p, q):
        return (sg.product(p[0], q[0]), sg.product(q[1], p[1]))

    gens = {a: (h[a], h[alphabet.dagger[a]]) for a in alphabet.letters}
    index = {}
    pairs = []
    witness = []
    queue = deque()
    for a in alphabet.letters:
        p = gens[a]
        if p not in index:
            index[p] = len(pairs)
            pairs.append(p)
            witness.append(a)
            queue.append(p)
    while queue:
        p = queue.popleft()
        w = witness[index[p]]
        for a in alphabet.letters:
            q = prod(p, gens[a])
            if q not in index:
                if len(pairs) >= budget:
                    from .errors import ResourceLimitError

                    raise ResourceLimitError(
                        "star-semigroup closure exceeded budget",
                        budget=budget, reached=len(pairs),
                    )
                index[q] = len(pairs)
                pairs.append(q)
                witness.append(w + a)
                queue.append(q)
    n = len(pairs)
    table = np.empty((n, n), dtype=np.int32)
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            table[i, j] = index[prod(p, q)]
    # chi-images of involuted words are themselves chi-images, so the
    # reachable set is closed under the flip
    star = [index[(y, x)] for (x, y) in pairs]
    inv = InvolutionSemigroup(FiniteSemigroup(table, labels=witness), star)
    chi = {a: index[gens[a]] for a in alphabet.letters}
    accepting = frozenset(i for i, p in enumerate(pairs) if p[0] in sd.accepting)
    return StarSyntacticData(sd.dfa, inv, chi, accepting, tuple(witness), tuple(pairs))


def anti_isomorphism_check(d: Dfa, alphabet: Alphabet = None, budget: int = 100_000):
    """Exhibit an isomorphism from S(L)^op onto S(L-involution).

    The map sends the class of w to the class of the involution of w; it is
    built from witness words and then verified elementwise. Returns
    (True, mapping) on success, (False, reason) otherwise.
    """
    if alphabet is None:
        alphabet = d.alphabet
    from .words import word_involution

    sd = syntactic_semigroup(d, budget=budget)
    dd = language_involution(d)
    sd2 = syntactic_semigroup(dd, budget=budget)
    if sd.semigroup.n != sd2.semigroup.n:
        return False, "size mismatch"
    alpha = [
        _fold(sd2.semigroup, sd2.letter_map, word_involution(alphabet, w))
        for w in sd.witness
    ]
    if len(set(alpha)) != len(alpha):
        return False, "not injective"
    for i in range(sd.semigroup.n):
        for j in range(sd.semigroup.n):
            if alpha[sd.semigroup.product(i, j)] != sd2.semigroup.product(
                alpha[j], alpha[i]
            ):
                return False, "not an anti-morphism"
    return True, {i: a for i, a in enumerate(alpha)}


def syntactic_divides(
    d: Dfa,
    inv: InvolutionSemigroup,
    letter_map: dict,
    accepting,
    alphabet: Alphabet = None,
    budget: int = 100_000,
):
    """Verify the image of a recognizer maps onto the syntactic star-semigroup.

    Requires (inv, letter_map, accepting) to recognize L(d); the universal
    map sends each image element to the chi-class of any witness word, and is
    checked to be a surjective star-morphism. Returns (True, mu) where mu maps
    image elements to star-semigroup elements.
    """
    if alphabet is None:
        alphabet = d.alphabet
    ok, witness = recognizes(inv, alphabet, letter_map, accepting, d)
    if not ok:
        raise ValueError(f"recognizer does not accept L, witness {witness!r}")
    sds = syntactic_star_semigroup(d, alphabet, budget=budget)
    image = image_closure(inv, alphabet, letter_map)
    ssg = sds.invsemigroup
    mu = {x: _fold(ssg.sg, sds.chi, w) for x, w in image.items()}
    if set(mu.values()) != set(range(ssg.n)):
        return False, "not surjective"
    for x in image:
        if mu[inv.star_of(x)] != ssg.star_of(mu[x]):
            return False, "star not preserved"
        for y in image:
            if mu[inv.product(x, y)] != ssg.product(mu[x], mu[y]):
                return False, "not a morphism"
    return True, mu


def check_division_dynamic(d: Dfa, alphabet, image_witness, prod, star, budget: int = 100_000):
    """Division check for recognizers given by callables instead of tables.

    image_witness maps each image element (any hashable) to a witness word;
    prod/star compute in the recognizer. Same universal-map verification as
    syntactic_divides, except that image_witness may be a partial slice of an
    image too large to materialize: products and stars landing outside the
    slice are then justified by concatenating/involuting witnesses, so only
    elements present in the slice are cross-checked for well-definedness.
    """
    from .words import word_involution

    sds = syntactic_star_semigroup(d, alphabet, budget=budget)
    ssg = sds.invsemigroup
    mu = {x: _fold(ssg.sg, sds.chi, w) for x, w in image_witness.items()}
    if set(mu.values()) != set(range(ssg.n)):
        return False, "not surjective"
    for x, wx in image_witness.items():
        expected = ssg.star_of(mu[x])
        if _fold(ssg.sg, sds.chi, word_involution(alphabet, wx)) != expected:
            return False, "star not preserved"
        y = star(x)
        if y in mu and mu[y] != expected:
            return False, "star not well-defined"
        for y in image_witness:
            z = prod(x, y)
            if z in mu and mu[z] != ssg.product(mu[x], mu[y]):
                return False, "not a morphism"
    return True, mu


def element_language(sd, x: int) -> Dfa:
    """Minimal DFA of the set of words mapping to element x.

    Works for SyntacticData (classes of the syntactic congruence) and
    StarSyntacticData (classes of its star refinement).
    """
    if isinstance(sd, StarSyntacticData):
        sg = sd.invsemigroup.sg
        letter_map = sd.chi
    else:
        sg = sd.semigroup
        letter_map = sd.letter_map
    if not 0 <= x < sg.n:
        raise ValueError("no such element")
    alphabet = sd.dfa.alphabet
    n = sg.n
    start = n
    trans = []
    for i in range(n):
        trans.append(tuple(sg.product(i, letter_map[a]) for a in alphabet.letters))
    trans.append(tuple(letter_map[a] for a in alphabet.letters))
    return minimize(Dfa(alphabet, tuple(trans), start, frozenset({x})))
