import itertools

import pytest

from starsem.alphabet import Alphabet, hermitian
from starsem.dfa import (
    all_words_dfa,
    complement,
    equal_language,
    intersect,
    is_empty,
    language_involution,
    quotient_word_left,
    quotient_word_right,
    regex_to_dfa,
    union,
)
from starsem.involution import InvolutionSemigroup, flip_product
from starsem.semigroups import find_isomorphism, opposite
from starsem.syntactic import (
    StarSyntacticData,
    anti_isomorphism_check,
    element_language,
    syntactic_divides,
    syntactic_semigroup,
    syntactic_star_semigroup,
)
from starsem.words import word_involution, words_up_to

from oracles import context_classes
from test_semigroups import T4

SWAP = Alphabet("ab", {"a": "b", "b": "a"})
AB = hermitian("ab")
ABC = hermitian("abc")


def fold(sd, w):
    sg, h = sd.semigroup, sd.letter_map
    x = h[w[0]]
    for a in w[1:]:
        x = sg.product(x, h[a])
    return x


def test_apb_syntactic_is_running_example():
    sd = syntactic_semigroup(regex_to_dfa("a+b+", SWAP))
    assert sd.semigroup.n == 4
    assert list(sd.witness) == ["a", "b", "ab", "ba"]
    iso = find_isomorphism(sd.semigroup, T4)
    assert iso is not None
    assert sd.accepting == {fold(sd, "ab")}
    # ba is the zero
    z = fold(sd, "ba")
    for x in range(4):
        assert sd.semigroup.product(z, x) == z == sd.semigroup.product(x, z)


def test_full_language_one_element():
    sd = syntactic_semigroup(regex_to_dfa("(a|b)(a|b)*", AB))
    assert sd.semigroup.n == 1
    assert sd.accepting == {0}


def test_classes_match_context_oracle():
    # context length 2 already separates every class of c*abc*; anything
    # longer only slows the brute-force side down
    cases = [("a(ba)*b", AB, 7, 4), ("a+b+", AB, 6, 4), ("c*abc*", ABC, 6, 2)]
    for expr, alphabet, word_len, ctx_len in cases:
        d = regex_to_dfa(expr, alphabet)
        sd = syntactic_semigroup(d)
        groups = {}
        for w in words_up_to(alphabet, word_len):
            groups.setdefault(fold(sd, w), []).append(w)
        oracle = context_classes(d.member, alphabet, word_len, ctx_len)
        assert {frozenset(c) for c in groups.values()} == {
            frozenset(c) for c in oracle
        }


def test_star_semigroup_reversible_language_degenerates():
    # (ab)+ with dagger a<->b satisfies L = L-involution
    d = regex_to_dfa("a+b+", SWAP)
    sds = syntactic_star_semigroup(d)
    sd = syntactic_semigroup(d)
    assert sds.invsemigroup.n == sd.semigroup.n == 4
    assert find_isomorphism(sds.invsemigroup.sg, sd.semigroup) is not None
    for a in SWAP.letters:
        i = sds.chi[a]
        assert sds.pairs[i] == (sd.letter_map[a], sd.letter_map[SWAP.dagger[a]])


def test_star_semigroup_hermitian_alphabet_is_hermitian_generated():
    from starsem.involution import is_hermitian_generated

    for expr in ["a+b+", "a(ba)*b"]:
        sds = syntactic_star_semigroup(regex_to_dfa(expr, AB))
        for a in AB.letters:
            assert sds.invsemigroup.star_of(sds.chi[a]) == sds.chi[a]
        ok, _ = is_hermitian_generated(sds.invsemigroup)
        assert ok


def test_star_classes_are_intersection_of_plain_classes():
    # the star congruence refines both the congruence of L and of L-involution
    for expr, alphabet in [("a+b+", AB), ("c*abc*", ABC), ("a(ba)*b", AB)]:
        d = regex_to_dfa(expr, alphabet)
        di = language_involution(d)
        sd, sdi = syntactic_semigroup(d), syntactic_semigroup(di)
        sds = syntactic_star_semigroup(d, alphabet)

        def chi_fold(w):
            x = sds.chi[w[0]]
            for a in w[1:]:
                x = sds.invsemigroup.product(x, sds.chi[a])
            return x

        for u, v in itertools.combinations(list(words_up_to(alphabet, 5)), 2):
            same_star = chi_fold(u) == chi_fold(v)
            same_both = fold(sd, u) == fold(sd, v) and fold(sdi, u) == fold(sdi, v)
            assert same_star == same_both


def test_involution_class_exchange():
    # u and v fall together for L-involution iff their involutions do for L
    for expr, alphabet in [("a+b+", SWAP), ("c*abc*", ABC)]:
        d = regex_to_dfa(expr, alphabet)
        di = language_involution(d)
        sd, sdi = syntactic_semigroup(d), syntactic_semigroup(di)
        words = list(words_up_to(alphabet, 5))
        for u, v in itertools.combinations(words, 2):
            lhs = fold(sdi, u) == fold(sdi, v)
            ui, vi = word_involution(alphabet, u), word_involution(alphabet, v)
            assert lhs == (fold(sd, ui) == fold(sd, vi))


def test_anti_isomorphism():
    for expr, alphabet in [("a+b+", SWAP), ("a(ba)*b", AB), ("c*abc*", ABC)]:
        ok, mapping = anti_isomorphism_check(regex_to_dfa(expr, alphabet), alphabet)
        assert ok, mapping


def test_divides_own_star_semigroup():
    d = regex_to_dfa("a+b+", SWAP)
    sds = syntactic_star_semigroup(d)
    ok, mu = syntactic_divides(d, sds.invsemigroup, sds.chi, sds.accepting, SWAP)
    assert ok
    assert mu == {i: i for i in range(sds.invsemigroup.n)}


def test_divides_flip_recognizer():
    # flip product of the transition semigroup always recognizes L
    for expr, alphabet in [("a+b+", SWAP), ("a(ba)*b", AB)]:
        d = regex_to_dfa(expr, alphabet)
        sd = syntactic_semigroup(d)
        flip = flip_product(sd.semigroup)
        n = sd.semigroup.n
        h = {
            a: sd.letter_map[a] * n + sd.letter_map[alphabet.dagger[a]]
            for a in alphabet.letters
        }
        accepting = {x * n + y for x in sd.accepting for y in range(n)}
        ok, mu = syntactic_divides(d, flip, h, accepting, alphabet)
        assert ok and isinstance(mu, dict)


def test_divides_rejects_non_recognizer():
    d = regex_to_dfa("a+b+", SWAP)
    sds = syntactic_star_semigroup(d)
    with pytest.raises(ValueError, match="witness"):
        syntactic_divides(d, sds.invsemigroup, sds.chi, frozenset(), SWAP)


def test_element_language_frozen():
    d = regex_to_dfa("a+b+", SWAP)
    sd = syntactic_semigroup(d)
    assert equal_language(element_language(sd, fold(sd, "ab")), d)
    # the zero class: words with ba somewhere
    zero_lang = element_language(sd, fold(sd, "ba"))
    expected = regex_to_dfa("(a|b)*ba(a|b)*", SWAP)
    assert equal_language(zero_lang, expected)


def test_element_languages_partition():
    for expr, alphabet in [("a+b+", SWAP), ("c*abc*", ABC)]:
        sd = syntactic_semigroup(regex_to_dfa(expr, alphabet))
        langs = [element_language(sd, x) for x in range(sd.semigroup.n)]
        for li, lj in itertools.combinations(langs, 2):
            assert is_empty(intersect(li, lj))
        whole = langs[0]
        for lj in langs[1:]:
            whole = union(whole, lj)
        assert equal_language(whole, all_words_dfa(alphabet))
        sds = syntactic_star_semigroup(regex_to_dfa(expr, alphabet), alphabet)
        star_whole = element_language(sds, 0)
        for x in range(1, sds.invsemigroup.n):
            star_whole = union(star_whole, element_language(sds, x))
        assert equal_language(star_whole, all_words_dfa(alphabet))


def test_element_language_is_boolean_combination_of_quotients():
    # each class equals the intersection of the quotients it meets minus the
    # rest, with contexts drawn from class representatives plus the empty word
    alphabet = SWAP
    d = regex_to_dfa("a+b+", alphabet)
    sd = syntactic_semigroup(d)
    contexts = [""] + list(sd.witness)
    for x in range(sd.semigroup.n):
        cls = element_language(sd, x)
        rep = sd.witness[x]
        acc = None
        for u in contexts:
            for v in contexts:
                q = quotient_word_right(quotient_word_left(d, u), v)
                if q.member(rep):
                    acc = q if acc is None else intersect(acc, q)
                else:
                    acc = complement(q) if acc is None else intersect(acc, complement(q))
        assert equal_language(cls, acc)
