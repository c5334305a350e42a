import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starsem.alphabet import Alphabet, alphabet_to_text, hermitian, parse_alphabet_file
from starsem.errors import WordError
from starsem.words import (
    count_factor,
    count_factor_rev,
    equivalent,
    factor_signature,
    threshold_eq,
    word_involution,
    words_up_to,
)

from oracles import brute_count_factor, brute_count_factor_rev, brute_equivalent

AB = hermitian("ab")
ABC = hermitian("abc")
SWAP = Alphabet("ab", {"a": "b", "b": "a"})


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet("")
    with pytest.raises(ValueError):
        Alphabet("aa")
    with pytest.raises(ValueError):
        Alphabet("ab", {"a": "c"})
    # non-involutive mapping: a->b but b->b
    with pytest.raises(ValueError):
        Alphabet("ab", {"a": "b", "b": "b"})
    assert AB.is_hermitian()
    assert not SWAP.is_hermitian()


def test_alphabet_file_roundtrip():
    alph = parse_alphabet_file("a b\nc\n")
    assert alph.letters == ("a", "b", "c")
    assert alph.dagger == {"a": "b", "b": "a", "c": "c"}
    again = parse_alphabet_file(alphabet_to_text(alph))
    assert again == alph


def test_word_involution_hermitian_is_reversal():
    assert word_involution(AB, "abb") == "bba"
    assert word_involution(AB, "") == ""


def test_word_involution_with_dagger():
    assert word_involution(SWAP, "aab") == "abb"
    # involution applied twice is the identity
    for w in words_up_to(SWAP, 5):
        assert word_involution(SWAP, word_involution(SWAP, w)) == w


def test_word_involution_antimorphism():
    for u, v in itertools.product(words_up_to(SWAP, 3), repeat=2):
        assert word_involution(SWAP, u + v) == word_involution(SWAP, v) + word_involution(
            SWAP, u
        )


def test_word_involution_rejects_foreign_letters():
    with pytest.raises(WordError):
        word_involution(AB, "abc")


def test_threshold_eq():
    assert threshold_eq(2, 2, 5)
    assert not threshold_eq(2, 3, 5)
    assert threshold_eq(5, 9, 5)
    assert threshold_eq(7, 7, 3)
    assert not threshold_eq(2, 5, 3)
    with pytest.raises(ValueError):
        threshold_eq(-1, 0, 2)


@given(st.integers(0, 12), st.integers(0, 12), st.integers(1, 6))
def test_threshold_eq_is_equivalence(i, j, t):
    # symmetry plus agreement with the capped-value formulation
    assert threshold_eq(i, j, t) == threshold_eq(j, i, t)
    assert threshold_eq(i, j, t) == (min(i, t) == min(j, t))


def test_count_factor_frozen_values():
    assert count_factor("aaa", "aa") == 2  # overlapping occurrences count
    assert count_factor("abab", "ab") == 2
    assert count_factor("abab", "ba") == 1
    assert count_factor("ab", "abc") == 0


def test_count_factor_rev_frozen_values():
    assert count_factor_rev("abba", "ab") == 2
    assert count_factor_rev("cabc", "ab") == 1
    # a factor equal to its own reversal is counted once per position
    assert count_factor_rev("aa", "aa") == 1
    # non-identity dagger: involution of "ab" over SWAP is "ab" itself
    assert count_factor_rev("abab", "ab", SWAP) == 2
    assert count_factor_rev("abab", "aa", SWAP) == count_factor("abab", "aa") + count_factor(
        "abab", "bb"
    )


def test_count_factor_against_oracle():
    words = list(words_up_to(AB, 7))
    factors = list(words_up_to(AB, 3))
    for w in words[:: 7]:
        for v in factors:
            assert count_factor(w, v) == brute_count_factor(w, v)
            assert count_factor_rev(w, v, AB) == brute_count_factor_rev(w, v, AB)
            assert count_factor_rev(w, v, SWAP) == brute_count_factor_rev(w, v, SWAP)


def test_signature_frozen_example():
    sig = factor_signature("abab", 2, 2, "plain", AB)
    assert sig.short_word is None
    assert sig.prefix == "a"
    assert sig.suffix == "b"
    assert dict(sig.counts) == {"a": 2, "b": 2, "ab": 2, "ba": 1}


def test_signature_short_word():
    sig = factor_signature("ab", 3, 1, "plain", AB)
    assert sig.short_word == "ab"
    assert not equivalent("ab", "ba", 3, 1, "plain", AB)
    assert equivalent("ab", "ab", 3, 1, "plain", AB)


def test_reverse_mode_frozen_example():
    # the pair separating reverse-mode from plain-mode equivalence
    assert equivalent("cabc", "cbac", 2, 1, "reverse", ABC)
    assert not equivalent("cabc", "cbac", 2, 1, "plain", ABC)
    sig = factor_signature("cabc", 2, 1, "reverse", ABC)
    assert dict(sig.counts) == {"a": 1, "b": 1, "c": 1, "ab": 1, "ac": 1, "bc": 1}


def test_equivalent_against_definition_oracle():
    words = list(words_up_to(AB, 6))
    pairs = [(words[i], words[j]) for i in range(0, len(words), 9) for j in range(0, len(words), 11)]
    for k, t, mode in [(1, 1, "plain"), (2, 1, "reverse"), (2, 2, "plain"), (3, 1, "reverse")]:
        for u, v in pairs:
            assert equivalent(u, v, k, t, mode, AB) == brute_equivalent(u, v, k, t, mode, AB), (
                u, v, k, t, mode,
            )


def test_equivalence_refinement():
    # raising k or t only splits classes, never merges them
    words = list(words_up_to(AB, 5))
    for mode in ("plain", "reverse"):
        for u, v in itertools.combinations(words[::5], 2):
            if equivalent(u, v, 3, 2, mode, AB):
                assert equivalent(u, v, 2, 2, mode, AB)
                assert equivalent(u, v, 3, 1, mode, AB)


@settings(max_examples=150)
@given(st.text(alphabet="ab", min_size=1, max_size=10), st.text(alphabet="ab", min_size=1, max_size=10))
def test_plain_refines_reverse(u, v):
    # plain equivalence implies reverse equivalence at the same (k, t)
    if equivalent(u, v, 2, 2, "plain", AB):
        assert equivalent(u, v, 2, 2, "reverse", AB)


def test_involution_preserves_reverse_signature():
    # reverse-mode classes are closed under the word involution
    for w in words_up_to(SWAP, 6):
        wi = word_involution(SWAP, w)
        sig = factor_signature(w, 2, 2, "reverse", SWAP)
        sigi = factor_signature(wi, 2, 2, "reverse", SWAP)
        assert sig.counts == sigi.counts
