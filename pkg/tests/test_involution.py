import itertools

import pytest

from starsem.alphabet import Alphabet, hermitian
from starsem.dfa import regex_to_dfa
from starsem.involution import (
    InvolutionSemigroup,
    evaluate_word,
    flip_product,
    hermitian_elements,
    image_closure,
    involution_from_text,
    involution_to_text,
    is_hermitian_generated,
    is_involutory_letter_map,
    recognizes,
    star_twisted_letter_map,
    validate_involution,
)
from starsem.semigroups import FiniteSemigroup, opposite
from starsem.words import word_involution, words_up_to

from test_semigroups import T4, T4_LABELS

SWAP = Alphabet("ab", {"a": "b", "b": "a"})
AB = hermitian("ab")

# the swap a<->b extends to the running example: ab and ba stay fixed
T4_STAR = [1, 0, 2, 3]
T4_INV = InvolutionSemigroup(T4, T4_STAR)


def test_swap_star_is_valid():
    assert validate_involution(T4, T4_STAR) is None


def test_identity_star_fails_with_witness():
    # (ba)* would have to be (a*)(b*) = ab under an antimorphism
    witness = validate_involution(T4, [0, 1, 2, 3])
    assert witness is not None
    kind, i, j = witness
    assert kind == "antimorphism"
    lhs = T4.product(i, j)
    assert lhs != T4.product(j, i)  # the violating pair is genuinely one


def test_star_laws_exhaustive():
    for x, y in itertools.product(range(4), repeat=2):
        assert T4_INV.star_of(T4_INV.star_of(x)) == x
        assert T4_INV.star_of(T4.product(x, y)) == T4.product(
            T4_INV.star_of(y), T4_INV.star_of(x)
        )


def test_flip_product():
    flip = flip_product(T4)
    n = T4.n
    assert flip.n == n * n
    for (x1, y1), (x2, y2) in itertools.product(
        itertools.product(range(n), repeat=2), repeat=2
    ):
        i, j = x1 * n + y1, x2 * n + y2
        assert flip.product(i, j) == T4.product(x1, x2) * n + T4.product(y2, y1)
        assert flip.star_of(i) == y1 * n + x1


def test_hermitian_elements():
    assert [T4_LABELS[i] for i in hermitian_elements(T4_INV)] == ["ab", "ba"]
    ok, reached = is_hermitian_generated(T4_INV)
    assert not ok and reached == {2, 3}
    # the sub-star-semigroup on {ab, ba} is hermitian-generated
    sub = InvolutionSemigroup(FiniteSemigroup([[1, 1], [1, 1]]), [0, 1])
    ok_sub, _ = is_hermitian_generated(sub)
    assert ok_sub


def test_evaluate_and_star_twist():
    h = {"a": 0, "b": 1}
    assert evaluate_word(T4, SWAP, h, "aba") == 3
    assert is_involutory_letter_map(T4_INV, SWAP, h)
    twisted = star_twisted_letter_map(SWAP, h)
    opp = opposite(T4)
    for w in words_up_to(SWAP, 5):
        # evaluating the twist in the opposite equals evaluating after involution
        assert evaluate_word(opp, SWAP, twisted, w) == evaluate_word(
            T4, SWAP, h, word_involution(SWAP, w)
        )


def test_star_twist_identity_when_involutory():
    h = {"a": 0, "b": 1}
    # star . h = h . dagger exactly when the map is involutory
    for a in SWAP.letters:
        assert T4_INV.star_of(h[a]) == h[SWAP.dagger[a]]


def test_recognizes_positive():
    d = regex_to_dfa("a+b+", SWAP)
    ok, witness = recognizes(T4_INV, SWAP, {"a": 0, "b": 1}, {2}, d)
    assert ok and witness is None


def test_recognizes_negative_with_witness():
    d = regex_to_dfa("a+b+", SWAP)
    ok, witness = recognizes(T4_INV, SWAP, {"a": 0, "b": 1}, {3}, d)
    assert not ok
    assert witness is not None
    # the witness word genuinely separates language and accepting preimage
    val = evaluate_word(T4, SWAP, {"a": 0, "b": 1}, witness)
    assert d.member(witness) != (val == 3)


def test_recognizes_rejects_non_involutory_map():
    d = regex_to_dfa("a+b+", AB)
    with pytest.raises(ValueError, match="intertwine"):
        recognizes(T4_INV, AB, {"a": 0, "b": 1}, {2}, d)


def test_image_closure_witnesses():
    witness = image_closure(T4_INV, SWAP, {"a": 0, "b": 1})
    assert set(witness) == {0, 1, 2, 3}
    for elem, w in witness.items():
        assert evaluate_word(T4, SWAP, {"a": 0, "b": 1}, w) == elem


def test_involution_text_roundtrip():
    text = involution_to_text(T4_INV)
    again = involution_from_text(text)
    assert again.sg == T4 and list(again.star) == T4_STAR
