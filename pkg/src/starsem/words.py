"""Words over an involutory alphabet: involution, factor counts, signatures.

The two equivalences implemented here compare words by a bounded signature:
prefix and suffix of length k-1 plus counts, up to a threshold t, of all
factors of length at most k. In "plain" mode each factor is counted on its
own; in "reverse" mode a factor and its involution are pooled into one count.
Words shorter than k are only equivalent to themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import Alphabet


def word_involution(alphabet: Alphabet, w: str) -> str:
    """Reverse w and apply the alphabet's dagger to every letter."""
    alphabet.check_word(w)
    d = alphabet.dagger
    return "".join(d[a] for a in reversed(w))


def threshold_eq(i: int, j: int, t: int) -> bool:
    """Equality of counts up to threshold t: exact below t, pooled at >= t."""
    if i < 0 or j < 0 or t < 0:
        raise ValueError("threshold_eq expects non-negative arguments")
    return i == j if i < t or j < t else True


def count_factor(w: str, v: str) -> int:
    """Occurrences of v in w, overlapping ones included."""
    if not v:
        raise ValueError("factor must be non-empty")
    n, m = len(w), len(v)
    return sum(1 for i in range(n - m + 1) if w[i : i + m] == v)


def count_factor_rev(w: str, v: str, alphabet: Alphabet | None = None) -> int:
    """Occurrences of v or of its involution in w.

    Each position is counted once, so a factor equal to its own involution is
    not double-counted. Defaults to a hermitian alphabet (plain reversal).
    """
    if alphabet is None:
        alphabet = Alphabet(sorted(set(w) | set(v)))
    vr = word_involution(alphabet, v)
    if vr == v:
        return count_factor(w, v)
    return count_factor(w, v) + count_factor(w, vr)


@dataclass(frozen=True)
class Signature:
    """What the equivalence at (k, t) sees of a word."""

    mode: str
    k: int
    t: int
    short_word: str | None  # set iff len(word) < k; other fields empty then
    prefix: str
    suffix: str
    counts: tuple[tuple[str, int], ...]  # sorted, zero counts omitted


def _canonical_key(alphabet, v, mode):
    if mode == "plain":
        return v
    vr = word_involution(alphabet, v)
    return min(v, vr)


def factor_signature(
    w: str, k: int, t: int, mode: str = "plain", alphabet: Alphabet | None = None
) -> Signature:
    """Signature of w for the (k, t) equivalence in the given mode."""
    if k < 1 or t < 1:
        raise ValueError("need k >= 1 and t >= 1")
    if mode not in ("plain", "reverse"):
        raise ValueError(f"mode must be 'plain' or 'reverse', got {mode!r}")
    if alphabet is None:
        alphabet = Alphabet(sorted(set(w))) if w else Alphabet("a")
    alphabet.check_word(w)
    if len(w) < k:
        return Signature(mode, k, t, w, "", "", ())
    counts: dict[str, int] = {}
    n = len(w)
    for i in range(n):
        for j in range(1, min(k, n - i) + 1):
            key = _canonical_key(alphabet, w[i : i + j], mode)
            c = counts.get(key, 0)
            if c < t:
                counts[key] = c + 1
    return Signature(
        mode,
        k,
        t,
        None,
        w[: k - 1],
        w[n - (k - 1) :] if k > 1 else "",
        tuple(sorted(counts.items())),
    )


def equivalent(
    u: str,
    v: str,
    k: int,
    t: int,
    mode: str = "plain",
    alphabet: Alphabet | None = None,
) -> bool:
    """Do u and v fall in the same (k, t)-class?"""
    if alphabet is None:
        alphabet = Alphabet(sorted(set(u) | set(v))) if u + v else Alphabet("a")
    return factor_signature(u, k, t, mode, alphabet) == factor_signature(
        v, k, t, mode, alphabet
    )


def words_of_length(alphabet: Alphabet, n: int):
    """All words of exactly length n, in lexicographic letter order."""
    if n == 0:
        yield ""
        return
    for w in words_of_length(alphabet, n - 1):
        for a in alphabet.letters:
            yield w + a


def words_up_to(alphabet: Alphabet, max_len: int):
    """All non-empty words of length <= max_len in length-lex order."""
    for n in range(1, max_len + 1):
        yield from words_of_length(alphabet, n)
