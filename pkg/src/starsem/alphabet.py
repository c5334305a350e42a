"""Alphabets with an involution (dagger) on letters.

A dagger is a bijection on the letters that is its own inverse. The default
dagger is the identity; such alphabets are called hermitian here. Letters are
single ASCII characters so words can stay ordinary strings.
"""

from __future__ import annotations

from .errors import ParseError, WordError


class Alphabet:
    def __init__(self, letters, dagger=None):
        letters = tuple(letters)
        if len(letters) == 0:
            raise ValueError("alphabet must contain at least one letter")
        if len(set(letters)) != len(letters):
            raise ValueError("duplicate letters in alphabet")
        for a in letters:
            if len(a) != 1 or not (32 < ord(a) < 127):
                raise ValueError(f"letters must be printable ASCII chars, got {a!r}")
        self.letters = letters
        self._index = {a: i for i, a in enumerate(letters)}
        full = {a: a for a in letters}
        if dagger:
            full.update(dagger)
        # the mapping must stay inside the alphabet and square to the identity
        for a, b in full.items():
            if a not in self._index or b not in self._index:
                raise ValueError(f"dagger pair {a!r} -> {b!r} leaves the alphabet")
        for a in letters:
            if full[full[a]] != a:
                raise ValueError(f"dagger is not involutive at {a!r}")
        self.dagger = full

    def __len__(self):
        return len(self.letters)

    def __contains__(self, a):
        return a in self._index

    def __eq__(self, other):
        return (
            isinstance(other, Alphabet)
            and self.letters == other.letters
            and self.dagger == other.dagger
        )

    def __repr__(self):
        pairs = ",".join(f"{a}{b}" for a, b in self.dagger.items() if a < b)
        extra = f", dagger={pairs}" if pairs else ""
        return f"Alphabet({''.join(self.letters)}{extra})"

    def index(self, a):
        try:
            return self._index[a]
        except KeyError:
            raise WordError(f"letter {a!r} not in alphabet {''.join(self.letters)}")

    def is_hermitian(self):
        return all(self.dagger[a] == a for a in self.letters)

    def check_word(self, w):
        for a in w:
            if a not in self._index:
                raise WordError(
                    f"letter {a!r} of word {w!r} not in alphabet {''.join(self.letters)}"
                )
        return w


def hermitian(letters):
    """Alphabet whose dagger is the identity."""
    return Alphabet(letters)


def parse_alphabet_file(text):
    """Parse the alphabet text format.

    One line per letter: `x y` declares dagger(x) = y (and implicitly
    dagger(y) = x). A line `x` alone declares a letter with identity dagger.
    Blank lines and `#` comments are skipped. Letter order follows first
    appearance.
    """
    letters = []
    seen = set()
    dagger = {}

    def add(a, lineno):
        if len(a) != 1:
            raise ParseError(f"line {lineno}: letter {a!r} is not a single character")
        if a not in seen:
            seen.add(a)
            letters.append(a)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            add(parts[0], lineno)
        elif len(parts) == 2:
            x, y = parts
            add(x, lineno)
            add(y, lineno)
            if dagger.get(x, y) != y or dagger.get(y, x) != x:
                raise ParseError(f"line {lineno}: conflicting dagger pair {x} {y}")
            dagger[x] = y
            dagger[y] = x
        else:
            raise ParseError(f"line {lineno}: expected `x` or `x y`, got {raw!r}")
    if not letters:
        raise ParseError("alphabet file declares no letters")
    return Alphabet(letters, dagger)


def alphabet_to_text(alphabet):
    lines = []
    done = set()
    for a in alphabet.letters:
        if a in done:
            continue
        b = alphabet.dagger[a]
        done.add(a)
        done.add(b)
        lines.append(a if a == b else f"{a} {b}")
    return "\n".join(lines) + "\n"
