"""starsem: finite semigroups with involution and testable word languages.

The package covers, end to end: words over involutory alphabets and their
bounded factor signatures; regular-language plumbing with A+ semantics;
finite semigroups, involutions, and syntactic constructions; bilateral
semidirect products with involutory actions; the canonical window/multiset
recognizers for reverse-threshold-testable languages; and a first-order
evaluator for the neighbour predicate. `starsem --help` lists the CLI.
"""

from .alphabet import Alphabet, hermitian
from .errors import ParseError, ResourceLimitError, StarsemError, WordError

__all__ = [
    "Alphabet",
    "hermitian",
    "StarsemError",
    "ParseError",
    "WordError",
    "ResourceLimitError",
]

__version__ = "0.1.0"
