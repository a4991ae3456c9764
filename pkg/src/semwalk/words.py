"""Alphabets and words.

Words over a finite alphabet are the carrier of everything else in this
package: the truncated product that keeps only the last ``k`` letters, the
suffix/prefix/factor orders, and longest common suffixes.  Words are stored
as index tuples so the internals never depend on how letters are rendered;
rendering uses ``a..z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Iterable, Iterator

LETTER_POOL = "abcdefghijklmnopqrstuvwxyz"

# Guard for words_of_length: refuse to materialize more than this many words.
DEFAULT_ENUMERATION_LIMIT = 1 << 16


class WordError(ValueError):
    """Raised on malformed words or operations outside their domain."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered alphabet of distinct letters, rendered ``a, b, c, ...``."""

    letters: str

    def __post_init__(self) -> None:
        if not (1 <= len(self.letters) <= len(LETTER_POOL)):
            raise WordError(f"alphabet size must be in 1..{len(LETTER_POOL)}")
        if len(set(self.letters)) != len(self.letters):
            raise WordError(f"alphabet letters must be distinct: {self.letters!r}")

    @classmethod
    def of_size(cls, g: int) -> "Alphabet":
        return cls(LETTER_POOL[:g])

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise WordError(f"letter {letter!r} not in alphabet {self.letters!r}") from None

    def word(self, text: str) -> "Word":
        """Parse a rendered word; the empty string parses to epsilon."""
        return Word(self, tuple(self.index(c) for c in text))

    def __iter__(self) -> Iterator["Word"]:
        for i in range(self.size):
            yield Word(self, (i,))


@dataclass(frozen=True, order=True)
class Word:
    """A finite word, possibly empty.  Ordered by shortlex."""

    # Field order matters: shortlex = (alphabet, length, indices).
    alphabet: Alphabet
    _sort_len: int
    indices: tuple[int, ...]

    def __init__(self, alphabet: Alphabet, indices: Iterable[int]):
        idx = tuple(indices)
        if any(not (0 <= i < alphabet.size) for i in idx):
            raise WordError(f"letter index out of range for alphabet {alphabet.letters!r}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "_sort_len", len(idx))
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return "".join(self.alphabet.letters[i] for i in self.indices)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})" if self.indices else "Word(epsilon)"

    @property
    def is_empty(self) -> bool:
        return not self.indices

    def concat(self, other: "Word") -> "Word":
        _require_same_alphabet(self, other)
        return Word(self.alphabet, self.indices + other.indices)

    def append(self, letter: "Word") -> "Word":
        return self.concat(letter)


def epsilon(alphabet: Alphabet) -> Word:
    return Word(alphabet, ())


def _require_same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise WordError("words are over different alphabets")


def truncate_suffix(u: Word, k: int) -> Word:
    """The suffix of length ``k`` of ``u``, or ``u`` itself when shorter."""
    if k < 1:
        raise WordError("truncation length k must be >= 1")
    if len(u) <= k:
        return u
    return Word(u.alphabet, u.indices[-k:])


def product(u: Word, v: Word, k: int) -> Word:
    """Concatenate and keep the last ``k`` letters.

    This is the associative product of nonempty words of length at most
    ``k``; the empty word is rejected because that semigroup has no identity.
    """
    _require_same_alphabet(u, v)
    if u.is_empty or v.is_empty:
        raise WordError("product is defined on nonempty words only")
    return truncate_suffix(u.concat(v), k)


def is_suffix(u: Word, v: Word) -> bool:
    _require_same_alphabet(u, v)
    n = len(u)
    return n <= len(v) and (n == 0 or v.indices[-n:] == u.indices)


def is_prefix(u: Word, v: Word) -> bool:
    _require_same_alphabet(u, v)
    n = len(u)
    return n <= len(v) and v.indices[:n] == u.indices


def is_factor(u: Word, v: Word) -> bool:
    _require_same_alphabet(u, v)
    n = len(u)
    if n == 0:
        return True
    return any(v.indices[i : i + n] == u.indices for i in range(len(v) - n + 1))


def is_proper_suffix(u: Word, v: Word) -> bool:
    return len(u) < len(v) and is_suffix(u, v)


def lcs(u: Word, v: Word) -> Word:
    """Longest common suffix; the empty word when the last letters differ."""
    _require_same_alphabet(u, v)
    n = 0
    while n < len(u) and n < len(v) and u.indices[-1 - n] == v.indices[-1 - n]:
        n += 1
    return Word(u.alphabet, u.indices[len(u) - n :])


def lcs_of(words: Iterable[Word]) -> Word:
    """Longest common suffix of a nonempty collection."""
    it = iter(words)
    try:
        out = next(it)
    except StopIteration:
        raise WordError("lcs_of requires at least one word") from None
    for w in it:
        out = lcs(out, w)
    return out


def suffixes(u: Word) -> Iterator[Word]:
    """All suffixes of ``u``, shortest first, epsilon included."""
    for n in range(len(u) + 1):
        yield Word(u.alphabet, u.indices[len(u) - n :])


def words_of_length(alphabet: Alphabet, length: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[Word]:
    """All words of the given length in lexicographic order.

    The order is part of the public contract: matrix rows and partition
    canonical forms downstream rely on it.
    """
    if length < 0:
        raise WordError("length must be >= 0")
    count = alphabet.size**length
    if count > limit:
        raise WordError(f"refusing to enumerate {count} words (limit {limit})")
    return [Word(alphabet, idx) for idx in iter_product(range(alphabet.size), repeat=length)]


def words_up_to_length(alphabet: Alphabet, max_len: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[Word]:
    """All nonempty words of length 1..max_len, in shortlex order."""
    out: list[Word] = []
    for n in range(1, max_len + 1):
        out.extend(words_of_length(alphabet, n, limit=limit))
    return out
