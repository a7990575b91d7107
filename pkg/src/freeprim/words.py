"""Reduced words in a free group of rank p.

A word is a tuple of small integers. Generator ``i`` is encoded as ``2*i``
and its inverse as ``2*i + 1``, so inverting a letter is ``x ^ 1``.

Text form: ``a``, ``b``, ``c``, ... are the generators in order and the
matching uppercase letter is the inverse (``A`` is a^-1). The empty string
is the identity.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Word = tuple  # tuple[int, ...], always freely reduced

MAX_TEXT_RANK = 26


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    rank: int

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError(f"rank must be >= 2, got {self.rank}")

    @property
    def letters(self) -> range:
        return range(2 * self.rank)

    def __contains__(self, letter) -> bool:
        return isinstance(letter, int) and 0 <= letter < 2 * self.rank

    def check(self, letters: Iterable[int]) -> None:
        for x in letters:
            if x not in self:
                raise ValueError(f"letter {x!r} is not in the rank-{self.rank} alphabet")


def inverse_letter(x: int) -> int:
    return x ^ 1


def letter_to_text(x: int) -> str:
    g = x >> 1
    if g >= MAX_TEXT_RANK:
        raise ValueError(f"letter {x} has no text form")
    ch = string.ascii_lowercase[g]
    return ch.upper() if x & 1 else ch


def format_word(w: Sequence[int]) -> str:
    return "".join(letter_to_text(x) for x in w)


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse word text and freely reduce it.

    With ``rank`` given, letters beyond that rank are rejected.
    """
    letters = []
    for pos, ch in enumerate(text):
        if ch in string.ascii_lowercase:
            x = 2 * (ord(ch) - ord("a"))
        elif ch in string.ascii_uppercase:
            x = 2 * (ord(ch) - ord("A")) + 1
        else:
            raise WordSyntaxError(f"invalid character {ch!r} at position {pos} in {text!r}")
        if rank is not None and (x >> 1) >= rank:
            raise WordSyntaxError(f"letter {ch!r} is outside the rank-{rank} alphabet")
        letters.append(x)
    return reduce(letters)


def word_rank(w: Sequence[int]) -> int:
    """Smallest rank (at least 2) whose alphabet contains every letter of w."""
    return max(2, max(w, default=0) // 2 + 1)


def reduce(letters: Iterable[int], rank: int | None = None) -> Word:
    if rank is not None:
        letters = list(letters)
        Alphabet(rank).check(letters)
    out: list[int] = []
    for x in letters:
        if not isinstance(x, int) or x < 0:
            raise ValueError(f"invalid letter {x!r}")
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def multiply(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == x ^ 1:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def invert(w: Sequence[int]) -> Word:
    return tuple(x ^ 1 for x in reversed(w))


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != w[i + 1] ^ 1 for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return is_reduced(w) and (len(w) <= 1 or w[0] != w[-1] ^ 1)


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Split a reduced word as ``conjugator * core * conjugator^-1``.

    The core is cyclically reduced and ``len(w) == len(core) + 2*len(conjugator)``.
    """
    i, j = 0, len(w) - 1
    while i < j and w[i] == w[j] ^ 1:
        i += 1
        j -= 1
    return tuple(w[i : j + 1]), tuple(w[:i])


def canonical_rotation(w: Sequence[int]) -> Word:
    """Lexicographically least rotation; ties resolve to the earliest offset."""
    w = tuple(w)
    if len(w) <= 1:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def cyclic_class(w: Sequence[int]) -> Word:
    """Canonical representative of the conjugacy class of a reduced word."""
    return canonical_rotation(cyclic_reduce(w)[0])


def enumerate_reduced(p: int, n: int, prefix: Sequence[int] = ()) -> Iterator[Word]:
    """Every reduced word of length n starting with ``prefix``, depth-first by letter code."""
    if n < 0:
        raise ValueError("length must be non-negative")
    prefix = tuple(prefix)
    Alphabet(p).check(prefix)
    if not is_reduced(prefix) or len(prefix) > n:
        return
    k = 2 * p
    stack = [prefix]
    while stack:
        w = stack.pop()
        if len(w) == n:
            yield w
            continue
        forbidden = w[-1] ^ 1 if w else -1
        for x in range(k - 1, -1, -1):
            if x != forbidden:
                stack.append(w + (x,))


def enumerate_cyclically_reduced(p: int, n: int, prefix: Sequence[int] = ()) -> Iterator[Word]:
    for w in enumerate_reduced(p, n, prefix):
        if n <= 1 or w[0] != w[-1] ^ 1:
            yield w


def count_reduced(p: int, n: int) -> int:
    if n < 0:
        raise ValueError("length must be non-negative")
    if n == 0:
        return 1
    return 2 * p * (2 * p - 1) ** (n - 1)


def count_ball(p: int, n: int) -> int:
    if n < 0:
        raise ValueError("length must be non-negative")
    # 1 + 2p((2p-1)^n - 1)/(2p-2)
    return 1 + p * ((2 * p - 1) ** n - 1) // (p - 1)
