"""Whitehead automorphisms and the length-descent primitivity test."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .words import (
    Word,
    canonical_rotation,
    cyclic_reduce,
    letter_to_text,
    word_rank,
)

MAX_RANK = 8


@dataclass(frozen=True)
class WhiteheadMove:
    """Type-II Whitehead automorphism given by a multiplier letter and a letter set.

    Every letter x other than the multiplier ``a`` and its inverse is sent to
    ``a^e1 x a^e2`` where e1 = 1 if x^-1 is in the set and e2 = -1 if x is.
    """

    rank: int
    multiplier: int
    subset: frozenset

    def __post_init__(self):
        if not 2 <= self.rank <= MAX_RANK:
            raise ValueError(f"rank must be in [2, {MAX_RANK}], got {self.rank}")
        a = self.multiplier
        if not 0 <= a < 2 * self.rank:
            raise ValueError(f"multiplier {a} outside the alphabet")
        if any(not 0 <= x < 2 * self.rank for x in self.subset):
            raise ValueError("subset has letters outside the alphabet")
        if a not in self.subset or a ^ 1 in self.subset:
            raise ValueError("subset must contain the multiplier and not its inverse")
        if self.subset == {a}:
            raise ValueError("the identity move is excluded")

    @cached_property
    def images(self) -> tuple:
        a, A = self.multiplier, self.multiplier ^ 1
        table = []
        for x in range(2 * self.rank):
            if x in (a, A):
                table.append((x,))
                continue
            img = (x,)
            if x ^ 1 in self.subset:
                img = (a,) + img
            if x in self.subset:
                img = img + (A,)
            table.append(img)
        return tuple(table)

    def __str__(self):
        inner = ",".join(letter_to_text(x) for x in sorted(self.subset))
        return f"({letter_to_text(self.multiplier)}|{{{inner}}})"


@lru_cache(maxsize=None)
def all_moves(p: int) -> tuple:
    """All type-II moves for rank p, ordered by multiplier then by subset bitmask."""
    moves = []
    for a in range(2 * p):
        others = [x for x in range(2 * p) if x >> 1 != a >> 1]
        for mask in range(1, 1 << len(others)):
            chosen = frozenset(x for i, x in enumerate(others) if mask >> i & 1)
            moves.append(WhiteheadMove(p, a, chosen | {a}))
    return tuple(moves)


def apply(m: WhiteheadMove, w: Sequence[int]) -> Word:
    images = m.images
    out: list[int] = []
    try:
        for x in w:
            for y in images[x]:
                if out and out[-1] == y ^ 1:
                    out.pop()
                else:
                    out.append(y)
    except IndexError:
        raise ValueError(f"word {list(w)} is not over the rank-{m.rank} alphabet") from None
    return tuple(out)


def cyclic_image_length(m: WhiteheadMove, c: Sequence[int]) -> int:
    return len(cyclic_reduce(apply(m, c))[0])


def minimize(c: Sequence[int], rank: int | None = None) -> tuple[Word, list]:
    """Greedy Whitehead descent on a cyclically reduced word.

    Each step takes the move giving the shortest cyclic image, the first such
    move in ``all_moves`` order, and stops once no move shortens the word.
    """
    if rank is None:
        rank = word_rank(c)
    moves = all_moves(rank)
    current = tuple(c)
    trace = []
    while len(current) > 1:
        best = None
        best_len = len(current)
        for m in moves:
            image = cyclic_reduce(apply(m, current))[0]
            if len(image) < best_len:
                best, best_len, best_image = m, len(image), image
        if best is None:
            break
        trace.append(best)
        current = best_image
    return current, trace


@lru_cache(maxsize=1 << 18)
def _primitive_class(core: Word, rank: int) -> bool:
    return len(minimize(core, rank)[0]) == 1


def is_primitive(w: Sequence[int], rank: int | None = None) -> bool:
    if rank is None:
        rank = word_rank(w)
    core = cyclic_reduce(w)[0]
    if len(core) <= 1:
        return len(core) == 1
    return _primitive_class(canonical_rotation(core), rank)


def format_trace(trace) -> str:
    return " ".join(str(m) for m in trace)
