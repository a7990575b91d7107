"""Primitive elements of F_2: conjugacy classes, exact counts, brute-force scans.

Primitive conjugacy classes of F_2 correspond one-to-one to primitive vectors
of Z^2 (exponent sums). The class with vector (p, q), p, q > 0, contains the
lower Christoffel word of slope q/p; the other sign patterns come from the
substitutions a -> a^-1 and b -> b^-1.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .whitehead import is_primitive
from .words import (
    Word,
    canonical_rotation,
    count_reduced,
    enumerate_reduced,
    format_word,
)

A, A_INV, B, B_INV = 0, 1, 2, 3

SETS = ("all", "primitive", "cyc-primitive")
TOTIENT_CAP = 10**6


def abelianization(w: Sequence[int], rank: int = 2) -> tuple[int, int]:
    if rank != 2:
        raise ValueError("abelianization is defined here for rank 2 only")
    sa = sb = 0
    for x in w:
        if x == A:
            sa += 1
        elif x == A_INV:
            sa -= 1
        elif x == B:
            sb += 1
        elif x == B_INV:
            sb -= 1
        else:
            raise ValueError(f"letter {x} is not in the rank-2 alphabet")
    return sa, sb


def christoffel(p: int, q: int) -> Word:
    """Lower Christoffel word with p letters ``a`` and q letters ``b``."""
    if p < 1 or q < 1:
        raise ValueError("christoffel needs positive p and q")
    if gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    n = p + q
    return tuple(A if (i * q) % n > ((i - 1) * q) % n else B for i in range(1, n + 1))


def substitute_signs(w: Sequence[int], sign_a: int, sign_b: int) -> Word:
    flip = (1 if sign_a < 0 else 0, 1 if sign_b < 0 else 0)
    return tuple(x ^ flip[x >> 1] for x in w)


@dataclass(frozen=True)
class PrimitiveClass:
    vector: tuple
    representative: Word

    @property
    def length(self) -> int:
        return len(self.representative)

    @property
    def word(self) -> str:
        return format_word(self.representative)

    def inverse_vector(self) -> tuple:
        return (-self.vector[0], -self.vector[1])


def class_for_vector(sa: int, sb: int) -> PrimitiveClass:
    if gcd(abs(sa), abs(sb)) != 1:
        raise ValueError(f"({sa}, {sb}) is not a primitive vector")
    if sb == 0:
        rep = (A,) if sa > 0 else (A_INV,)
    elif sa == 0:
        rep = (B,) if sb > 0 else (B_INV,)
    else:
        rep = substitute_signs(christoffel(abs(sa), abs(sb)), sa, sb)
    return PrimitiveClass((sa, sb), canonical_rotation(rep))


def class_vectors(n: int):
    """Signed primitive vectors with |s_a| + |s_b| = n, in class enumeration order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        yield from ((1, 0), (-1, 0), (0, 1), (0, -1))
        return
    for p in range(1, n):
        q = n - p
        if gcd(p, q) == 1:
            for sa, sb in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                yield sa * p, sb * q


def enumerate_classes(N: int) -> list[PrimitiveClass]:
    """All primitive conjugacy classes of cyclic length at most N.

    Ordered by length, then by the positive vector (p, q) with p ascending,
    then by sign pattern (+,+), (+,-), (-,+), (-,-).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    return [class_for_vector(*v) for n in range(1, N + 1) for v in class_vectors(n)]


def totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient needs n >= 1")
    if n > TOTIENT_CAP:
        raise ValueError(f"totient is capped at n <= {TOTIENT_CAP}")
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def count_classes(n: int) -> int:
    """Number of primitive conjugacy classes of cyclic length exactly n, by enumeration."""
    return sum(1 for _ in class_vectors(n))


def count_classes_formula(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return 4 if n == 1 else 4 * totient(n)


def count_cyc_reduced_primitive_words(n: int) -> int:
    return n * count_classes(n)


def conjugator_count(p: int, k: int) -> int:
    """Reduced conjugators u of length k with u c u^-1 reduced, for any cyclically reduced c."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 1
    return (2 * p - 2) * (2 * p - 1) ** (k - 1)


def count_primitives(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(
        count_cyc_reduced_primitive_words(m) * conjugator_count(2, (n - m) // 2)
        for m in range(n % 2 or 2, n + 1, 2)
    )


@dataclass(frozen=True)
class CountTable:
    rank: int
    per_length: dict = field(default_factory=dict)

    def __post_init__(self):
        for n, c in self.per_length.items():
            if n < 0 or c < 0:
                raise ValueError(f"invalid entry {n}: {c}")

    @property
    def max_length(self) -> int:
        return max(self.per_length, default=-1)

    def covers(self, N: int) -> bool:
        return all(n in self.per_length for n in range(1, N + 1))

    def cumulative(self, N: int) -> int:
        return sum(c for n, c in self.per_length.items() if n <= N)

    def cumulative_table(self) -> dict:
        out, total = {}, 0
        for n in sorted(self.per_length):
            total += self.per_length[n]
            out[n] = total
        return out

    def to_csv(self, cumulative: bool = False) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "count", "cumulative"] if cumulative else ["n", "count"])
        cum = self.cumulative_table()
        for n in sorted(self.per_length):
            row = [n, self.per_length[n]]
            if cumulative:
                row.append(cum[n])
            writer.writerow(row)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, rank: int) -> CountTable:
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None or reader.fieldnames[:2] != ["n", "count"]:
            raise ValueError("count CSV must start with header n,count")
        return cls(rank, {int(row["n"]): int(row["count"]) for row in reader})

    def to_dict(self, cumulative: bool = False) -> dict:
        out = {
            "rank": self.rank,
            "per_length": {str(n): str(self.per_length[n]) for n in sorted(self.per_length)},
        }
        if cumulative:
            out["cumulative"] = {str(n): str(c) for n, c in self.cumulative_table().items()}
        return out

    def to_json(self, cumulative: bool = False) -> str:
        return json.dumps(self.to_dict(cumulative), indent=2)

    @classmethod
    def from_json(cls, text: str) -> CountTable:
        data = json.loads(text)
        return cls(int(data["rank"]), {int(n): int(c) for n, c in data["per_length"].items()})


def convolution_table(kind: str, N: int, rank: int = 2) -> CountTable:
    """Closed-form counts for lengths 1..N (plus length 0 for ``all``)."""
    if kind == "all":
        return CountTable(rank, {n: count_reduced(rank, n) for n in range(N + 1)})
    if rank != 2:
        raise ValueError(f"closed-form counting of {kind!r} is available for rank 2 only")
    if kind == "primitive":
        return CountTable(2, {n: count_primitives(n) for n in range(1, N + 1)})
    if kind == "cyc-primitive":
        return CountTable(2, {n: count_cyc_reduced_primitive_words(n) for n in range(1, N + 1)})
    raise ValueError(f"unknown set {kind!r}; expected one of {SETS}")


def _scan(kind: str, rank: int, n: int, prefix: tuple) -> int:
    if kind == "all":
        return sum(1 for _ in enumerate_reduced(rank, n, prefix))
    total = 0
    for w in enumerate_reduced(rank, n, prefix):
        if kind == "cyc-primitive" and n > 1 and w[0] == w[-1] ^ 1:
            continue
        if is_primitive(w, rank):
            total += 1
    return total


def _scan_job(args):
    return _scan(*args)


def bruteforce_table(kind: str, N: int, rank: int = 2, workers: int = 1) -> CountTable:
    """Counts for lengths 1..N by scanning every reduced word with the Whitehead test.

    Work is split by first letter; partial counts are summed in letter order,
    so the result does not depend on ``workers``.
    """
    if kind not in SETS:
        raise ValueError(f"unknown set {kind!r}; expected one of {SETS}")
    lengths = range(0 if kind == "all" else 1, N + 1)
    jobs = [(kind, rank, n, (x,) if n else ()) for n in lengths for x in (range(2 * rank) if n else [0])]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partial = list(pool.map(_scan_job, jobs, chunksize=1))
    else:
        partial = [_scan_job(job) for job in jobs]
    counts = {n: 0 for n in lengths}
    for job, c in zip(jobs, partial):
        counts[job[2]] += c
    return CountTable(rank, counts)


def rotations(w: Sequence[int]) -> Iterable[Word]:
    w = tuple(w)
    return (w[i:] + w[:i] for i in range(max(1, len(w))))
