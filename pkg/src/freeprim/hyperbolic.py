"""Holonomy of hyperbolic punctured tori and lengths of simple closed geodesics.

A structure is a pair of SL(2, R) matrices (A, B) whose commutator has trace
-2. Primitive conjugacy classes of F_2 are the simple closed geodesics, and
the length of the geodesic of w is 2 arccosh(|tr rho(w)| / 2).
"""

from __future__ import annotations

import bisect
import csv
import io
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .f2prim import PrimitiveClass, class_for_vector, enumerate_classes
from .growth import power_law_fit

TOL = 1e-12

Matrix = tuple  # ((a, b), (c, d))

IDENTITY = ((1, 0), (0, 1))


class NotHyperbolicError(ValueError):
    pass


class DomainError(ValueError):
    pass


def mat_mul(m: Matrix, n: Matrix) -> Matrix:
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_inv(m: Matrix) -> Matrix:
    # SL(2) inverse; assumes det = 1
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def trace(m: Matrix) -> float:
    return m[0][0] + m[1][1]


def det(m: Matrix) -> float:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _close(x, y, scale=1.0) -> bool:
    return abs(x - y) <= TOL * max(1.0, abs(scale))


@dataclass(frozen=True)
class PuncturedTorusStructure:
    mat_a: Matrix
    mat_b: Matrix
    exact: bool
    name: str = "custom"

    def __post_init__(self):
        A, B = self.mat_a, self.mat_b
        x, y, z = trace(A), trace(B), trace(mat_mul(A, B))
        comm = trace(mat_mul(mat_mul(A, B), mat_mul(mat_inv(A), mat_inv(B))))
        if self.exact:
            entries = [v for m in (A, B) for row in m for v in row]
            if not all(isinstance(v, int) for v in entries):
                raise ValueError("exact structures need integer entries")
            ok = det(A) == 1 and det(B) == 1 and comm == -2
        else:
            scale = x * x + y * y + z * z
            ok = (
                _close(det(A), 1, abs(A[0][0] * A[1][1]))
                and _close(det(B), 1, abs(B[0][0] * B[1][1]))
                and _close(comm, -2, scale)
            )
        if not ok:
            raise ValueError("matrices must lie in SL(2) with commutator trace -2")

    @property
    def traces(self) -> tuple:
        return trace(self.mat_a), trace(self.mat_b), trace(mat_mul(self.mat_a, self.mat_b))

    def letter_matrices(self) -> tuple:
        return (self.mat_a, mat_inv(self.mat_a), self.mat_b, mat_inv(self.mat_b))


def modular_torus() -> PuncturedTorusStructure:
    return PuncturedTorusStructure(((1, 1), (1, 2)), ((1, -1), (-1, 2)), exact=True, name="modular")


def fricke_root(x: float, y: float) -> float:
    """Larger root z of z^2 - xyz + x^2 + y^2 = 0, which makes tr[A, B] = -2."""
    if not (x > 2 and y > 2):
        raise DomainError(f"traces must exceed 2, got ({x}, {y})")
    disc = (x * y) ** 2 - 4 * (x * x + y * y)
    if disc < 0:
        raise DomainError(f"no real trace for AB with traces ({x}, {y})")
    z = (x * y + math.sqrt(disc)) / 2
    if not z > 2:
        raise DomainError(f"trace of AB would be {z} <= 2")
    return z


def from_traces(x: float, y: float) -> PuncturedTorusStructure:
    """Structure with tr A = x, tr B = y and tr AB the larger Fricke root.

    A = diag(lam, 1/lam) with lam + 1/lam = x, lam > 1. B = [[p, 1], [r, s]]
    with p + s = y and lam*p + s/lam = z fixes p and s; det B = 1 fixes r.
    """
    z = fricke_root(x, y)
    lam = (x + math.sqrt(x * x - 4)) / 2
    p = (z - y / lam) / (lam - 1 / lam)
    s = y - p
    r = p * s - 1
    A = ((lam, 0.0), (0.0, 1 / lam))
    B = ((p, 1.0), (r, s))
    return PuncturedTorusStructure(A, B, exact=False, name=f"traces({x:g},{y:g})")


def holonomy(s: PuncturedTorusStructure, w: Sequence[int]) -> Matrix:
    mats = s.letter_matrices()
    out = IDENTITY if s.exact else ((1.0, 0.0), (0.0, 1.0))
    for x in w:
        if not 0 <= x < 4:
            raise ValueError(f"letter {x} is not in the rank-2 alphabet")
        out = mat_mul(out, mats[x])
    return out


def length_from_trace(t) -> float:
    t = abs(t)
    if t <= 2:
        raise NotHyperbolicError(f"|trace| = {t} <= 2: element is not hyperbolic")
    if isinstance(t, int) and t > 10**150:
        # arccosh(t/2) = log(t) - O(t^-2)
        return 2 * math.log(t)
    return 2 * math.acosh(t / 2)


def translation_length(s: PuncturedTorusStructure, c: Sequence[int]) -> float:
    return length_from_trace(trace(holonomy(s, c)))


@dataclass(frozen=True)
class CensusEntry:
    cls: PrimitiveClass
    trace: float
    length: float

    @property
    def word_length(self) -> int:
        return self.cls.length


def _orientation_key(v) -> bool:
    """Pick one class from each pair {v, -v}: first nonzero coordinate positive."""
    return v[0] > 0 or (v[0] == 0 and v[1] > 0)


@dataclass(frozen=True)
class GeodesicCensus:
    """Unoriented simple closed geodesics whose primitive class has cyclic length <= N."""

    structure: str
    N: int
    entries: tuple

    @cached_property
    def lengths(self) -> list:
        return [e.length for e in self.entries]

    @property
    def L_max(self) -> float:
        return self.lengths[-1] if self.entries else 0.0

    def count(self, L: float) -> int:
        return bisect.bisect_right(self.lengths, L)

    def rows(self) -> list:
        rows = []
        for e in self.entries:
            t = e.trace if isinstance(e.trace, int) else f"{e.trace:.9f}"
            rows.append(
                {
                    "class_vector": f"({e.cls.vector[0]},{e.cls.vector[1]})",
                    "word": e.cls.word,
                    "trace": str(t),
                    "length": f"{e.length:.9f}",
                }
            )
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf, ["class_vector", "word", "trace", "length"], lineterminator="\n"
        )
        writer.writeheader()
        writer.writerows(self.rows())
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "structure": self.structure,
            "N": self.N,
            "L_max": round(self.L_max, 9),
            "counting": "unoriented simple closed geodesics",
            "entries": self.rows(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def geodesic_census(s: PuncturedTorusStructure, N: int) -> GeodesicCensus:
    if N < 1:
        raise ValueError("N must be >= 1")
    entries = []
    for cls in enumerate_classes(N):
        if not _orientation_key(cls.vector):
            continue
        t = trace(holonomy(s, cls.representative))
        entries.append(CensusEntry(cls, abs(t), length_from_trace(t)))
    # stable sort keeps class enumeration order among equal lengths
    entries.sort(key=lambda e: e.length)
    return GeodesicCensus(s.name, N, tuple(entries))


@dataclass(frozen=True)
class ComparabilityReport:
    N: int
    min_ratio: float
    max_ratio: float
    trajectory: tuple  # (n, running min, running max) for n = 1..N

    @property
    def C_emp(self) -> float:
        return max(self.max_ratio, 1 / self.min_ratio)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
            "C_emp": self.C_emp,
            "trajectory": [{"n": n, "min_ratio": lo, "max_ratio": hi} for n, lo, hi in self.trajectory],
        }


def comparability(s: PuncturedTorusStructure, N: int) -> ComparabilityReport:
    """Extremes of hyperbolic length / word length over primitive classes of length <= N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    by_length: dict = {}
    for cls in enumerate_classes(N):
        ratio = translation_length(s, cls.representative) / cls.length
        lo, hi = by_length.get(cls.length, (math.inf, -math.inf))
        by_length[cls.length] = (min(lo, ratio), max(hi, ratio))
    trajectory = []
    lo, hi = math.inf, -math.inf
    for n in range(1, N + 1):
        a, b = by_length[n]
        lo, hi = min(lo, a), max(hi, b)
        trajectory.append((n, lo, hi))
    return ComparabilityReport(N, lo, hi, tuple(trajectory))



def census_growth_fit(census: GeodesicCensus, min_ratio: float) -> dict:
    """Log-log fit of count(L) against L over the top half of the complete L range.

    A class of word length n has length at least ``min_ratio * n``, so the
    census is complete for L < (N + 1) * min_ratio; longer geodesics may be
    missing and are left out of the fit.
    """
    if not census.entries:
        raise ValueError("empty census")
    complete_below = (census.N + 1) * min_ratio
    lo = census.lengths[0]
    start = lo + (complete_below - lo) / 2
    xs = sorted({x for x in census.lengths if start <= x < complete_below})
    if len(xs) < 3:
        raise ValueError("too few geodesics in the fit window; raise N")
    exponent, prefactor = power_law_fit(xs, [census.count(x) for x in xs])
    return {
        "exponent": exponent,
        "prefactor": prefactor,
        "window": [start, complete_below],
        "complete_below": complete_below,
        "points": len(xs),
    }


def basis_trace_triples(s: PuncturedTorusStructure, N: int):
    """Trace triples (tr u, tr v, tr uv) over bases reached by Farey mediants.

    Starting from the basis (a, b) in each sign quadrant, a pair of classes
    with vectors v1, v2 (a basis up to conjugation) spawns the pairs
    (v1, v1 + v2) and (v1 + v2, v2). Yields (v1, v2, (x, y, z)) while
    |v1 + v2| <= N. On any structure x^2 + y^2 + z^2 = xyz.
    """
    for sa, sb in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        stack = [((sa, 0), (0, sb))]
        while stack:
            v1, v2 = stack.pop()
            v3 = (v1[0] + v2[0], v1[1] + v2[1])
            if abs(v3[0]) + abs(v3[1]) > N:
                continue
            x, y, z = (
                trace(holonomy(s, class_for_vector(*v).representative)) for v in (v1, v2, v3)
            )
            yield v1, v2, (abs(x), abs(y), abs(z))
            stack.append((v1, v3))
            stack.append((v3, v2))
