"""Exponential growth rate of a set of words, estimated at finite cutoffs.

The rate is limsup_N (|S in ball(N)| / |ball(N)|)^(1/N). At finite N we
report d_N at checkpoints together with its maximum over the remaining
checkpoints, and a least-squares slope of log counts against length, which
converges much faster than d_N itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .f2prim import CountTable
from .words import count_ball

LIMSUP_NOTE = (
    "finite-N summary of a limsup: d_N at each checkpoint and tail_max, "
    "the maximum of d_N over this and all later checkpoints"
)


@dataclass(frozen=True)
class GrowthEstimate:
    N: int
    numerator: int
    denominator: int
    d_N: float

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "d_N": self.d_N,
        }


def nth_root_ratio(numerator: int, denominator: int, N: int) -> float:
    # logs of exact ints avoid float overflow for large N
    if numerator == 0:
        return 0.0
    return math.exp((math.log(numerator) - math.log(denominator)) / N)


def estimate(series: CountTable, N: int) -> GrowthEstimate:
    if N < 1:
        raise ValueError("cutoff must be >= 1")
    if not series.covers(N):
        raise ValueError(f"count table covers lengths up to {series.max_length}, not {N}")
    numerator = series.cumulative(N)
    denominator = count_ball(series.rank, N)
    if numerator > denominator:
        raise ValueError("numerator exceeds ball size; the table is not a subset count")
    return GrowthEstimate(N, numerator, denominator, nth_root_ratio(numerator, denominator, N))


def checkpoints(series: CountTable, Ns: Sequence[int]) -> list[dict]:
    """Estimates at each checkpoint plus the running maximum over the tail."""
    estimates = [estimate(series, N) for N in sorted(Ns)]
    rows = []
    for i, e in enumerate(estimates):
        row = e.to_dict()
        row["tail_max"] = max(x.d_N for x in estimates[i:])
        rows.append(row)
    return rows


@dataclass(frozen=True)
class SlopeFit:
    base: float
    range: tuple
    slope: float
    residual: float
    parity_offsets: bool
    points: int

    @property
    def rate(self) -> float:
        """Growth rate relative to the base, base^(slope - 1)."""
        return self.base ** (self.slope - 1)

    def to_dict(self) -> dict:
        return {
            "range": list(self.range),
            "base": self.base,
            "slope": self.slope,
            "residual": self.residual,
            "parity_offsets": self.parity_offsets,
        }


def fit_log_counts(ns, counts, base: float, parity_offsets: bool = True) -> tuple[float, float]:
    """Least-squares slope of log_base(count) against n and the max absolute residual.

    With ``parity_offsets`` odd and even lengths get separate intercepts and
    share the slope.
    """
    ns = np.asarray(ns, dtype=float)
    ys = np.array([math.log(c) / math.log(base) for c in counts])
    cols = [ns]
    if parity_offsets:
        parity = ns.astype(int) % 2
        cols += [(parity == k).astype(float) for k in (0, 1) if (parity == k).any()]
    else:
        cols.append(np.ones_like(ns))
    X = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(X, ys, rcond=None)
    return float(coef[0]), float(np.abs(X @ coef - ys).max())


def slope_fit(
    series: CountTable,
    n_lo: int,
    n_hi: int,
    base: float,
    cumulative: bool = False,
    parity_offsets: bool = True,
) -> SlopeFit:
    if not n_lo < n_hi:
        raise ValueError("need n_lo < n_hi")
    if base <= 1:
        raise ValueError("base must exceed 1")
    values = series.cumulative_table() if cumulative else series.per_length
    ns = [n for n in range(n_lo, n_hi + 1) if values.get(n, 0) > 0]
    if len(ns) < 3:
        raise ValueError(f"only {len(ns)} usable points in [{n_lo}, {n_hi}]")
    slope, residual = fit_log_counts(ns, [values[n] for n in ns], base, parity_offsets)
    return SlopeFit(base, (n_lo, n_hi), slope, residual, parity_offsets, len(ns))


def power_law_fit(xs, ys) -> tuple[float, float]:
    """Exponent and prefactor of y ~ c x^k by least squares on log-log data."""
    lx, ly = np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float))
    k, logc = np.polyfit(lx, ly, 1)
    return float(k), float(math.exp(logc))


def growth_report(
    name: str,
    series: CountTable,
    Ns: Sequence[int],
    fit_range: tuple,
    base: float | None = None,
    cumulative_fit: bool = False,
) -> dict:
    base = base if base is not None else 2 * series.rank - 1
    fit = slope_fit(series, fit_range[0], fit_range[1], base, cumulative=cumulative_fit)
    fit_dict = fit.to_dict()
    fit_dict["series"] = "cumulative" if cumulative_fit else "per_length"
    fit_dict["rate"] = fit.rate
    return {
        "set": name,
        "rank": series.rank,
        "checkpoints": checkpoints(series, Ns),
        "slope_fit": fit_dict,
        "limsup_note": LIMSUP_NOTE,
    }
