"""Exit criteria. Run with ``pytest tests/test_acceptance.py -s`` to see one line per criterion."""

import math
import time

import pytest
from hypothesis import given, settings, strategies as st

from conftest import raw_letters, words
from freeprim import whitehead
from freeprim.f2prim import (
    bruteforce_table,
    convolution_table,
    count_classes,
    count_cyc_reduced_primitive_words,
    enumerate_classes,
    totient,
)
from freeprim.growth import estimate, slope_fit
from freeprim.hyperbolic import (
    basis_trace_triples,
    census_growth_fit,
    comparability,
    from_traces,
    geodesic_census,
    holonomy,
    modular_torus,
    trace,
    translation_length,
)
from freeprim.whitehead import all_moves, apply, is_primitive
from freeprim.words import canonical_rotation, cyclic_reduce, enumerate_reduced, invert, multiply, reduce

CASES = 1000


def report(number, name, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number} ({name}): {detail}")
    assert ok, detail


def markov_numbers(bound):
    found, seen, stack = set(), set(), [(1, 1, 1)]
    while stack:
        t = stack.pop()
        key = tuple(sorted(t))
        if key in seen or max(t) > bound:
            continue
        seen.add(key)
        found.update(t)
        x, y, z = t
        stack += [(3 * y * z - x, y, z), (x, 3 * x * z - y, z), (x, y, 3 * x * y - z)]
    return found


def test_1_oracle_equivalence():
    whitehead._primitive_class.cache_clear()
    start = time.perf_counter()
    brute_prim = bruteforce_table("primitive", 12, workers=1)
    brute_cyc = bruteforce_table("cyc-primitive", 12, workers=1)
    elapsed = time.perf_counter() - start
    conv_prim = convolution_table("primitive", 12)
    conv_cyc = convolution_table("cyc-primitive", 12)
    prim = [brute_prim.per_length[n] for n in range(1, 13)]
    cyc = [brute_cyc.per_length[n] for n in range(1, 13)]
    ok = (
        brute_prim == conv_prim
        and brute_cyc == conv_cyc
        and prim[:5] == [4, 8, 32, 48, 152]
        and cyc[:5] == [4, 8, 24, 32, 80]
        and elapsed < 120
    )
    report(1, "oracle equivalence n<=12", ok, f"primitives {prim}; cyc-reduced {cyc}; scan {elapsed:.1f}s")


def test_2_primitive_rate():
    table = convolution_table("primitive", 40)
    fit = slope_fit(table, 20, 40, 3)
    pooled = slope_fit(table, 20, 40, 3, parity_offsets=False)
    d = [estimate(table, N).d_N for N in (20, 30, 40)]
    bound = 1 / math.sqrt(3)
    ok = (
        0.48 <= fit.slope <= 0.52
        and fit.residual < 0.1
        and d[0] >= d[1] >= d[2]
        and all(x > bound for x in d)
    )
    report(
        2,
        "rate 1/sqrt(3)",
        ok,
        f"slope {fit.slope:.6f} residual {fit.residual:.2e} (parity-aware; pooled residual "
        f"{pooled.residual:.3f}), rate {fit.rate:.6f}; d_N at 20/30/40 = "
        + ", ".join(f"{x:.6f}" for x in d),
    )


def test_3_cyclically_reduced_rate():
    identity = all(count_cyc_reduced_primitive_words(n) == 4 * n * totient(n) for n in range(2, 1001))
    table = convolution_table("cyc-primitive", 300)
    fit = slope_fit(table, 100, 300, 3, cumulative=True)
    ok = identity and 0 <= fit.slope < 0.02
    report(3, "rate 1/3", ok, f"4n*phi(n) identity to 1000: {identity}; cumulative slope {fit.slope:.6f}")


def test_4_markov_correspondence():
    s = modular_torus()
    census = geodesic_census(s, 12)
    traces = [e.trace for e in census.entries]
    markov = markov_numbers(max(traces))
    contained = all(t % 3 == 0 and t // 3 in markov for t in traces)
    triples = list(basis_trace_triples(s, 12))
    exact = all(x * x + y * y + z * z == x * y * z for _, _, (x, y, z) in triples)
    report(
        4,
        "Markov traces",
        contained and exact,
        f"{len(traces)} geodesics, traces/3 in Markov set: {contained}; {len(triples)} basis triples exact: {exact}",
    )


def test_5_quadratic_growth():
    start = time.perf_counter()
    s = modular_torus()
    census = geodesic_census(s, 40)
    fit = census_growth_fit(census, comparability(s, 40).min_ratio)
    elapsed = time.perf_counter() - start
    ok = 1.8 <= fit["exponent"] <= 2.2 and elapsed < 60
    lo, hi = fit["window"]
    report(
        5,
        "quadratic growth in L",
        ok,
        f"exponent {fit['exponent']:.4f} over L in [{lo:.3f}, {hi:.3f}) ({fit['points']} points, "
        f"{len(census.entries)} geodesics), {elapsed:.1f}s",
    )


def test_6_comparability():
    s = modular_torus()
    r40 = comparability(s, 40)
    r30 = comparability(s, 30)
    change = abs(r40.max_ratio - r30.max_ratio) / r30.max_ratio
    ok = 0.5 <= r40.min_ratio <= r40.max_ratio <= 3.0 and change < 0.05
    report(
        6,
        "comparability",
        ok,
        f"ratio range [{r40.min_ratio:.6f}, {r40.max_ratio:.6f}], C_emp {r40.C_emp:.6f}, "
        f"max change 30->40 {100 * change:.2f}%",
    )


def test_7_invariant_suites():
    counts = {}

    def tick(name):
        counts[name] = counts.get(name, 0) + 1

    modular = modular_torus()
    teich = from_traces(3.5, 4.25)
    classes = enumerate_classes(16)
    cfg = settings(max_examples=CASES, database=None, deadline=None)

    @cfg
    @given(raw_letters(max_size=24))
    def reduce_idempotent(s):
        tick("reduce idempotence")
        assert reduce(reduce(s)) == reduce(s)

    @cfg
    @given(st.integers(0, 11), words(max_size=12), words(max_size=12))
    def homomorphism(i, u, v):
        tick("homomorphism law")
        m = all_moves(2)[i]
        assert apply(m, multiply(u, v)) == multiply(apply(m, u), apply(m, v))

    @cfg
    @given(words(min_size=1, max_size=8), words(max_size=3), st.integers(0, 11))
    def primitivity(w, u, i):
        tick("primitivity invariance")
        v = is_primitive(w)
        assert is_primitive(multiply(u, w, invert(u))) == v
        assert is_primitive(invert(w)) == v
        assert is_primitive(apply(all_moves(2)[i], w)) == v

    @cfg
    @given(st.integers(0, 10**6), st.integers(0, 100), words(max_size=3))
    def lengths(i, k, u):
        tick("translation length invariance")
        c = classes[i % len(classes)].representative
        k %= len(c)
        rotated = c[k:] + c[:k]
        ell = translation_length(modular, c)
        assert translation_length(modular, rotated) == ell
        assert translation_length(modular, invert(c)) == ell
        assert trace(holonomy(modular, multiply(u, c, invert(u)))) == trace(holonomy(modular, c))
        t = translation_length(teich, c)
        assert translation_length(teich, rotated) == pytest.approx(t, rel=1e-9)
        assert translation_length(teich, invert(c)) == pytest.approx(t, rel=1e-9)

    @cfg
    @given(st.integers(2, 3), st.integers(0, 7), st.integers(0, 3), st.integers(0, 10**6))
    def partition(p, n, depth, salt):
        tick("partition determinism")
        depth = min(depth, n)
        full = list(enumerate_reduced(p, n))
        prefixes = list(enumerate_reduced(p, depth))
        assert [w for pre in prefixes for w in enumerate_reduced(p, n, pre)] == full

    for check in (reduce_idempotent, homomorphism, primitivity, lengths, partition):
        check()
    tables = [bruteforce_table("primitive", 8, workers=k).to_csv() for k in (1, 2, 4)]
    deterministic_threads = len(set(tables)) == 1
    ok = all(c >= CASES for c in counts.values()) and len(counts) == 5 and deterministic_threads
    detail = ", ".join(f"{k} {v}" for k, v in counts.items())
    report(7, "invariant suites", ok, f"{detail}; workers 1/2/4 identical: {deterministic_threads}")
