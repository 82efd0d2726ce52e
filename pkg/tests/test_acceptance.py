"""Acceptance suite: one test per primary criterion, each with an explicit
pass line and, where stated, a wall-clock budget.  Run with ``pytest -v``
to get one PASSED/FAILED line per criterion.
"""

import random
import sys
import time
from fractions import Fraction as F
from math import gcd
from pathlib import Path

from atoric.cqs import TData, hj_expand, hj_eval, milnor_invariants, t_classify
from atoric.diagram import (
    MutationBlocked,
    equivalent,
    monodromy,
    mutate,
    smooth_vertex,
    truncate,
    wedge_diagram,
)
from atoric.lattice import mat_mul, mat_vec
from atoric.presolution import (
    PartialChain,
    PartialResolution,
    canonical_degrees,
    enumerate_p_resolutions,
    rays_from_chain,
)
from atoric.resolution import Chain, discrepancies, maximal_resolution
from atoric.sequences import markov_triples, pi_minus, quintic_ladder

sys.path.insert(0, str(Path(__file__).parent))
from oracles import markov_oracle, presolutions_oracle  # noqa: E402


def _done(tag: str, detail: str):
    print(f"[{tag}] PASS — {detail}")


def test_A01_continued_fraction_expansion_and_roundtrip():
    t0 = time.monotonic()
    assert hj_expand(11, 3) == [4, 3]
    assert hj_expand(25, 14) == [2, 5, 3]
    pairs = 0
    for n in range(1, 501):
        for a in range(n == 1 and 0 or 1, n):
            if gcd(n, a) == 1:
                assert hj_eval(hj_expand(n, a)) == (n, a)
                pairs += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 5.0, f"budget exceeded: {elapsed:.1f}s"
    _done("A01", f"anchors exact; round-trip on {pairs} pairs, n <= 500, "
                 f"{elapsed:.2f}s < 5s")


def test_A02_discrepancies_and_adjunction():
    t0 = time.monotonic()
    assert discrepancies([4]) == (F(-1, 2),)
    assert discrepancies([4, 3]) == (F(-7, 11), F(-6, 11))
    rng = random.Random(2)
    for _ in range(1000):
        bs = [rng.randint(2, 9) for _ in range(rng.randint(1, 12))]
        ks = discrepancies(bs)
        padded = (F(0), *ks, F(0))
        for i, b in enumerate(bs, start=1):
            residual = -b * padded[i] + padded[i - 1] + padded[i + 1] - (b - 2)
            assert residual == 0
    elapsed = time.monotonic() - t0
    assert elapsed < 5.0, f"budget exceeded: {elapsed:.1f}s"
    _done("A02", f"anchors exact; adjunction residual 0 on 1000 random chains "
                 f"(2<=b<=9, len<=12), {elapsed:.2f}s < 5s")


def test_A03_maximal_resolution_and_order_independence():
    base = maximal_resolution(11, 3)
    assert base.bs == (5, 1, 4)
    assert base.alphas == (F(4, 11), F(9, 11), F(5, 11))
    for seed in range(50):
        assert maximal_resolution(11, 3, random.Random(seed)) == base
    _done("A03", "chain (5,1,4) with alpha (4/11,9/11,5/11); identical over "
                 "50 randomized blow-up orders")


def test_A04_canonical_degrees_anchors():
    collapse_c1 = canonical_degrees(PartialResolution(11, 3, ((-1, 4),)))
    assert collapse_c1.k_degrees == (F(3, 2),)
    exercise = canonical_degrees(PartialChain((1, 2, 5, 3), (0,)))
    assert exercise.k_degrees == (F(-3, 5),)
    _done("A04", "degree 3/2 on the kept curve after collapsing the first; "
                 "-3/5 on the kept (-1)-curve of chain [1,2,5,3]")


def test_A05_p_resolution_enumeration_and_oracle():
    t0 = time.monotonic()
    entries = enumerate_p_resolutions(19, 7)
    multisets = sorted(sorted(e.vertex_types) for e in entries)
    assert multisets == sorted([
        sorted([(2, 1), (1, 0), (1, 0)]),
        sorted([(4, 1), (1, 0), (1, 0)]),
        sorted([(4, 1), (9, 2)]),
    ])
    assert len(enumerate_p_resolutions(11, 3)) == 2
    pairs = 0
    for n in range(2, 61):
        for a in range(1, n):
            if gcd(n, a) != 1:
                continue
            chain = maximal_resolution(n, a)
            rays = rays_from_chain(n, a, chain.bs)
            expect = sorted(tuple(rays[p - 1] for p in kept)
                            for kept in presolutions_oracle(n, a, rays, chain.bs))
            got = sorted(e.pr.kept for e in enumerate_p_resolutions(n, a))
            assert got == expect, (n, a)
            pairs += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"budget exceeded: {elapsed:.1f}s"
    _done("A05", f"(19,7) gives the 3 expected corner multisets, (11,3) gives 2; "
                 f"oracle agreement on {pairs} pairs, n <= 60, {elapsed:.1f}s < 60s")


def test_A06_monodromy_formula_and_properties():
    assert monodromy((1, 0)) == ((1, -1), (0, 1))
    rng = random.Random(6)
    seen = 0
    while seen < 100:
        p, q = rng.randint(-30, 30), rng.randint(-30, 30)
        if (p, q) == (0, 0) or gcd(p, q) != 1:
            continue
        seen += 1
        m = monodromy((p, q))
        assert m == ((1 + p * q, -p * p), (q * q, 1 - p * q))
        assert mat_vec(m, (p, q)) == (p, q)
        assert m[0][0] + m[1][1] == 2
        shifted = ((m[0][0] - 1, m[0][1]), (m[1][0], m[1][1] - 1))
        assert mat_mul(shifted, shifted) == ((0, 0), (0, 0))
    _done("A06", "closed form, fixed vector, trace 2 and (M-I)^2 = 0 on "
                 "100 random primitive vectors")


def _random_mutable_diagram(rng):
    """A bounded diagram with a designated cut, drawn from three families."""
    family = rng.randrange(3)
    if family == 0:
        n = rng.randrange(3, 31)
        a = rng.randrange(1, n)
        if gcd(n, a) != 1 or t_classify(n, a) is not None:
            return None
        c_len = F(rng.randrange(1, 5), rng.randrange(1, 3))
        return pi_minus(n, a, c_len=c_len), 0
    if family == 1:
        d = quintic_ladder(rng.randrange(1, 7), 11, 3).diagram
        return d, rng.randrange(len(d.cuts))
    p = rng.randrange(2, 6)
    q = rng.choice([q for q in range(1, p) if gcd(p, q) == 1])
    n = p * p
    d = smooth_vertex(wedge_diagram(n, (p * q - 1) % n), 0)
    return truncate(d, "end", (-1, 0), F(rng.randrange(2, 8))), 0


def test_A07_mutation_anchors_and_double_mutation():
    for p, q in ((2, 1), (3, 1), (3, 2), (5, 3), (7, 4)):
        n = p * p
        d = smooth_vertex(wedge_diagram(n, (p * q - 1) % n), 0)
        m = monodromy(d.cuts[0].direction)
        assert d.cuts[0].direction == (p, q)
        assert mat_vec(m, (0, -1)) == (p * p, p * q - 1)

    d = pi_minus(11, 3)
    m = monodromy(d.cuts[0].direction)
    assert m == ((3, -4), (1, -1))
    assert mat_vec(m, (0, -1)) == (4, 1)
    assert mat_vec(m, (1, -2)) == (11, 3)

    rng = random.Random(20260819)
    successes = attempts = 0
    while successes < 200:
        attempts += 1
        assert attempts <= 1500, "generator failed to reach 200 valid diagrams"
        try:
            sample = _random_mutable_diagram(rng)
            if sample is None:
                continue
            d, ci = sample
            d1 = mutate(d, ci)
        except (ValueError, MutationBlocked):
            continue
        d2 = mutate(d1, ci)  # reverse mutation must be legal
        assert equivalent(d, d2)
        successes += 1
    _done("A07", f"wedge and template direction anchors exact; double mutation "
                 f"equivalent on {successes} random valid diagrams "
                 f"({attempts} candidates)")


def test_A08_ladder_first_terms_and_recursion():
    t0 = time.monotonic()
    r = quintic_ladder(12, 11, 3)
    assert not r.blocked
    assert r.pairs[:3] == ((5, 3), (14, 9), (37, 24))
    assert len(r.pairs) >= 10
    for (p0, q0), (p1, q1), (p2, q2) in zip(r.pairs, r.pairs[1:], r.pairs[2:]):
        assert p2 == 3 * p1 - p0 and q2 == 3 * q1 - q0
    for (p0, q0), (p1, q1) in zip(r.pairs, r.pairs[1:]):
        assert p0 * q1 - p1 * q0 == 3
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0, f"budget exceeded: {elapsed:.1f}s"
    _done("A08", f"first terms (5,3),(14,9),(37,24); three-term recursion and "
                 f"cross-determinant 3 over {len(r.pairs)} steps, "
                 f"{elapsed:.2f}s < 10s")


def test_A09_markov_triples_match_brute_force():
    t0 = time.monotonic()
    got = markov_triples(1000)
    assert got == markov_oracle(1000)
    assert (1, 1, 1) in got and len(got) == 13
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0, f"budget exceeded: {elapsed:.1f}s"
    _done("A09", f"all 13 triples up to 1000 match the brute-force scan, "
                 f"{elapsed:.1f}s < 30s")


def test_A10_milnor_invariants_all_small_t_types():
    count = 0
    for p in range(1, 101):
        for d in range(1, 10000 // (p * p) + 1):
            qs = (1,) if p == 1 else tuple(q for q in range(1, p)
                                           if gcd(p, q) == 1)
            for q in qs:
                n = d * p * p
                a = (d * p * q - 1) % n
                t = t_classify(n, a)
                assert t == TData(d, p, q), (n, a)
                m = milnor_invariants(t)
                assert m.h1_order == p
                assert m.h2_rank == d - 1
                assert m.rational_ball == (d == 1)
                count += 1
    _done("A10", f"h1 order p, h2 rank d-1, d=1 flagged as rational ball "
                 f"across {count} T-types with n <= 10000")
