"""Acceptance battery: one recorded pass/fail line per criterion.

Each test records its verdict before asserting, so the summary at the end of
the run lists every criterion even when one of them fails.
"""
import itertools
import math
import random
import subprocess
import sys
import time

import pytest

from conftest import record
from cyclofactor import ntheory as nt
from cyclofactor.composed import (
    ComposedKind, brawley_carlitz_irreducible, composed_product, oracle_composed,
    random_irreducible, random_monic,
)
from cyclofactor.construct import (
    construct_fm, construct_thm2, thm2_power_equals_composed, varshamov,
)
from cyclofactor.cyclotomic import (
    cyclotomic_poly, expected_degree, factor_phi_2nr, factor_phi_coprime_composed,
    oracle_factor_cyclotomic, two_adic_profile,
)
from cyclofactor.errors import HypothesisError
from cyclofactor.ffield import FieldTower
from cyclofactor.lrs import (
    LinearSequence, berlekamp_massey, predicted_complexity, product_sequence, safe_length,
    zierler_mills_check,
)
from cyclofactor.poly import Polynomial, is_irreducible, poly_order
from cyclofactor.verify import PHI_2N7_TUPLES, verify_reference_table


# -- 1: F_m samples ------------------------------------------------------------------

@pytest.mark.xfail(strict=True, reason="two listed rows carry a typo in the input polynomial")
def test_c01_fm_table_literal():
    t0 = time.perf_counter()
    cells = verify_reference_table(1)
    secs = time.perf_counter() - t0
    bad = [c.row for c in cells if not c.passed]
    ok = not bad and secs < 10
    record(1, ok, f"{len(cells) - len(bad)}/{len(cells)} cells in {secs:.2f}s; mismatched rows {bad}")
    assert ok


def test_c01_fm_table_mismatches_are_only_the_typo_rows():
    t0 = time.perf_counter()
    cells = verify_reference_table(1)
    assert time.perf_counter() - t0 < 10
    assert sorted(c.row for c in cells if not c.passed) == ["(2,3,6)", "(9,5,5)"]
    partial = [c for c in cells if c.row == "(49,3,5)"]
    assert [c.check for c in partial] == ["degree", "leading-terms", "constant", "irreducible"]
    assert all(c.passed for c in partial)


# -- 2, 3: factor tuples of Φ_(2^n 7) -----------------------------------------------------

@pytest.mark.parametrize("number,q", [(2, 5), (3, 19)])
def test_c02_c03_phi_2n7_tuples(number, q):
    t0 = time.perf_counter()
    tower = FieldTower.for_order(q)
    got = {n: sorted(factor_phi_2nr(tower, n, 7).tuples()) for n in (1, 2, 3)}
    secs = time.perf_counter() - t0
    want = {n: sorted(v) for n, v in PHI_2N7_TUPLES[q].items()}
    ok = got == want and secs < 1
    record(number, ok, f"q={q}, n=1..3 tuple sets {'match' if got == want else 'differ'}; {secs:.3f}s")
    assert ok


# -- 4, 5: closed form vs orbit oracle sweep -------------------------------------------

SWEEP_Q = [3, 5, 7, 9, 11, 13, 19, 23, 25]
SWEEP_R = [3, 5, 7, 9, 11, 15, 17, 21]


@pytest.fixture(scope="module")
def sweep():
    t0 = time.perf_counter()
    rows = []
    for q in SWEEP_Q:
        tower = FieldTower.for_order(q)
        for r in SWEEP_R:
            if math.gcd(q, r) != 1:
                continue
            prof = two_adic_profile(q, r)
            for n in range(1, min(prof.K + 2, 8) + 1):
                closed = factor_phi_2nr(tower, n, r, certify_result=False)
                oracle = oracle_factor_cyclotomic(tower, 2**n * r)
                rows.append({
                    "q": q, "r": r, "n": n, "prof": prof,
                    "same": closed.multiset() == oracle.multiset(),
                    "product": closed.product() == cyclotomic_poly(tower, 2**n * r),
                    "irreducible": all(is_irreducible(f) for f in closed.factors),
                    "degrees": closed.degrees(),
                    "count": len(closed.factors),
                })
    return rows, time.perf_counter() - t0


def test_c04_oracle_sweep(sweep):
    rows, secs = sweep
    bad = []
    for row in rows:
        N = 2 ** row["n"] * row["r"]
        d = nt.order_mod(row["q"], N)
        counts_ok = row["count"] == nt.phi(N) // d and set(row["degrees"]) == {d}
        if not (row["same"] and row["product"] and row["irreducible"] and counts_ok):
            bad.append((row["q"], row["r"], row["n"]))
    ok = not bad and secs < 120
    record(4, ok, f"{len(rows)} (q, r, n) cases, {len(bad)} failures, {secs:.1f}s")
    assert ok


def _literal_degree(prof, n):
    return prof.d_r if n <= prof.K else 2 ** (n - prof.K) * prof.d_r


def _literal_law_failures(rows, scope=lambda prof: True):
    bad = []
    for row in rows:
        prof = row["prof"]
        if not scope(prof):
            continue
        n = row["n"]
        frozen = nt.phi(2**prof.K * prof.r) // _literal_degree(prof, prof.K)
        count_ok = n < prof.K or row["count"] == frozen
        if set(row["degrees"]) != {_literal_degree(prof, n)} or not count_ok:
            bad.append((prof.q, prof.r, n))
    return bad


@pytest.mark.xfail(strict=True, reason="for q = 3 mod 4 with odd d_r the doubling starts before K")
def test_c05_degree_law_literal(sweep):
    rows, _ = sweep
    bad = _literal_law_failures(rows)
    cases = sorted({(q, r) for q, r, _ in bad})
    record(5, not bad, f"{len(rows) - len(bad)}/{len(rows)} cases follow d_r / 2^(n-K) d_r; "
                       f"off for (q, r) in {cases}")
    assert not bad


def test_c05_degree_law_where_it_applies(sweep):
    rows, _ = sweep
    scoped = lambda prof: prof.q % 4 == 1 or prof.d_r % 2 == 0  # noqa: E731
    assert any(scoped(row["prof"]) for row in rows)
    assert _literal_law_failures(rows, scoped) == []
    # every failure of the literal law lies in the complementary class
    for q, r, n in _literal_law_failures(rows):
        prof = two_adic_profile(q, r)
        assert q % 4 == 3 and prof.d_r % 2 == 1


def test_c05_corrected_degree_law(sweep):
    rows, _ = sweep
    for row in rows:
        prof, n = row["prof"], row["n"]
        assert set(row["degrees"]) == {expected_degree(prof, n)}
        # counts stop growing once the degree starts doubling
        freeze = prof.A + 1 if prof.q % 4 == 3 and prof.d_r % 2 else prof.K
        if n > freeze:
            assert row["count"] == nt.phi(2**freeze * prof.r) // expected_degree(prof, freeze)


# -- 6: composed products ------------------------------------------------------------

def _avoiding(kind, field, make):
    bad = kind.excluded(field)
    while True:
        fs = make()
        if bad is None or not any(field.is_zero(h(bad)) for h in fs):
            return fs


def test_c06_composed_products():
    t0 = time.perf_counter()
    towers = {q: FieldTower.for_order(q) for q in (2, 3, 4, 5, 7, 9)}
    mismatches = 0
    total = 0
    for kind in ComposedKind:
        rng = random.Random(f"c6:{kind.value}")
        for i in range(200):
            field = towers[rng.choice(list(towers))].base
            f, g = _avoiding(kind, field, lambda: (
                random_monic(field, rng.randrange(1, 4), rng),
                random_monic(field, rng.randrange(1, 4), rng)))
            total += 1
            mismatches += composed_product(kind, f, g) != oracle_composed(kind, f, g)
    # Brawley-Carlitz both ways: coprime degrees give irreducible, shared factors never do
    bc_wrong = 0
    rng = random.Random("c6:bc")
    shapes = [(1, 2), (2, 3), (3, 4), (1, 4), (2, 5), (2, 2), (2, 4), (3, 3), (4, 2), (3, 6)]
    kinds = list(ComposedKind)
    for i in range(100):
        kind = kinds[i % 4]
        field = towers[rng.choice([2, 3, 5])].base
        m, n = shapes[i % len(shapes)]
        f, g = _avoiding(kind, field, lambda: (
            random_irreducible(field, m, rng), random_irreducible(field, n, rng)))
        predicted = brawley_carlitz_irreducible(kind, f, g)
        bc_wrong += predicted != (math.gcd(m, n) == 1)
        bc_wrong += is_irreducible(composed_product(kind, f, g)) != predicted
    secs = time.perf_counter() - t0
    ok = mismatches == 0 and bc_wrong == 0 and secs < 60
    record(6, ok, f"{total} pairs vs oracle ({mismatches} off), 100 irreducibility pairs "
                  f"({bc_wrong} off), {secs:.1f}s")
    assert ok


# -- 7: the three constructions ------------------------------------------------------

DESK = [(2, 6), (3, 4), (4, 3), (5, 3), (7, 2), (9, 2)]


def _desk_instances():
    for q, maxdeg in DESK:
        tower = FieldTower.for_order(q)
        for d in range(1, maxdeg + 1):
            for tail in itertools.product(range(q), repeat=d):
                if tail[0] == 0:
                    continue
                f = Polynomial(tower.base, list(tail) + [1])
                if not is_irreducible(f):
                    continue
                for r in (3, 5, 7, 11, 13):
                    if r != tower.p:
                        yield f, r


def test_c07_construction_suite():
    t0 = time.perf_counter()
    hits, problems = 0, []
    for f, r in _desk_instances():
        try:
            quot = construct_thm2(f, r)
        except HypothesisError:
            continue
        fm, var = construct_fm(f, r), varshamov(f, r)
        hits += 1
        if not (quot.result == fm.result == var.result and fm.irreducible):
            problems.append((f.field.q, f.to_ints(), r, "disagree"))
        if poly_order(fm.result) != nt.lcm(poly_order(f), r):
            problems.append((f.field.q, f.to_ints(), r, "order"))
    tower = FieldTower.for_order(2)
    f = Polynomial(tower.base, [1, 0, 1, 1])
    big = construct_thm2(f, 11, k=1).components[-1]
    example_ok = (big.degree == 330 and is_irreducible(big)
                  and thm2_power_equals_composed(f, 11, 1))
    secs = time.perf_counter() - t0
    ok = hits > 0 and not problems and example_ok and secs < 60
    record(7, ok, f"{hits} desk instances agree with order lcm(t, r); "
                  f"degree-330 lift {'irreducible' if example_ok else 'WRONG'}; {secs:.1f}s")
    assert ok


# -- 8: product-sequence complexity ---------------------------------------------------

def _random_nonzero_init(rng, k):
    while True:
        init = [rng.randrange(5) for _ in range(k)]
        if any(init):
            return init


@pytest.fixture(scope="module")
def complexities():
    t0 = time.perf_counter()
    tower = FieldTower.for_order(5)
    c7 = cyclotomic_poly(tower, 7)
    rng = random.Random("c8")
    out = {}
    for n in (4, 5, 6):
        c2n = cyclotomic_poly(tower, 2**n)
        Ls = []
        for _ in range(100):
            S = LinearSequence(c2n, _random_nonzero_init(rng, 2 ** (n - 1)))
            T = LinearSequence(c7, _random_nonzero_init(rng, 6))
            Ls.append(berlekamp_massey(tower.base, product_sequence(S, T, safe_length(S, T)))[1])
        out[n] = Ls
    return out, time.perf_counter() - t0


@pytest.mark.xfail(strict=True, reason="a generic product sequence reaches the full φ(2^n·7)")
def test_c08_complexity_literal(complexities):
    data, secs = complexities
    parts, ok = [], secs < 60
    for n, Ls in data.items():
        target = 2 ** (n - 3) * 6
        hit = sum(L == target for L in Ls)
        divides = all(target % L == 0 for L in Ls)
        ok = ok and hit >= 90 and divides
        parts.append(f"n={n}: {hit}% equal {target}, typical {max(set(Ls), key=Ls.count)}")
    record(8, ok, "; ".join(parts))
    assert ok


def test_c08_complexity_structure(complexities):
    data, secs = complexities
    assert secs < 60
    for n, Ls in data.items():
        pred = predicted_complexity(5, 7, n)
        assert pred["factor_degree"] == 2 ** (n - 3) * 6
        assert all(L % pred["factor_degree"] == 0 and L <= pred["generic"] for L in Ls)
        assert sum(L == pred["generic"] for L in Ls) >= 90


def test_c08_zierler_mills_random_pairs():
    tower = FieldTower.for_order(5)
    rng = random.Random("c8:zm")
    for _ in range(100):
        c1 = random_monic(tower.base, rng.randrange(1, 6), rng, tower.base.zero)
        c2 = random_monic(tower.base, rng.randrange(1, 6), rng, tower.base.zero)
        S = LinearSequence(c1, [rng.randrange(5) for _ in range(c1.degree)])
        T = LinearSequence(c2, [rng.randrange(5) for _ in range(c2.degree)])
        assert zierler_mills_check(S, T)


# -- 9: coprime-order composed factorization ------------------------------------------

def test_c09_coprime_orders():
    t0 = time.perf_counter()
    tower = FieldTower.for_order(11)
    small = factor_phi_coprime_composed(tower, 35)  # certified inside
    small_ok = small.multiset() == oracle_factor_cyclotomic(tower, 35).multiset()
    big = factor_phi_coprime_composed(tower, 595, certify_result=False)
    phi595 = cyclotomic_poly(tower, 595)
    picks = random.Random("c9").sample(big.factors, 3)
    big_ok = (len(big.factors) == 8 and set(big.degrees()) == {48}
              and all(is_irreducible(f) and f.divides(phi595) for f in picks))
    secs = time.perf_counter() - t0
    ok = small_ok and big_ok and secs < 120
    record(9, ok, f"Φ_35 full check {'ok' if small_ok else 'FAILED'}; Φ_595: "
                  f"{len(big.factors)} factors of degree {sorted(set(big.degrees()))}; {secs:.1f}s")
    assert ok


# -- 10: determinism ------------------------------------------------------------------

def _cli(*args):
    return subprocess.run([sys.executable, "-m", "cyclofactor.cli", *args],
                          capture_output=True, check=True).stdout


def test_c10_transcripts_are_byte_identical():
    runs = [_cli("transcript", "--seed", "7") for _ in range(2)]
    table = [_cli("--json", "verify-paper", "--table", "2") for _ in range(2)]
    ok = runs[0] == runs[1] and table[0] == table[1] and len(runs[0]) > 1000
    record(10, ok, f"seed-7 transcript {len(runs[0])} bytes, "
                   f"{'identical' if ok else 'DIFFERENT'} across runs")
    assert ok
