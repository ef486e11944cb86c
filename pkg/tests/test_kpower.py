import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapforge import certificates as ct
from gapforge import covering as cv
from gapforge import kpower as kp

import oracles

SMALL_PRIMES = oracles.primes_upto(101)


# --- solvability and characters ---------------------------------------------

def test_solvability_examples():
    assert kp.kpower_solvable(2, kp.context(5, 2))
    assert not kp.kpower_solvable(1, kp.context(5, 2))
    assert not kp.kpower_solvable(2, kp.context(3, 2))
    assert kp.character_indicator(2, kp.context(5, 2)) == pytest.approx(1.0)
    assert kp.character_indicator(4, kp.context(5, 2)) == pytest.approx(0.0, abs=1e-12)
    assert kp.character_indicator(1, kp.context(7, 3)) == 0.0


def test_context_invariants():
    for p in SMALL_PRIMES:
        g = kp.primitive_root(p)
        order = next(e for e in range(1, p) if pow(g, e, p) == 1)
        assert order == p - 1
        for K in (1, 2, 3, 6):
            ctx = kp.context(p, K)
            assert ctx.D == math.gcd(p - 1, K) and (p - 1) % ctx.D == 0


@given(st.sampled_from(SMALL_PRIMES[1:]), st.integers(1, 10**6))
@settings(max_examples=100, deadline=None)
def test_discrete_log_inverts_pow(p, a):
    a = a % p or 1
    g = kp.primitive_root(p)
    e = kp.discrete_log(a, g, p)
    assert 0 <= e < p - 1 and pow(g, e, p) == a


def test_exhaustive_solvability_and_indicator():
    mismatches = 0
    for p in SMALL_PRIMES:
        for K in range(1, 7):
            ctx = kp.context(p, K)
            for n in range(p):
                naive = oracles.kpower_solvable_scan(n, p, K)
                if kp.kpower_solvable(n, ctx) != naive or kp.kpower_solvable_naive(n, p, K) != naive:
                    mismatches += 1
                chi = kp.character_indicator(n, ctx)
                if (1 - n) % p == 0:
                    mismatches += chi != 0.0
                elif abs(chi - (1.0 if naive else 0.0)) > 1e-9:
                    mismatches += 1
    assert mismatches == 0


@pytest.mark.parametrize("p", [5, 7, 13, 31, 97])
@pytest.mark.parametrize("K", [1, 2, 3, 4, 6])
def test_solvable_census(p, K):
    count = sum(oracles.kpower_solvable_scan(n, p, K) for n in range(p))
    assert count == (p - 1) // math.gcd(p - 1, K)
    assert sum(kp.kpower_solvable(n, kp.context(p, K)) for n in range(p)) == count


# --- residue vectors ---------------------------------------------------------

def test_residue_examples():
    assert kp.residue_from_c(1, 5, 2) == 2
    assert kp.residue_from_c(0, 3, 1) == 0
    with pytest.raises(ValueError):
        kp.ResidueVectorK(2, ((5, 0, 4),))  # c = -1 mod 5
    with pytest.raises(ValueError):
        kp.ResidueVectorK(2, ((5, 1, 1),))


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_select_residues_invariant_and_seeded(K, seed):
    ps = oracles.primes_upto(60)[1:]
    v = kp.select_residues_K(ps, K, seed)
    for s, a, c in v.entries:
        assert (c + 1) % s != 0
        assert a == (1 - pow(c + 1, K, s)) % s
    assert v == kp.select_residues_K(ps, K, seed)
    with pytest.raises(ValueError):
        kp.select_residues_K([2, 3], K, seed)


def test_sifted_set_examples():
    assert kp.sifted_set((0, 10), [(0, 2)]) == [1, 3, 5, 7, 9]
    got = kp.sifted_set((0, 15), [(2, 5), (1, 3)])
    assert got == sorted(set(range(1, 16)) - {2, 7, 12} - {1, 4, 7, 10, 13})
    assert kp.sifted_set((3, 8), []) == [4, 5, 6, 7, 8]


@given(st.lists(st.tuples(st.integers(0, 10), st.sampled_from([2, 3, 5, 7])), max_size=3,
                unique_by=lambda t: t[1]), st.integers(0, 500), st.integers(0, 300))
@settings(max_examples=100, deadline=None)
def test_sifted_set_inclusion_exclusion(classes, lo, width):
    hi = lo + width
    classes = [(a % s, s) for a, s in classes]

    def count(sub):
        a, M = oracles.crt_brute([(a, s) for a, s in sub]) if sub else (0, 1)
        return (hi - a) // M - (lo - a) // M

    pred = sum((-1) ** len(sub) * count(sub) for j in range(len(classes) + 1)
               for sub in combinations(classes, j))
    assert len(kp.sifted_set((lo, hi), classes)) == pred


def test_tilde_primes_examples():
    assert kp.tilde_primes(10, 3, 3) == [11, 17, 23, 29]
    assert kp.tilde_primes(10, 2, 2) == [11, 19]
    assert kp.tilde_primes(10, 1, 3) == []
    assert all(p % 12 == 3 for p in kp.tilde_primes(100, 5, 4, even_modulus="3K"))


@given(st.integers(-200, 200), st.sampled_from(SMALL_PRIMES[1:]))
@settings(max_examples=200, deadline=None)
def test_legendre_matches_scan(a, p):
    assert kp.legendre(a, p) == oracles.legendre_scan(a, p)


def test_exceptional_set():
    P = [11, 19]
    U = kp.exceptional_U(20, P, 0.4)
    want = [u for u in range(21) if sum(oracles.legendre_scan(-u, p) == 1 for p in P) == 0]
    assert U == want and 0 in U
    assert kp.exceptional_U(20, P, 1.0) == list(range(21))
    P = kp.tilde_primes(50, 4, 2)
    bound = math.floor(0.3 * len(P))
    want = [u for u in range(61) if sum(oracles.legendre_scan(-u, p) == 1 for p in P) <= bound]
    assert kp.exceptional_U(60, P, 0.3) == want


# --- good set ---------------------------------------------------------------

def test_good_set_trivial_cases():
    empty = kp.GoodSetParams(2, {1: ()})
    rep = kp.good_set_membership(7, empty)
    assert rep.r == {1: 0.0} and rep.in_G
    loose = kp.GoodSetParams.build(10, 200, 3, eps=math.inf)
    assert all(kp.good_set_membership(n, loose).in_G for n in range(50))


@pytest.mark.parametrize("K", [2, 3, 4])
def test_good_set_matches_direct_sum(K):
    params = kp.GoodSetParams.build(5, 120, K, eps=0.02)
    for u, fam in params.families.items():
        assert all(s % K == u % K for s in fam)
    for n in range(30):
        rep = kp.good_set_membership(n, params)
        for u, fam in params.families.items():
            direct = sum(1 / s for s in fam if oracles.kpower_solvable_scan(n, s, K))
            assert rep.r[u] == pytest.approx(direct)
            assert rep.r_star[u] == pytest.approx(sum(1 / s for s in fam) / math.gcd(u - 1, K))
        assert rep.in_G == all(abs(rep.r[u] - rep.r_star[u]) <= 0.02 for u in rep.r)


# --- the matrix -------------------------------------------------------------

def test_matrix_entries():
    M = kp.build_matrix(2, 30, 2, 3, 10)
    assert M.entry(1, 1) == 33 ** 2
    assert M.entry(1, 5) == 1093
    assert M.moduli == (2, 3, 5)
    M1 = kp.build_matrix(2, 30, 1, 3, 10)
    assert M1.row(2) == list(range(63, 73))
    with pytest.raises(kp.BudgetError):
        kp.build_matrix(2, 30, 2, 10**4, 10**4)


@given(st.integers(0, 10**6), st.sampled_from([6, 30, 210, 2310]), st.integers(1, 4),
       st.integers(1, 20), st.integers(1, 30))
@settings(max_examples=100, deadline=None)
def test_column_witnesses_divide_columns(m0, Px, K, r, y):
    M = kp.build_matrix(m0, Px, K, r, y)
    for u, s in kp.column_witnesses(M).items():
        assert all(M.entry(rr, u) % s == 0 for rr in range(1, r + 1))


def _verify_winner(M, r):
    q = M.base(r)
    row = M.row(r)
    return (oracles.is_prime_big(q) and row[0] == q ** M.K
            and all(not oracles.is_prime_big(v) for v in row[1:]))


@pytest.mark.parametrize("x,y,K,rows", [(12, 15, 2, 400), (14, 20, 2, 300), (12, 14, 3, 300),
                                         (18, 25, 2, 500), (14, 22, 3, 400), (20, 30, 2, 800)])
def test_scan_winners_reverified(x, y, K, rows):
    _, m0, Px, unc = kp.kpower_covering(x, y, K)
    M = kp.build_matrix(m0, Px, K, rows, y)
    scan = kp.scan_rows(M, unc)
    assert set(scan.winners) | set(scan.R1) == set(scan.R0)
    assert all(oracles.is_prime_big(M.base(r)) for r in scan.R0)
    assert all(not oracles.is_prime_big(M.base(r)) for r in range(1, rows + 1) if r not in scan.R0)
    for r in scan.winners:
        assert _verify_winner(M, r)
    for r in scan.R1:
        assert any(oracles.is_prime_big(M.entry(r, u)) for u in scan.exceptional)


def test_scan_all_exceptional_is_pure_primality():
    M = kp.build_matrix(0, 6, 2, 60, 8)
    scan = kp.scan_rows(M, range(2, 9))
    assert scan.witnesses == {}
    for r in scan.R0:
        has_prime = any(oracles.is_prime_big(M.entry(r, u)) for u in range(2, 9))
        assert (r in scan.R1) == has_prime


def test_scan_no_prime_bases():
    M = kp.build_matrix(1, 30, 2, 20, 5)  # bases 2 + 30 r are even
    scan = kp.scan_rows(M)
    assert scan.R0 == [] and scan.winners == []


def test_kpower_covering_origin():
    vec, m0, Px, unc = kp.kpower_covering(20, 40, 2)
    for s, a, c in vec.entries:
        assert m0 % s == c
    M = kp.build_matrix(m0, Px, 2, 5, 40)
    wit = kp.column_witnesses(M)
    assert set(range(2, 41)) - set(wit) == set(unc)


# --- K-th powers in gaps -----------------------------------------------------

def test_kth_power_in_interval_examples():
    assert kp.kth_power_in_interval(23, 29, 2) == 5
    assert kp.kth_power_in_interval(7, 11, 3) == 2
    assert kp.kth_power_in_interval(7, 11, 1) is None  # no prime strictly between
    assert kp.kth_power_in_interval(24, 26, 2) == 5
    assert kp.kth_power_in_interval(25, 36, 2) is None


@given(st.integers(1, 5000), st.integers(1, 400), st.integers(1, 4))
@settings(max_examples=150, deadline=None)
def test_kth_power_in_interval_matches_scan(lo, width, K):
    hi = lo + width
    want = next((q for q in range(2, hi) if lo < q ** K < hi and oracles.is_prime(q)), None)
    assert kp.kth_power_in_interval(lo, hi, K) == want


@pytest.mark.parametrize("K", [2, 3])
def test_find_kth_power_in_gap(K):
    cert = ct.certify_gap(cv.build_erdos_covering(20, 20))
    hit = kp.find_kth_power_in_gap(cert, K, 2000)
    assert hit is not None
    qK = hit.q ** K
    assert oracles.is_prime_big(hit.q)
    assert hit.p_lo < qK < hit.p_hi and hit.gap >= cert.y
    if hit.p_hi < 3 * 10**24:
        assert oracles.is_prime_big(hit.p_lo) and oracles.is_prime_big(hit.p_hi)
        assert not any(oracles.is_prime_big(v) for v in range(hit.p_lo + 1, hit.p_hi))
    assert kp.find_kth_power_in_gap(cert, 1, 100) is None
