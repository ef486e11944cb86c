import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapforge import primes as pr

import oracles


# --- sieving and primality -------------------------------------------------

def test_sieve_segment_examples():
    assert pr.sieve_segment(0, 10) == [2, 3, 5, 7]
    assert pr.sieve_segment(10, 30) == [11, 13, 17, 19, 23, 29]
    assert pr.sieve_segment(0, 2) == []
    assert pr.sieve_segment(5, 5) == []


@given(st.integers(0, 3000), st.integers(0, 600))
@settings(max_examples=60, deadline=None)
def test_sieve_segment_matches_trial_division(lo, width):
    hi = lo + width
    assert pr.sieve_segment(lo, hi) == [n for n in range(lo, hi) if oracles.is_prime(n)]


def test_sieve_crosses_segment_boundary():
    lo = 2 * pr.SEGMENT_ODDS - 50
    got = pr.sieve_segment(lo, lo + 200)
    assert got == [n for n in range(lo, lo + 200) if oracles.is_prime(n)]


def test_prime_table():
    t = pr.PrimeTable.build(30)
    assert list(t) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert t.below(11) == [2, 3, 5, 7]


def test_is_prime_examples():
    assert not pr.is_prime(1)
    assert pr.is_prime(97)
    assert not pr.is_prime(341)
    assert not pr.is_prime(0) and not pr.is_prime(-7)


def test_is_prime_agrees_with_trial_division_below_1e5():
    table = np.zeros(100_001, dtype=bool)
    table[pr.sieve_array(0, 100_001)] = True
    assert all(pr.is_prime(n) == bool(table[n]) for n in range(100_001))
    assert all(pr.trial_division_is_prime(n) == bool(table[n]) for n in range(0, 100_001, 7))


@pytest.mark.parametrize("n", [3215031751, 2152302898747, 3474749660383, 341550071728321,
                               3825123056546413051, 318665857834031151167461])
def test_strong_pseudoprimes_rejected(n):
    assert not pr.is_prime(n)


def test_large_primes_and_probable_flag():
    p64 = (1 << 61) - 1
    assert pr.primality(p64) == (True, True)
    m127 = (1 << 127) - 1
    ok, proven = pr.primality(m127)
    assert ok and not proven
    assert pr.primality(m127 * 3) == (False, True) or not pr.primality(m127 * 3)[0]


@given(st.integers(2, 10**6))
@settings(max_examples=100, deadline=None)
def test_next_prev_prime(n):
    q = pr.next_prime(n)
    assert q > n and oracles.is_prime(q)
    assert not any(oracles.is_prime(m) for m in range(n + 1, q))
    p = pr.prev_prime(n)  # largest prime <= n
    assert p <= n and oracles.is_prime(p)
    assert not any(oracles.is_prime(m) for m in range(p + 1, n + 1))
    assert pr.prev_prime(1) is None


# --- arithmetic functions --------------------------------------------------

def test_primorial():
    assert pr.primorial(2) == 1
    assert pr.primorial(10) == 210
    assert pr.primorial(13) == 2310
    assert pr.primorial(0) == 1


@given(st.integers(1, 5000))
@settings(max_examples=100, deadline=None)
def test_mobius_phi_factorize(n):
    assert pr.mobius(n) == oracles.mobius(n)
    assert pr.euler_phi(n) == oracles.phi(n)
    f = pr.factorize(n)
    assert math.prod(p ** e for p, e in f.items()) == n
    assert set(f) == oracles.prime_factors(n)


# --- iterated logs ---------------------------------------------------------

def test_iterated_log():
    assert pr.iterated_log(math.e, 1) == pytest.approx(1.0)
    assert pr.iterated_log(math.exp(math.e), 2) == pytest.approx(1.0)
    assert pr.iterated_log(1e6, 3) == pytest.approx(math.log(math.log(math.log(1e6))))
    with pytest.raises(pr.DomainError):
        pr.iterated_log(2.0, 3)


def test_rankin_lower_bound():
    tower_log = math.exp(math.exp(math.e))  # log X for X = e^e^e^e
    l2, l3 = math.log(tower_log), math.log(math.log(tower_log))
    assert pr.rankin_normalization(tower_log) == pytest.approx(tower_log * l2 / l3 ** 2)
    x = 1e18
    L = [math.log(x)]
    for _ in range(3):
        L.append(math.log(L[-1]))
    assert pr.rankin_lower_bound(x) == pytest.approx(L[0] * L[1] * L[3] / L[2] ** 2)
    with pytest.raises(pr.DomainError):
        pr.rankin_lower_bound(1000)


# --- gaps ------------------------------------------------------------------

def test_max_gap_examples():
    assert pr.max_gap(10).gap == 2
    g = pr.max_gap(100)
    assert (g.p_lo, g.p_hi, g.gap) == (89, 97, 8)
    g = pr.max_gap(3)
    assert (g.p_lo, g.p_hi, g.gap) == (2, 3, 1)
    with pytest.raises(ValueError):
        pr.max_gap(2)


@given(st.integers(3, 20000))
@settings(max_examples=40, deadline=None)
def test_max_gap_matches_scan(X):
    g = pr.max_gap(X)
    assert (g.gap, g.p_lo, g.p_hi) == oracles.max_gap_scan(X)


def test_record_gaps_are_first_occurrences():
    recs = pr.record_gaps(1000)
    assert [r.gap for r in recs] == [1, 2, 4, 6, 8, 14, 18, 20]
    assert recs[-1].p_lo == 887
    assert all(a.gap < b.gap for a, b in zip(recs, recs[1:]))


def test_gap_record_merits():
    r = pr.GapRecord.from_pair(89, 97)
    assert r.merit == pytest.approx(8 / math.log(89))
    assert math.isnan(r.rankin_merit)
    big = pr.GapRecord.from_pair(1693182318746371, 1693182318747503)
    assert big.rankin_merit == pytest.approx(1132 / pr.rankin_lower_bound(1693182318746371))


# --- smooth numbers --------------------------------------------------------

def test_psi_examples():
    assert pr.psi_exact(10, 2) == 4
    assert pr.psi_exact(100, 5) == 34
    assert pr.psi_exact(57, 57) == 57
    assert pr.psi_exact(10**4, 10) == pr.psi_recursive(10**4, 10)


@given(st.integers(1, 400), st.integers(1, 60))
@settings(max_examples=60, deadline=None)
def test_psi_matches_factoring(x, y):
    assert pr.psi_exact(x, y) == oracles.psi(x, y)
    assert pr.psi_recursive(x, y) == oracles.psi(x, y)


@given(st.integers(2, 3000), st.integers(1, 50))
@settings(max_examples=40, deadline=None)
def test_psi_monotone(x, y):
    v = pr.psi_exact(x, y)
    assert pr.psi_exact(x + 1, y) >= v
    assert pr.psi_exact(x, y + 1) >= v


def test_rankin_upper_bound_examples():
    assert pr.rankin_upper_bound(7, 2, 2.0) == pytest.approx(49 * 4 / 3)
    assert pr.rankin_upper_bound(10, 3, 2.0) == pytest.approx(150.0)
    assert pr.rankin_upper_bound(100, 5, 1.5) >= 34
    with pytest.warns(pr.RankinWarning):
        pr.rankin_upper_bound(100, 5, 0.8)
    with pytest.raises(ValueError), warnings.catch_warnings():
        warnings.simplefilter("ignore", pr.RankinWarning)
        pr.rankin_upper_bound(100, 5, 0.0)


def test_optimize_eta_beats_grid():
    eta, bound = pr.optimize_eta(100, 5)
    assert 1 < eta <= 8
    assert bound >= 34
    for e in (1.1, 1.5, 2, 4):
        assert bound <= pr.rankin_upper_bound(100, 5, e) * (1 + 1e-9)
    assert pr.optimize_eta(50, 50)[1] >= 50
    assert pr.optimize_eta(10**4, 10)[1] >= pr.psi_exact(10**4, 10)


@given(st.integers(2, 3000), st.integers(2, 100))
@settings(max_examples=40, deadline=None)
def test_rankin_trick_is_upper_bound(x, y):
    y = min(x, y)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", pr.RankinWarning)
        assert pr.optimize_eta(x, y)[1] >= pr.psi_exact(x, y)


# --- analytic diagnostics --------------------------------------------------

def test_twin_pair_sum():
    assert pr.twin_pair_sum(10, 1) == pytest.approx(math.log(3) * math.log(5) + math.log(5) * math.log(7))
    assert pr.twin_pair_sum(10, 4) == 0.0
    assert pr.twin_pair_sum(4, 3) == 0.0


def test_circle_identity_small():
    lhs, rhs = pr.circle_identity_check(10, 1)
    assert lhs == pytest.approx(rhs, rel=1e-9)
    lhs, rhs = pr.circle_identity_check(2, 3)
    assert rhs == pytest.approx(7 * math.log(2) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_theta_discrepancy():
    theta = sum(math.log(p) for p in oracles.primes_upto(50))
    assert pr.theta_discrepancy(50, 1) == pytest.approx(abs(theta - 50))
    t31, t32 = math.log(7), math.log(2) + math.log(5)
    q1 = abs(math.log(2 * 3 * 5 * 7) - 10)
    q2 = abs(math.log(3 * 5 * 7) - 10)
    q3 = max(abs(t31 - 5), abs(t32 - 5))
    assert pr.theta_discrepancy(10, 3) == pytest.approx(q1 + q2 + q3)

    def oracle(x, Q):
        ps = oracles.primes_upto(x)
        tot = 0.0
        for q in range(1, Q + 1):
            tot += max(abs(sum(math.log(p) for p in ps if p % q == a % q) - x / oracles.phi(q))
                       for a in range(1, q + 1) if math.gcd(a, q) == 1)
        return tot

    assert pr.theta_discrepancy(100, 4) == pytest.approx(oracle(100, 4))


def test_twin_constant():
    assert pr.twin_constant(3) == pytest.approx(1.5)
    assert pr.twin_constant(5) == pytest.approx(1.40625)
    vals = [pr.twin_constant(n) for n in (10, 100, 1000, 10**4)]
    assert all(a > b > 1.3 for a, b in zip(vals, vals[1:]))
