from math import gcd

import pytest
from hypothesis import given, strategies as st

from kqlattice.arith import (
    CoprimeFactorization,
    coprime_factorizations,
    extended_gcd,
    is_prime_power,
    mod_inverse,
    solve_k_diophantine,
    solve_q_diophantine,
)
from kqlattice.errors import DomainError, InvalidFactorization, NotInvertible


def all_factorizations(max_M):
    return [f for M in range(2, max_M + 1) for f in coprime_factorizations(M)]


@pytest.mark.parametrize(
    "p, q, expected",
    [(3, 5, (1, 2, -1)), (6, 4, (2, 1, -1)), (7, 0, (7, 1, 0))],
)
def test_extended_gcd_examples(p, q, expected):
    assert extended_gcd(p, q) == expected


def test_extended_gcd_zero_zero():
    with pytest.raises(DomainError):
        extended_gcd(0, 0)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_extended_gcd_bezout(p, q):
    if p == 0 and q == 0:
        return
    g, x, y = extended_gcd(p, q)
    assert g == gcd(p, q) >= 0
    assert p * x + q * y == g


def test_mod_inverse_examples():
    assert mod_inverse(5, 3) == 2
    assert mod_inverse(1, 7) == 1
    with pytest.raises(NotInvertible):
        mod_inverse(2, 4)


@pytest.mark.parametrize("m", range(2, 40))
def test_mod_inverse_matches_brute_force(m):
    for p in range(m):
        brute = [r for r in range(m) if p * r % m == 1]
        if gcd(p, m) == 1:
            assert mod_inverse(p, m) == brute[0]
            assert len(brute) == 1
        else:
            assert brute == []
            with pytest.raises(NotInvertible):
                mod_inverse(p, m)


def _divisor_scan(M):
    return [(d, M // d) for d in range(1, M + 1) if M % d == 0 and d > 1 and M // d > 1 and gcd(d, M // d) == 1]


def test_coprime_factorizations_examples():
    assert [(f.M1, f.M2) for f in coprime_factorizations(15)] == [(3, 5), (5, 3)]
    assert coprime_factorizations(8) == []
    assert [(f.M1, f.M2) for f in coprime_factorizations(36)] == [(4, 9), (9, 4)]


@pytest.mark.parametrize("M", range(2, 201))
def test_coprime_factorizations_against_divisor_scan(M):
    got = coprime_factorizations(M)
    assert [(f.M1, f.M2) for f in got] == _divisor_scan(M)
    assert all(f.M1 * f.M2 == M for f in got)
    assert (got == []) == is_prime_power(M)


def test_trivial_factors_opt_in():
    assert [(f.M1, f.M2) for f in coprime_factorizations(8, allow_trivial=True)] == [(1, 8), (8, 1)]
    with pytest.raises(InvalidFactorization):
        CoprimeFactorization(8, 1, 8)


@pytest.mark.parametrize("args", [(12, 2, 6), (15, 3, 4), (4, 2, 2)])
def test_factorization_rejects_bad_splits(args):
    with pytest.raises(InvalidFactorization):
        CoprimeFactorization(*args)


@pytest.mark.parametrize(
    "n_prime, expected", [(0, (0, 0)), (1, (2, 3)), (2, (1, 1))]
)
def test_solve_k_examples(n_prime, expected):
    assert solve_k_diophantine(n_prime, CoprimeFactorization.of(3, 5)) == expected


@pytest.mark.parametrize(
    "m_prime, expected", [(0, (0, 0)), (1, (2, 1)), (4, (3, 1))]
)
def test_solve_q_examples(m_prime, expected):
    assert solve_q_diophantine(m_prime, CoprimeFactorization.of(3, 5)) == expected


def test_solvers_range_errors():
    f = CoprimeFactorization.of(3, 5)
    for bad in (-1, 3):
        with pytest.raises(DomainError):
            solve_k_diophantine(bad, f)
    for bad in (-1, 5):
        with pytest.raises(DomainError):
            solve_q_diophantine(bad, f)


def test_solvers_unique_and_bijective_up_to_200():
    for f in all_factorizations(200):
        M1, M2 = f.M1, f.M2
        ts = set()
        for n in range(M1):
            brute = [(t, v) for t in range(M1) for v in range(M2) if n + M1 * v == M2 * t]
            assert brute == [solve_k_diophantine(n, f)]
            ts.add(brute[0][0])
        assert ts == set(range(M1))
        ss = set()
        for m in range(M2):
            brute = [(s, u) for s in range(M2) for u in range(M1) if m + M2 * u == M1 * s]
            assert brute == [solve_q_diophantine(m, f)]
            ss.add(brute[0][0])
        assert ss == set(range(M2))
