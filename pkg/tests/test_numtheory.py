from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from ringgraph.numtheory import (
    count_irreducible,
    divisor_profile,
    divisors,
    factorize,
    is_prime,
    mobius,
    num_divisors,
    sigma,
)


def _naive_divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _monic_polys(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield tuple(tail) + (1,)


def _mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def _irreducible_by_enumeration(p, d):
    """Monic degree-d polynomials minus all products of two monic factors of
    positive degree."""
    reducible = set()
    for i in range(1, d // 2 + 1):
        for f in _monic_polys(p, i):
            for g in _monic_polys(p, d - i):
                reducible.add(_mul(f, g, p))
    return sum(1 for f in _monic_polys(p, d) if f not in reducible)


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_count_irreducible_matches_enumeration(p, d):
    assert count_irreducible(p, d) == _irreducible_by_enumeration(p, d)


def test_count_irreducible_known_values():
    assert [count_irreducible(2, d) for d in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]
    assert count_irreducible(2, 6) == 9  # 6 * 9 = 54 generators of GF(64)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 12))
def test_degree_count_identity(p, n):
    assert sum(d * count_irreducible(p, d) for d in divisors(n)) == p**n


@given(st.integers(1, 3000))
def test_divisors_match_naive(n):
    assert divisors(n) == _naive_divisors(n)
    assert num_divisors(n) == len(_naive_divisors(n))
    assert sigma(n) == sum(_naive_divisors(n))


@given(st.integers(1, 3000))
def test_mobius_inversion(n):
    assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)


@given(st.integers(1, 10**6))
def test_factorize_roundtrip(n):
    f = factorize(n)
    prod = 1
    for q, e in f.items():
        assert is_prime(q)
        prod *= q**e
    assert prod == n


def test_small_tables():
    assert [num_divisors(n) for n in range(1, 13)] == [1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]
    assert [sigma(n) for n in range(1, 13)] == [1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28]
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_profile():
    prof = divisor_profile(12)
    assert prof.divisors == (1, 2, 3, 4, 6, 12)
    assert (prof.d, prof.sigma) == (6, 28)


def test_errors():
    with pytest.raises(ValueError):
        divisors(0)
    with pytest.raises(TypeError):
        divisors(2.0)
    with pytest.raises(ValueError):
        count_irreducible(4, 2)
    with pytest.raises(ValueError):
        mobius(-1)
