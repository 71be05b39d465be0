from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ringgraph.errors import SizeLimitError
from ringgraph.gf import Poly, is_irreducible, irreducible_poly, make_field
from ringgraph.numtheory import count_irreducible

FIELDS = [(2, 1), (2, 2), (2, 3), (2, 6), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2), (2, 8)]


def _brute_irreducible(coeffs, p):
    """No root-free factorization shortcut: try every monic divisor."""
    f = Poly(p, coeffs)
    from ringgraph.gf import poly_divmod
    import itertools
    for deg in range(1, f.degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            g = tuple(tail) + (1,)
            _, r = poly_divmod(f.coeffs, g, p)
            if not any(r):
                return False
    return True


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_test_matches_trial_division(p, d):
    import itertools
    count = 0
    for tail in itertools.product(range(p), repeat=d):
        f = tuple(tail) + (1,)
        fast = is_irreducible(f, p)
        assert fast == _brute_irreducible(f, p), f
        count += fast
    assert count == count_irreducible(p, d)


def test_fixed_moduli():
    assert str(irreducible_poly(2, 2)) == "x^2 + x + 1"
    assert str(irreducible_poly(3, 2)) == "x^2 + 1"
    assert str(irreducible_poly(5, 2)) == "x^2 + 2"
    assert str(irreducible_poly(2, 6)) == "x^6 + x + 1"
    assert str(irreducible_poly(2, 16)) == "x^16 + x^5 + x^3 + x + 1"


def test_small_products():
    f4 = make_field(2, 2)
    assert f4.mul(2, 2) == 3  # x * x = x + 1
    assert f4.frobenius(2, 1) == 3
    f9 = make_field(3, 2)
    assert f9.mul(3, 3) == 2  # x * x = -1


@pytest.mark.parametrize("p,n", FIELDS)
def test_field_axioms_exhaustive_units(p, n):
    F = make_field(p, n)
    xs = F.elements()
    nz = xs[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.all(F.add(xs, F.neg(xs)) == 0)
    assert np.all(F.mul(xs, 1) == xs)
    # multiplicative group is cyclic of order q - 1
    g = F.generator
    seen = {1}
    x = 1
    for _ in range(F.order - 2):
        x = int(F.mul(x, g))
        seen.add(x)
    assert len(seen) == F.order - 1


@pytest.mark.parametrize("p,n", FIELDS)
def test_table_mul_matches_polynomial_mul(p, n):
    F = make_field(p, n)
    rng = np.random.default_rng(p * 100 + n)
    a = rng.integers(0, F.order, 500)
    b = rng.integers(0, F.order, 500)
    assert np.array_equal(F.mul(a, b), F._mul_poly(a, b))


@settings(max_examples=60)
@given(st.sampled_from(FIELDS), st.data())
def test_ring_laws(pn, data):
    F = make_field(*pn)
    el = st.integers(0, F.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.sub(F.add(a, b), b) == a


@pytest.mark.parametrize("p,n", [(2, 6), (3, 2), (5, 2), (2, 4), (3, 3)])
def test_frobenius_is_automorphism(p, n):
    F = make_field(p, n)
    xs = F.elements()
    fx = F.frobenius(xs, 1)
    assert len(np.unique(fx)) == F.order
    ys = xs[::-1]
    assert np.array_equal(F.frobenius(F.mul(xs, ys), 1), F.mul(fx, F.frobenius(ys, 1)))
    assert np.array_equal(F.frobenius(F.add(xs, ys), 1), F.add(fx, F.frobenius(ys, 1)))
    assert np.array_equal(F.pow(xs, p), fx)


def test_subfields_of_gf64():
    F = make_field(2, 6)
    assert F.subfield_degrees() == [1, 2, 3, 6]
    assert [len(F.subfield_elements(d)) for d in (1, 2, 3, 6)] == [2, 4, 8, 64]
    with pytest.raises(ValueError):
        F.subfield_elements(4)
    assert str(F.minimal_polynomial(2)) == "x^6 + x + 1"


@pytest.mark.parametrize("p,n", [(2, 6), (3, 4), (5, 2)])
def test_minimal_polynomials(p, n):
    F = make_field(p, n)
    for a in range(F.order):
        m = F.minimal_polynomial(a)
        assert m.is_monic
        assert F.eval_poly(m, a) == 0
        assert is_irreducible(m.coeffs, p)
        assert n % m.degree == 0


def test_degrees_partition_the_field():
    F = make_field(3, 4)
    degs = [F.minimal_polynomial(a).degree for a in range(F.order)]
    for d in (1, 2, 4):
        assert degs.count(d) == d * count_irreducible(3, d)


def test_errors():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        make_field(2, 0)
    with pytest.raises(SizeLimitError):
        make_field(2, 20)
    with pytest.raises(ZeroDivisionError):
        make_field(3, 2).inv(0)
    assert make_field(2, 20, max_order=1 << 20).order == 1 << 20
