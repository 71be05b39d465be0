from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import row_ring, test_matrix, upper_ring
from ringgraph.descriptor import build_ring
from ringgraph.errors import MorphismError, SizeLimitError
from ringgraph.gf import make_field
from ringgraph.rings import (
    additive_generators,
    center,
    centralizer,
    compose_maps,
    field_embedding,
    identity_map,
    projection,
    restrict,
    ring_matrix2,
    ring_zmod,
    scalar_embedding,
    unitalization,
    validate_morphism,
)

RINGS = test_matrix(4096)
SMALL = [(n, r) for n, r in RINGS if r.order <= 64]


@pytest.mark.parametrize("name,ring", SMALL, ids=[n for n, _ in SMALL])
def test_ring_axioms_exhaustive(name, ring):
    e = ring.elements()
    a, b, c = np.meshgrid(e, e, e, indexing="ij")
    a, b, c = a.ravel(), b.ravel(), c.ravel()
    assert np.array_equal(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)))
    assert np.array_equal(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)))
    assert np.array_equal(ring.mul(ring.add(a, b), c), ring.add(ring.mul(a, c), ring.mul(b, c)))
    assert np.array_equal(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c)))
    assert np.array_equal(ring.add(e, ring.neg(e)), np.zeros_like(e))
    assert np.array_equal(ring.add(e, 0), e)
    if ring.one is not None:
        assert np.array_equal(ring.mul(ring.one, e), e)
        assert np.array_equal(ring.mul(e, ring.one), e)


BIG = [(n, r) for n, r in RINGS if r.order > 64]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(BIG), st.data())
def test_ring_axioms_sampled(named, data):
    _, ring = named
    el = st.integers(0, ring.order - 1)
    a, b, c = (data.draw(el) for _ in range(3))
    assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
    assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    assert ring.mul(ring.add(a, b), c) == ring.add(ring.mul(a, c), ring.mul(b, c))


def test_matrix_ring_basics():
    M = ring_matrix2(make_field(2, 1))
    e12, e21 = M.unit_matrix(1, 2), M.unit_matrix(2, 1)
    assert M.matrix(M.mul(e12, e21)) == ((1, 0), (0, 0))
    assert M.matrix(M.mul(e21, e12)) == ((0, 0), (0, 1))
    assert M.matrix(M.one) == ((1, 0), (0, 1))
    assert not M.is_commutative()


@pytest.mark.parametrize("desc,order,char,centre", [
    ("m2:gf:2^1", 16, 2, 2), ("m2:gf:3^1", 81, 3, 3), ("m2:gf:2^2", 256, 2, 4), ("m2:gf:5^1", 625, 5, 5),
    ("prod:(gf:2^1,gf:3^1)", 6, 6, 6), ("zmod:12", 12, 12, 12), ("unitalize:(zmod:1)", 1, 1, 1),
    ("unitalize:(ideal:2:zmod:4)", 4, 2, 4), ("unitalize:(m2:gf:2^1)", 32, 2, 4),
    ("prod:(m2:gf:2^1,gf:2^1)", 32, 2, 4), ("polyquot:gf:3^2", 81, 3, 81),
])
def test_order_characteristic_center(desc, order, char, centre):
    R = build_ring(desc)
    assert (R.order, R.characteristic, len(center(R))) == (order, char, centre)


def test_center_matches_brute_force():
    for name, R in SMALL:
        e = R.elements()
        brute = [int(a) for a in e if np.array_equal(R.mul(a, e), R.mul(e, a))]
        assert center(R).tolist() == brute, name


def test_non_unital_rings():
    assert build_ring("ideal:2:zmod:4").one is None
    assert row_ring(2).one is None
    assert build_ring("ideal:2:zmod:6").one is not None  # 4 acts as identity
    assert upper_ring(2).one is not None


def test_unitalization_structure():
    base = build_ring("ideal:2:zmod:4")
    R1 = unitalization(base)
    assert (R1.order, R1.characteristic) == (4, 2)
    e = R1.elements()
    assert np.array_equal(R1.mul(R1.one, e), e)
    emb = R1.embed(base.elements())
    validate_morphism(emb, base, R1)
    # (k, a)(n, b) = (kn, na + kb + ab)
    for x in e:
        for y in e:
            (k, a), (n, b) = R1.unpack(x), R1.unpack(y)
            second = base.add(base.add(base.zmul(n, a), base.zmul(k, b)), base.mul(a, b))
            assert R1.mul(x, y) == R1.pack(k * n % 2, second)


def test_additive_generators_span():
    from ringgraph.rings import additive_span
    for name, R in SMALL:
        span = np.zeros(1, dtype=np.int64)
        for g in additive_generators(R):
            span = additive_span(R, span, g)
        assert len(span) == R.order, name


def test_centralizer_contains_center():
    R = build_ring("m2:gf:3^1")
    z = set(center(R).tolist())
    for a in range(0, R.order, 7):
        c = set(centralizer(R, a).tolist())
        assert z <= c and a in c


def test_restrict_rejects_non_subring():
    with pytest.raises(ValueError):
        restrict(ring_zmod(6), [0, 1])


def test_morphisms():
    M = ring_matrix2(make_field(3, 1))
    validate_morphism(scalar_embedding(M), build_ring("gf:3^1"), M, unital=True)
    P = build_ring("prod:(gf:2^1,gf:3^1)")
    validate_morphism(projection(P, 0), P, build_ring("gf:2^1"), unital=True)
    validate_morphism(projection(P, 1), P, build_ring("gf:3^1"), unital=True)
    with pytest.raises(MorphismError):
        validate_morphism(np.array([0, 2, 1]), build_ring("gf:3^1"), build_ring("gf:3^1"))
    with pytest.raises(MorphismError):  # x -> 2x is additive, not multiplicative
        validate_morphism(np.array([0, 2, 0, 2]), ring_zmod(4), ring_zmod(4))
    with pytest.raises(MorphismError):  # zero map is not unital
        validate_morphism(np.zeros(4, dtype=np.int64), ring_zmod(4), ring_zmod(4), unital=True)
    with pytest.raises(MorphismError):
        validate_morphism(np.zeros(3, dtype=np.int64), ring_zmod(4), ring_zmod(4))


def test_frobenius_is_a_ring_automorphism_large():
    F = make_field(2, 4)
    M = ring_matrix2(F)
    frob = F.frobenius(F.elements(), 1)
    a, b, c, d = M.decode(M.elements())
    f = M.encode(frob[a], frob[b], frob[c], frob[d])
    validate_morphism(f, M, M, unital=True)  # 2^32 pairs: uses the generator check
    bad = f.copy()
    bad[[5, 6]] = bad[[6, 5]]
    with pytest.raises(MorphismError):
        validate_morphism(bad, M, M)


def test_field_embedding():
    small, big = make_field(2, 2), make_field(2, 6)
    f = field_embedding(small, big)
    assert sorted(f.tolist()) == big.subfield_elements(2).tolist()
    validate_morphism(f, build_ring("gf:2^2"), build_ring("gf:2^6"), unital=True)
    with pytest.raises(ValueError):
        field_embedding(make_field(2, 4), big)
    ident = identity_map(build_ring("gf:2^6"))
    assert np.array_equal(compose_maps(ident, f), f)


def test_size_limit():
    with pytest.raises(SizeLimitError):
        build_ring("m2:gf:2^5")
    with pytest.raises(SizeLimitError):
        build_ring("m2:gf:2^3", max_order=1000)
