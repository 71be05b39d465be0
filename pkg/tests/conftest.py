from __future__ import annotations

import numpy as np
import pytest

from ringgraph.descriptor import build_ring
from ringgraph.gf import make_field
from ringgraph.rings import field_embedding, projection, restrict, ring_matrix2, scalar_embedding

DESCRIPTORS = [
    "zmod:1", "zmod:2", "zmod:4", "zmod:6", "zmod:8", "zmod:9", "zmod:12", "zmod:16",
    "ideal:2:zmod:4", "ideal:2:zmod:8", "ideal:3:zmod:9", "ideal:2:zmod:6", "ideal:4:zmod:16",
    "gf:2^1", "gf:2^2", "gf:2^3", "gf:2^4", "gf:2^6", "gf:3^1", "gf:3^2", "gf:5^1", "gf:7^1",
    "m2:gf:2^1", "m2:gf:3^1", "m2:gf:2^2", "m2:gf:5^1", "m2:gf:7^1", "m2:gf:2^3",
    "prod:(gf:2^1,gf:3^1)", "prod:(gf:2^2,gf:2^2)", "prod:(zmod:4,gf:2^1)",
    "prod:(m2:gf:2^1,gf:2^1)", "prod:(m2:gf:2^1,m2:gf:2^1)", "prod:(ideal:2:zmod:4,m2:gf:2^1)",
    "polyquot:gf:2^1", "polyquot:gf:2^2", "polyquot:gf:3^1", "polyquot:gf:3^2",
    "unitalize:(ideal:2:zmod:4)", "unitalize:(m2:gf:2^1)", "unitalize:(gf:2^2)", "unitalize:(zmod:4)",
    "unitalize:(ideal:2:zmod:8)",
]


def row_ring(p: int):
    """Matrices [[a, b], [0, 0]] over GF(p): non-commutative, no identity."""
    M = ring_matrix2(make_field(p, 1))
    a, b = np.meshgrid(np.arange(p), np.arange(p))
    carrier = M.encode(a.ravel(), b.ravel(), 0, 0)
    return restrict(M, carrier, descriptor=f"rows(m2:gf:{p}^1)")


def upper_ring(p: int):
    """Upper triangular 2x2 matrices over GF(p)."""
    M = ring_matrix2(make_field(p, 1))
    a, b, d = np.meshgrid(np.arange(p), np.arange(p), np.arange(p))
    carrier = M.encode(a.ravel(), b.ravel(), 0, d.ravel())
    return restrict(M, carrier, descriptor=f"upper(m2:gf:{p}^1)")


def test_matrix(max_order: int):
    """(name, ring) for every ring in the shared test matrix up to max_order."""
    out = [(d, build_ring(d)) for d in DESCRIPTORS]
    out += [(r.descriptor, r) for r in (row_ring(2), row_ring(3), upper_ring(2), upper_ring(3))]
    return [(name, r) for name, r in out if r.order <= max_order]


test_matrix.__test__ = False  # helper, not a test


def composable_pairs():
    """(A, B, C, g: A -> B, f: B -> C), all unital ring morphisms."""
    fields = {k: build_ring(f"gf:{k}") for k in ("2^1", "2^2", "2^4", "2^6", "3^1", "3^2")}
    emb = lambda a, b: field_embedding(fields[a].field, fields[b].field)  # noqa: E731
    m4, m9, m2 = build_ring("m2:gf:2^2"), build_ring("m2:gf:3^2"), build_ring("m2:gf:2^1")
    prod = build_ring("prod:(gf:2^1,gf:3^1)")
    mprod = build_ring("prod:(m2:gf:2^1,gf:2^1)")
    F64 = fields["2^6"]
    frob = F64.field.frobenius(F64.elements(), 1)
    return [
        (fields["2^1"], fields["2^2"], fields["2^4"], emb("2^1", "2^2"), emb("2^2", "2^4")),
        (fields["2^1"], fields["2^2"], m4, emb("2^1", "2^2"), scalar_embedding(m4)),
        (fields["3^1"], fields["3^2"], m9, emb("3^1", "3^2"), scalar_embedding(m9)),
        (prod, fields["2^1"], fields["2^2"], projection(prod, 0), emb("2^1", "2^2")),
        (mprod, fields["2^1"], m2, projection(mprod, 1), scalar_embedding(m2)),
        (fields["2^2"], F64, F64, emb("2^2", "2^6"), frob),
    ]


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("RINGGRAPH_CACHE", str(tmp_path / "cache"))
