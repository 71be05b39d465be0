"""One-generated subrings <a>, <a>_1 and the compression classes of a ring.

Closure of a single element works on carriers: the additive span of
a, a^2, ... (and 1 in the unital case) is grown power by power until the
next power already lies in it, at which point the span is multiplicatively
closed.

Partitioning a whole ring repeats that for every element.  For rings that
are GF(p)-coordinate spaces (``ring.linear_p``) the spans are tracked as
reduced row-echelon bases, batched over all elements with numpy; the
basis is a canonical name for the subspace, so elements are grouped by it
and carriers are only materialized once per class.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonUnitalError
from .rings import FiniteRing, _contains, additive_span

_BATCH = 8192


@dataclass(frozen=True)
class SubringId:
    """Canonical identity of a one-generated subring: its sorted carrier.
    Equality and hashing look at the carrier only."""

    carrier: tuple[int, ...]
    unital: bool = field(default=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.carrier)

    def __contains__(self, x) -> bool:
        return _contains(np.asarray(self.carrier), int(x))


@dataclass(frozen=True)
class CompressionClass:
    subring: SubringId
    members: tuple[int, ...]

    @property
    def weight(self) -> int:
        return len(self.members)

    @property
    def representative(self) -> int:
        return self.members[0]


@dataclass
class Partition:
    """Compression classes in canonical order plus the element -> class map."""

    ring: FiniteRing
    unital: bool
    classes: list[CompressionClass]
    index: np.ndarray

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, a: int) -> CompressionClass:
        return self.classes[int(self.index[a])]

    @property
    def weights(self) -> list[int]:
        return [c.weight for c in self.classes]


def _require_one(ring: FiniteRing) -> int:
    if ring.one is None:
        raise NonUnitalError(f"{ring.descriptor} has no identity element")
    return ring.one


def closure(ring: FiniteRing, a: int, *, unital: bool = False) -> np.ndarray:
    """Sorted carrier of <a> (or <a>_1)."""
    span = np.zeros(1, dtype=np.int64)
    if unital:
        span = additive_span(ring, span, _require_one(ring))
    a = int(a)
    x = a
    while not _contains(span, x):
        span = additive_span(ring, span, x)
        x = int(ring.mul(x, a))
    return span


def subring_generated(ring: FiniteRing, a: int) -> SubringId:
    return SubringId(tuple(closure(ring, a).tolist()), unital=False)


def unital_subring_generated(ring: FiniteRing, a: int) -> SubringId:
    return SubringId(tuple(closure(ring, a, unital=True).tolist()), unital=True)


# ---------------------------------------------------------------------------
# batched echelon bases over GF(p)

class _EchelonBatch:
    """RREF bases for a batch of subspaces of GF(p)^k.  Row c of ``basis[i]``
    holds the basis vector whose pivot is column c, or zeros."""

    def __init__(self, count: int, p: int, k: int):
        self.p, self.k = p, k
        # narrowest dtype that holds sums of k products of residues
        bound = (p - 1) * (p - 1) * k + p
        self.dtype = next(t for t in (np.int8, np.int16, np.int32, np.int64) if bound < np.iinfo(t).max)
        self.basis = np.zeros((count, k, k), dtype=self.dtype)
        self.inverse = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=self.dtype)

    def insert(self, rows: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        """Add one vector to each selected subspace; returns which ones grew."""
        p = self.p
        current = self.basis[rows]
        vectors = vectors.astype(self.dtype)
        v = (vectors - np.einsum("nj,njk->nk", vectors, current)) % p
        grew = v.any(axis=1)
        if grew.any():
            sel = rows[grew]
            w = v[grew]
            m = np.arange(len(sel))
            col = np.argmax(w != 0, axis=1)
            w = w * self.inverse[w[m, col]][:, None] % p
            b = current[grew]
            b = (b - b[m, :, col][:, :, None] * w[:, None, :]) % p
            b[m, col, :] = w
            self.basis[sel] = b
        return grew


def _linear_keys(ring: FiniteRing, unital: bool) -> np.ndarray:
    """Per-element key rows: the codes of the RREF basis rows of <a>."""
    p, k, n = ring.linear_p, ring.dim, ring.order
    pw = p ** np.arange(k, dtype=np.int64)

    def digits(codes):
        return (np.asarray(codes, dtype=np.int64)[:, None] // pw) % p

    keys = np.empty((n, k), dtype=np.int64)
    one = _require_one(ring) if unital else None
    for start in range(0, n, _BATCH):
        elems = np.arange(start, min(start + _BATCH, n), dtype=np.int64)
        batch = _EchelonBatch(len(elems), p, k)
        rows = np.arange(len(elems))
        if unital:
            batch.insert(rows, digits(np.full(len(elems), one)))
        power = elems.copy()
        for _ in range(k + 1):
            grew = batch.insert(rows, digits(power[rows]))
            rows = rows[grew]
            if len(rows) == 0:
                break
            power[rows] = ring.mul(power[rows], elems[rows])
        keys[start:start + len(elems)] = batch.basis.astype(np.int64) @ pw
    return keys


def _span_codes(basis_codes, p: int, k: int) -> np.ndarray:
    pw = p ** np.arange(k, dtype=np.int64)
    vecs = np.zeros((1, k), dtype=np.int64)
    for code in basis_codes:
        if code == 0:
            continue
        row = (code // pw) % p
        vecs = np.concatenate([(vecs + t * row) % p for t in range(p)])
    return np.sort(vecs @ pw)


def _canonical_order(groups):
    """groups: iterable of (carrier tuple, members array)."""
    return sorted(groups, key=lambda g: (len(g[0]), g[0]))


def _partition_linear(ring: FiniteRing, unital: bool):
    keys = _linear_keys(ring, unital)
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(uniq) + 1))
    groups = []
    for u in range(len(uniq)):
        carrier = tuple(_span_codes(uniq[u], ring.linear_p, ring.dim).tolist())
        groups.append((carrier, order[bounds[u]:bounds[u + 1]]))
    return groups


def _partition_generic(ring: FiniteRing, unital: bool):
    found: dict[tuple[int, ...], list[int]] = {}
    for a in range(ring.order):
        carrier = tuple(closure(ring, a, unital=unital).tolist())
        found.setdefault(carrier, []).append(a)
    return [(c, np.array(m, dtype=np.int64)) for c, m in found.items()]


def partition(ring: FiniteRing, unital: bool = False, *, method: str = "auto") -> Partition:
    """Compression classes of ``ring`` under ~ (or ~_1 when ``unital``).

    ``method`` is "auto", "linear" or "generic"; results are identical,
    only the cost differs.  Memoized per ring instance for "auto".
    """
    if unital:
        _require_one(ring)
    cache = ring.__dict__.setdefault("_partitions", {})
    if method == "auto" and unital in cache:
        return cache[unital]
    use_linear = method == "linear" or (method == "auto" and ring.linear_p is not None)
    if use_linear and ring.linear_p is None:
        raise ValueError(f"{ring.descriptor} is not a GF(p)-coordinate ring")
    groups = _partition_linear(ring, unital) if use_linear else _partition_generic(ring, unital)
    classes = []
    index = np.empty(ring.order, dtype=np.int64)
    for i, (carrier, members) in enumerate(_canonical_order(groups)):
        members = np.sort(members)
        index[members] = i
        classes.append(CompressionClass(SubringId(carrier, unital=unital), tuple(members.tolist())))
    result = Partition(ring, unital, classes, index)
    if method == "auto":
        cache[unital] = result
    return result


def compression_classes(ring: FiniteRing, unital: bool = False) -> list[CompressionClass]:
    return partition(ring, unital).classes
