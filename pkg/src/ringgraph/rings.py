"""Finite rings on dense integer codes ``0 .. order-1``.

Every ring exposes vectorized ``add``/``neg``/``mul`` over numpy arrays of
codes, an optional identity and its characteristic.  Rings whose additive
group is elementary abelian of prime exponent p *and* whose codes are the
base-p coordinate vectors of that group advertise it through ``linear_p``;
the subring module uses that to work with echelon bases instead of carriers.
"""

from __future__ import annotations

from functools import cached_property
from math import gcd

import numpy as np

from .errors import check_order
from .gf import FiniteField
from .numtheory import is_prime

TABLE_LIMIT = 1024
_TABLE_CHUNK = 1 << 22


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class FiniteRing:
    """Base class; subclasses implement the ``_add``/``_neg``/``_mul`` kernels."""

    order: int
    one: int | None = None
    descriptor: str = "?"
    linear_p: int | None = None

    zero = 0

    # -- kernels overridden by constructions
    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor} order={self.order}>"

    @property
    def dim(self) -> int:
        """Dimension over GF(linear_p); only meaningful for linear rings."""
        if self.linear_p is None:
            raise AttributeError(f"{self.descriptor} is not a GF(p)-coordinate ring")
        d, n = 0, 1
        while n < self.order:
            n *= self.linear_p
            d += 1
        return d

    @property
    def is_unital(self) -> bool:
        return self.one is not None

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- operation tables (small rings only); recomputation is pure, so the
    # unsynchronized cached_property is safe across threads
    @cached_property
    def _tables(self):
        if self.order > TABLE_LIMIT:
            return None
        n = self.order
        dtype = np.uint16 if n <= 1 << 16 else np.int64
        add = np.empty((n, n), dtype=dtype)
        mul = np.empty((n, n), dtype=dtype)
        rows = max(1, _TABLE_CHUNK // n)
        e = self.elements()
        for start in range(0, n, rows):
            block = e[start:start + rows, None]
            add[start:start + rows] = self._add(block, e[None, :])
            mul[start:start + rows] = self._mul(block, e[None, :])
        neg = np.asarray(self._neg(e), dtype=np.int64)
        return add, mul, neg

    def add(self, a, b):
        t = self._tables
        if t is not None:
            return t[0][a, b].astype(np.int64)
        return np.asarray(self._add(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))

    def neg(self, a):
        t = self._tables
        if t is not None:
            return t[2][a]
        return np.asarray(self._neg(np.asarray(a, dtype=np.int64)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        t = self._tables
        if t is not None:
            return t[1][a, b].astype(np.int64)
        return np.asarray(self._mul(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))

    def zmul(self, k, a):
        """Integer multiple k*a, elementwise; k >= 0."""
        k = np.asarray(k, dtype=np.int64)
        a = np.asarray(a, dtype=np.int64)
        k, a = np.broadcast_arrays(k, a)
        result = np.zeros(a.shape, dtype=np.int64)
        base = a.copy()
        k = k.copy()
        while np.any(k):
            bit = (k & 1).astype(bool)
            result = np.where(bit, self.add(result, base), result)
            base = self.add(base, base)
            k >>= 1
        return result

    def power(self, a: int, e: int) -> int:
        if e < 1:
            raise ValueError("ring powers need a positive exponent")
        result, base = None, int(a)
        while e:
            if e & 1:
                result = base if result is None else int(self.mul(result, base))
            base = int(self.mul(base, base))
            e >>= 1
        return result

    @cached_property
    def characteristic(self) -> int:
        """Least m >= 1 with m*r = 0 for all r, found by direct iteration."""
        e = np.array([self.one]) if self.one is not None else self.elements()
        acc = e.copy()
        m = 1
        while np.any(acc != 0):
            acc = self.add(acc, e)
            m += 1
        return m

    def additive_order(self, a: int) -> int:
        acc, m = int(a), 1
        while acc != 0:
            acc = int(self.add(acc, a))
            m += 1
        return m

    def is_commutative(self) -> bool:
        e = self.elements()
        if self.order <= TABLE_LIMIT:
            return bool(np.all(self.mul(e[:, None], e[None, :]) == self.mul(e[None, :], e[:, None])))
        return all(np.array_equal(self.mul(x, e), self.mul(e, x)) for x in e)

    def commutes_with(self, a: int, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        return self.mul(a, xs) == self.mul(xs, a)


# ---------------------------------------------------------------------------
# constructions

class ZmodRing(FiniteRing):
    def __init__(self, m: int):
        if m < 1:
            raise ValueError(f"modulus must be >= 1, got {m}")
        self.m = m
        self.order = m
        self.one = 1 % m
        self.descriptor = f"zmod:{m}"
        self.linear_p = m if is_prime(m) else None

    def _add(self, a, b):
        return (a + b) % self.m

    def _neg(self, a):
        return (-a) % self.m

    def _mul(self, a, b):
        return (a * b) % self.m

    @property
    def characteristic(self) -> int:
        return self.m


class FieldRing(FiniteRing):
    """GF(p^n) viewed as a ring; codes coincide with field codes."""

    def __init__(self, field: FiniteField):
        self.field = field
        self.order = field.order
        self.one = 1
        self.descriptor = f"gf:{field.p}^{field.n}"
        self.linear_p = field.p

    # the field's own kernels already are single table lookups
    def add(self, a, b):
        return np.asarray(self.field.add(a, b))

    def neg(self, a):
        return np.asarray(self.field.neg(a))

    def mul(self, a, b):
        return np.asarray(self.field.mul(a, b))

    _add, _neg, _mul = add, neg, mul

    @property
    def characteristic(self) -> int:
        return self.field.p


class Matrix2Ring(FiniteRing):
    """M_2(F); code = a + q*b + q^2*c + q^3*d for the matrix [[a, b], [c, d]]."""

    def __init__(self, field: FiniteField, *, max_order: int | None = None):
        q = field.order
        check_order(q ** 4, max_order, f"M2(GF({field.p}^{field.n}))")
        self.field = field
        self.q = q
        self.order = q ** 4
        self.one = int(self.encode(1, 0, 0, 1))
        self.descriptor = f"m2:gf:{field.p}^{field.n}"
        self.linear_p = field.p

    def encode(self, a, b, c, d):
        q = self.q
        return np.asarray(a) + q * (np.asarray(b) + q * (np.asarray(c) + q * np.asarray(d)))

    def decode(self, x):
        x = np.asarray(x, dtype=np.int64)
        q = self.q
        return x % q, (x // q) % q, (x // q ** 2) % q, x // q ** 3

    def matrix(self, x) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c, d = (int(v) for v in self.decode(x))
        return (a, b), (c, d)

    def scalar(self, s):
        return self.encode(s, 0, 0, s)

    def unit_matrix(self, i: int, j: int) -> int:
        """E_ij with 1-based indices."""
        entries = [0, 0, 0, 0]
        entries[2 * (i - 1) + (j - 1)] = 1
        return int(self.encode(*entries))

    def _add(self, x, y):
        F = self.field
        return self.encode(*(F.add(s, t) for s, t in zip(self.decode(x), self.decode(y))))

    def _neg(self, x):
        return self.encode(*(self.field.neg(s) for s in self.decode(x)))

    def _mul(self, x, y):
        F = self.field
        a, b, c, d = self.decode(x)
        e, f, g, h = self.decode(y)
        return self.encode(
            F.add(F.mul(a, e), F.mul(b, g)),
            F.add(F.mul(a, f), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)),
            F.add(F.mul(c, f), F.mul(d, h)),
        )

    @property
    def characteristic(self) -> int:
        return self.field.p


class ProductRing(FiniteRing):
    """R x S; code = r + |R| * s."""

    def __init__(self, left: FiniteRing, right: FiniteRing, *, max_order: int | None = None):
        check_order(left.order * right.order, max_order, f"product {left.descriptor} x {right.descriptor}")
        self.left, self.right = left, right
        self.order = left.order * right.order
        self.one = None
        if left.one is not None and right.one is not None:
            self.one = self.pack(left.one, right.one)
        self.descriptor = f"prod:({left.descriptor},{right.descriptor})"
        if left.linear_p is not None and left.linear_p == right.linear_p:
            self.linear_p = left.linear_p

    def pack(self, r, s):
        return np.asarray(r) + self.left.order * np.asarray(s)

    def unpack(self, x):
        x = np.asarray(x, dtype=np.int64)
        return x % self.left.order, x // self.left.order

    def _add(self, x, y):
        (r1, s1), (r2, s2) = self.unpack(x), self.unpack(y)
        return self.pack(self.left.add(r1, r2), self.right.add(s1, s2))

    def _neg(self, x):
        r, s = self.unpack(x)
        return self.pack(self.left.neg(r), self.right.neg(s))

    def _mul(self, x, y):
        (r1, s1), (r2, s2) = self.unpack(x), self.unpack(y)
        return self.pack(self.left.mul(r1, r2), self.right.mul(s1, s2))

    @property
    def characteristic(self) -> int:
        return _lcm(self.left.characteristic, self.right.characteristic)


class PolyQuotRing(FiniteRing):
    """F[x]/(x^2); code = a + q*b for a + bX."""

    def __init__(self, field: FiniteField, *, max_order: int | None = None):
        q = field.order
        check_order(q * q, max_order, f"GF({field.p}^{field.n})[x]/(x^2)")
        self.field = field
        self.q = q
        self.order = q * q
        self.one = 1
        self.descriptor = f"polyquot:gf:{field.p}^{field.n}"
        self.linear_p = field.p

    def _split(self, x):
        x = np.asarray(x, dtype=np.int64)
        return x % self.q, x // self.q

    def _add(self, x, y):
        (a, b), (c, d) = self._split(x), self._split(y)
        return self.field.add(a, c) + self.q * self.field.add(b, d)

    def _neg(self, x):
        a, b = self._split(x)
        return self.field.neg(a) + self.q * self.field.neg(b)

    def _mul(self, x, y):
        F = self.field
        (a, b), (c, d) = self._split(x), self._split(y)
        return F.mul(a, c) + self.q * F.add(F.mul(a, d), F.mul(b, c))

    @property
    def characteristic(self) -> int:
        return self.field.p


class UnitalizationRing(FiniteRing):
    """R^1 = Z_m x R with (k,a)(n,b) = (kn, n*a + k*b + ab); code = k + m*a."""

    def __init__(self, base: FiniteRing, *, max_order: int | None = None):
        m = base.characteristic
        if m < 1:
            raise ValueError("unitalization needs a ring of positive characteristic")
        check_order(m * base.order, max_order, f"unitalization of {base.descriptor}")
        self.base = base
        self.m = m
        self.order = m * base.order
        self.one = 1 % self.order
        self.descriptor = f"unitalize:({base.descriptor})"
        if base.linear_p is not None and m == base.linear_p:
            self.linear_p = m

    def pack(self, k, a):
        return np.asarray(k) % self.m + self.m * np.asarray(a)

    def unpack(self, x):
        x = np.asarray(x, dtype=np.int64)
        return x % self.m, x // self.m

    def embed(self, r):
        """The canonical embedding i(r) = (0, r)."""
        return self.pack(0, r)

    def _add(self, x, y):
        (k, a), (n, b) = self.unpack(x), self.unpack(y)
        return self.pack((k + n) % self.m, self.base.add(a, b))

    def _neg(self, x):
        k, a = self.unpack(x)
        return self.pack((-k) % self.m, self.base.neg(a))

    def _mul(self, x, y):
        R = self.base
        (k, a), (n, b) = self.unpack(x), self.unpack(y)
        k, a, n, b = np.broadcast_arrays(k, a, n, b)
        second = R.add(R.add(R.zmul(n, a), R.zmul(k, b)), R.mul(a, b))
        return self.pack((k * n) % self.m, second)

    @property
    def characteristic(self) -> int:
        return self.m


class TableRing(FiniteRing):
    """A ring given by explicit operation tables (used for restricting a ring
    to one of its subrings)."""

    def __init__(self, add, mul, neg, *, one: int | None, descriptor: str, labels=None):
        self._add_t = np.asarray(add, dtype=np.int64)
        self._mul_t = np.asarray(mul, dtype=np.int64)
        self._neg_t = np.asarray(neg, dtype=np.int64)
        self.order = len(self._neg_t)
        self.one = one
        self.descriptor = descriptor
        self.labels = labels

    def _add(self, a, b):
        return self._add_t[a, b]

    def _neg(self, a):
        return self._neg_t[a]

    def _mul(self, a, b):
        return self._mul_t[a, b]


# ---------------------------------------------------------------------------
# constructor functions

def ring_zmod(m: int) -> ZmodRing:
    return ZmodRing(m)


def ring_field(field: FiniteField) -> FieldRing:
    return FieldRing(field)


def ring_matrix2(field: FiniteField, *, max_order: int | None = None) -> Matrix2Ring:
    return Matrix2Ring(field, max_order=max_order)


def ring_product(left: FiniteRing, right: FiniteRing, *, max_order: int | None = None) -> ProductRing:
    return ProductRing(left, right, max_order=max_order)


def ring_polyquot_x2(field: FiniteField, *, max_order: int | None = None) -> PolyQuotRing:
    return PolyQuotRing(field, max_order=max_order)


def unitalization(ring: FiniteRing, *, max_order: int | None = None) -> UnitalizationRing:
    return UnitalizationRing(ring, max_order=max_order)


def restrict(ring: FiniteRing, carrier, *, descriptor: str | None = None) -> TableRing:
    """The subring on ``carrier`` (must be closed) as a standalone ring.
    Element i of the result corresponds to ``sorted(carrier)[i]``."""
    carrier = np.unique(np.asarray(carrier, dtype=np.int64))
    if carrier[0] != 0:
        raise ValueError("a subring carrier must contain 0")

    def reindex(values):
        values = np.asarray(values, dtype=np.int64)
        idx = np.minimum(np.searchsorted(carrier, values), len(carrier) - 1)
        if not np.array_equal(carrier[idx], values):
            raise ValueError("carrier is not closed under the ring operations")
        return idx

    add = reindex(ring.add(carrier[:, None], carrier[None, :]))
    mul = reindex(ring.mul(carrier[:, None], carrier[None, :]))
    neg = reindex(ring.neg(carrier))
    # the subring may have an identity of its own (e.g. 4 in 2Z_6)
    ident = np.arange(len(carrier))
    found = np.flatnonzero((mul == ident[None, :]).all(axis=1) & (mul == ident[:, None]).all(axis=0))
    one = int(found[0]) if len(found) else None
    desc = descriptor or f"sub({ring.descriptor},{len(carrier)})"
    return TableRing(add, mul, neg, one=one, descriptor=desc, labels=carrier)


def additive_generators(ring: FiniteRing) -> list[int]:
    """A generating set of the additive group.  Commutation is bi-additive,
    so commuting with these means commuting with everything."""
    if ring.linear_p is not None:
        return [ring.linear_p ** i for i in range(ring.dim)]
    gens: list[int] = []
    span = np.zeros(1, dtype=np.int64)
    for x in range(ring.order):
        if len(span) == ring.order:
            break
        if _contains(span, x):
            continue
        gens.append(x)
        span = additive_span(ring, span, x)
    return gens


def additive_span(ring: FiniteRing, subgroup: np.ndarray, g: int) -> np.ndarray:
    """Sorted carrier of the subgroup generated by ``subgroup`` (already an
    additive subgroup, sorted) and ``g``."""
    parts = [subgroup]
    step = int(g)
    while not _contains(subgroup, step):
        parts.append(ring.add(subgroup, step))
        step = int(ring.add(step, g))
    return np.unique(np.concatenate(parts)) if len(parts) > 1 else subgroup


def _contains(sorted_arr: np.ndarray, x: int) -> bool:
    i = np.searchsorted(sorted_arr, x)
    return i < len(sorted_arr) and sorted_arr[i] == x


def center(ring: FiniteRing) -> np.ndarray:
    """Sorted codes of all central elements."""
    e = ring.elements()
    central = np.ones(ring.order, dtype=bool)
    for g in additive_generators(ring):
        central &= ring.commutes_with(g, e)
    return e[central]


def centralizer(ring: FiniteRing, a: int) -> np.ndarray:
    e = ring.elements()
    return e[ring.commutes_with(int(a), e)]


# ---------------------------------------------------------------------------
# ring morphisms as element maps: f[code in R] = code in S

def identity_map(ring: FiniteRing) -> np.ndarray:
    return ring.elements()


def compose_maps(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f o g)[x] = f[g[x]]."""
    return np.asarray(f)[np.asarray(g)]


def scalar_embedding(ring: Matrix2Ring) -> np.ndarray:
    """GF(q) -> M_2(GF(q)), s -> sI."""
    return np.asarray(ring.scalar(ring.field.elements()), dtype=np.int64)


def projection(ring: ProductRing, side: int) -> np.ndarray:
    r, s = ring.unpack(ring.elements())
    return r if side == 0 else s


def field_embedding(small: FiniteField, big: FiniteField) -> np.ndarray:
    """An embedding GF(p^d) -> GF(p^n): x maps to the least root in ``big``
    of the modulus of ``small``."""
    if small.p != big.p or big.n % small.n:
        raise ValueError(f"GF({small.p}^{small.n}) does not embed in GF({big.p}^{big.n})")
    roots = np.flatnonzero(big.eval_poly(small.modulus, big.elements()) == 0)
    beta = int(roots[0])
    powers = [1]
    for _ in range(small.n - 1):
        powers.append(int(big.mul(powers[-1], beta)))
    digits = small.digits(small.elements())
    image = np.zeros(small.order, dtype=np.int64)
    for i, b in enumerate(powers):
        for c in range(1, small.p):
            mask = digits[:, i] == c
            image[mask] = big.add(image[mask], big.mul(c, b))
    return image


def validate_morphism(f, source: FiniteRing, target: FiniteRing, *, unital: bool = False) -> None:
    """Raise MorphismError unless f is an additive, multiplicative (and, if
    requested, unital) map.  Checks every pair for small rings; above that,
    every element against an additive generating set, which is equivalent
    for bi-additive operations."""
    from .errors import MorphismError

    f = np.asarray(f, dtype=np.int64)
    if f.shape != (source.order,):
        raise MorphismError(f"map must have one entry per element of {source.descriptor}")
    if f.min(initial=0) < 0 or f.max(initial=0) >= target.order:
        raise MorphismError("map leaves the target ring")
    e = source.elements()
    if source.order ** 2 <= 1 << 22:
        others = e
    else:
        others = np.array(additive_generators(source), dtype=np.int64)
    for b in others:
        if not np.array_equal(f[source.add(e, b)], target.add(f, f[b])):
            raise MorphismError("map is not additive")
        if not np.array_equal(f[source.mul(e, b)], target.mul(f, f[b])):
            raise MorphismError("map is not multiplicative")
    if unital:
        if source.one is None or target.one is None:
            raise MorphismError("unital morphism between rings without identity")
        if f[source.one] != target.one:
            raise MorphismError("map does not send 1 to 1")
