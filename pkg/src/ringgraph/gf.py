"""Arithmetic in GF(p^n).

Elements are integer codes ``sum(c_i * p**i)`` where ``c_i`` are the
coefficients of the representing polynomial modulo the field's modulus.
All element-wise operations accept Python ints or numpy integer arrays and
broadcast like numpy ufuncs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import check_order
from .numtheory import divisors, factorize, is_prime

LOG_TABLE_LIMIT = 1 << 16
ADD_TABLE_LIMIT = 256


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient tuples in ascending degree

def _trim(c) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    """Polynomial over GF(p); ``coeffs[i]`` is the coefficient of x**i."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(c % self.p for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


def poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divmod(a, b, p):
    a = list(_trim(a))
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv_lead % p
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] = (a[k + i] - c * y) % p
    return _trim(q), _trim(a)


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple(c * inv % p for c in a)
    return a


def _x_pow_mod(e: int, f, p):
    """x**e mod f."""
    result: tuple[int, ...] = (1,)
    base = poly_mod((0, 1), f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def is_irreducible(coeffs, p: int) -> bool:
    """Rabin's test for a polynomial over GF(p) of degree >= 1."""
    f = _trim(coeffs)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = (0, 1)
    # f must divide x^(p^d) - x
    if _sub(_x_pow_mod(p ** d, f, p), x, p):
        return False
    for r in factorize(d):
        g = poly_gcd(f, _sub(_x_pow_mod(p ** (d // r), f, p), x, p), p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def irreducible_poly(p: int, d: int) -> Poly:
    """Smallest monic irreducible of degree d, ordering the coefficient
    tuple (c_{d-1}, ..., c_0) as a base-p integer."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    for k in range(p ** d):
        low = [(k // p ** i) % p for i in range(d)]
        if is_irreducible(low + [1], p):
            return Poly(p, tuple(low + [1]))
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


# ---------------------------------------------------------------------------

class FiniteField:
    """GF(p^n) with the canonical modulus ``irreducible_poly(p, n)``."""

    def __init__(self, p: int, n: int, *, max_order: int | None = None):
        if not is_prime(p):
            raise ValueError(f"field characteristic must be prime, got {p}")
        if n < 1:
            raise ValueError(f"extension degree must be >= 1, got {n}")
        self.p = p
        self.n = n
        self.order = p ** n
        check_order(self.order, max_order, f"GF({p}^{n})")
        self.modulus = irreducible_poly(p, n)
        self._pw = p ** np.arange(n, dtype=np.int64)
        # x^n == -sum(m_i x^i)
        self._reduce = np.array([(-c) % p for c in self.modulus.coeffs[:n]], dtype=np.int64)
        self._add_table = None
        if self.order <= ADD_TABLE_LIMIT:
            e = np.arange(self.order)
            self._add_table = self._add_digits(e[:, None], e[None, :])
        self._exp = self._log = None
        self.generator = self._find_generator()
        if self.order <= LOG_TABLE_LIMIT:
            self._build_log_tables()

    def __repr__(self) -> str:
        return f"FiniteField({self.p}^{self.n}, modulus={self.modulus})"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- codes <-> coefficient vectors
    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def from_digits(self, digs) -> np.ndarray:
        return (np.asarray(digs, dtype=np.int64) % self.p * self._pw).sum(axis=-1)

    def element(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            coeffs = list(poly_mod(coeffs, self.modulus.coeffs, self.p)) or [0]
        return int(sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs)))

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits(a))

    # -- arithmetic
    def _add_digits(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.from_digits(self.digits(a) + self.digits(b))

    def add(self, a, b):
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._add_digits(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def neg(self, a):
        if self.p == 2:
            return np.asarray(a, dtype=np.int64)
        return self.from_digits(-self.digits(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_poly(self, a, b):
        """Schoolbook product with reduction; used to build log tables and
        for fields above LOG_TABLE_LIMIT."""
        da, db = np.broadcast_arrays(self.digits(a), self.digits(b))
        n, p = self.n, self.p
        prod = np.zeros(da.shape[:-1] + (2 * n - 1,), dtype=np.int64)
        for i in range(n):
            prod[..., i:i + n] += da[..., i:i + 1] * db
        prod %= p
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[..., k:k + 1]
            prod[..., k - n:k] = (prod[..., k - n:k] + c * self._reduce) % p
        return self.from_digits(prod[..., :n])

    def mul(self, a, b):
        if self._log is None:
            return self._mul_poly(a, b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        s = (self._log[a] + self._log[b]) % (self.order - 1)
        return np.where((a == 0) | (b == 0), 0, self._exp[s])

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if self._log is not None and e > 0:
            s = (self._log[a] * (e % (self.order - 1))) % (self.order - 1)
            return np.where(a == 0, 0, self._exp[s])
        if e < 0:
            a, e = self.inv(a), -e
        result = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse in a field")
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def frobenius(self, a, j: int = 1):
        """a -> a^(p^j)."""
        if not 0 <= j < self.n:
            raise ValueError(f"Frobenius index must be in [0, {self.n}), got {j}")
        return self.pow(a, self.p ** j)

    # -- structure
    def _find_generator(self) -> int:
        if self.order == 2:
            return 1
        m = self.order - 1
        exps = [m // r for r in factorize(m)]
        for g in range(2 if self.n > 1 else 1, self.order):
            if all(int(self._pow_slow(g, e)) != 1 for e in exps):
                return g
        raise AssertionError("no primitive element found")

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = int(self._mul_poly(result, base))
            base = int(self._mul_poly(base, base))
            e >>= 1
        return result

    def _build_log_tables(self) -> None:
        m = self.order - 1
        exp = np.empty(m, dtype=np.int64)
        exp[0] = 1
        k = 1
        step = self.generator  # g^k for the current block length k
        while k < m:
            span = min(k, m - k)
            exp[k:k + span] = self._mul_poly(exp[:span], step)
            step = int(self._mul_poly(step, step))
            k += span
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(m)
        if len(np.unique(exp)) != m:
            raise AssertionError("generator is not primitive")
        self._exp, self._log = exp, log

    def minimal_polynomial(self, a: int) -> Poly:
        """Monic minimal polynomial of a over GF(p), as the product of
        (x - c) over the distinct Frobenius conjugates c of a."""
        a = int(a)
        conj = [a]
        while True:
            nxt = int(self.pow(conj[-1], self.p))
            if nxt == a:
                break
            conj.append(nxt)
        poly = [1]  # field codes, ascending degree
        for c in conj:
            shifted = [0] + poly
            scaled = [int(self.mul(c, t)) for t in poly] + [0]
            poly = [int(self.sub(s, t)) for s, t in zip(shifted, scaled)]
        if any(c >= self.p for c in poly):
            raise AssertionError(f"minimal polynomial of {a} left the prime field")
        return Poly(self.p, tuple(poly))

    def eval_poly(self, poly: Poly | tuple[int, ...], a):
        """Evaluate a polynomial with prime-field coefficients at a (Horner)."""
        coeffs = poly.coeffs if isinstance(poly, Poly) else _trim(poly)
        acc = np.zeros_like(np.asarray(a, dtype=np.int64))
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, a), c % self.p)
        return acc

    def subfield_elements(self, d: int) -> np.ndarray:
        """Sorted codes of the unique subfield of order p^d."""
        if d < 1 or self.n % d:
            raise ValueError(f"{d} does not divide the extension degree {self.n}")
        e = self.elements()
        return e[self.pow(e, self.p ** d) == e]

    def subfield_degrees(self) -> list[int]:
        return divisors(self.n)


@lru_cache(maxsize=32)
def _cached_field(p: int, n: int) -> FiniteField:
    return FiniteField(p, n, max_order=p ** n)


def make_field(p: int, n: int, *, max_order: int | None = None) -> FiniteField:
    """Fields are immutable, so construction is memoized."""
    if not is_prime(p):
        raise ValueError(f"field characteristic must be prime, got {p}")
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    check_order(p ** n, max_order, f"GF({p}^{n})")
    return _cached_field(p, n)
