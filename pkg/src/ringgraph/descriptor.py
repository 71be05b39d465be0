"""Textual ring descriptors.

Grammar::

    D := gf:B^E | zmod:M | m2:gf:B^E | prod:(D,D) | polyquot:gf:B^E | unitalize:(D)
       | ideal:K:zmod:M

``ideal:K:zmod:M`` is the ideal K*Z_M (K dividing M) taken as a ring in its
own right; ``ideal:2:zmod:4`` has no identity.  ``B`` may be any prime
power, so ``gf:4^1`` and ``gf:2^2`` name the same field; the canonical
form always uses the prime base.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .errors import DescriptorError, check_order
from .gf import make_field
from .numtheory import factorize
from .rings import (
    FiniteRing,
    ring_field,
    ring_matrix2,
    ring_polyquot_x2,
    restrict,
    ring_product,
    ring_zmod,
    unitalization,
)

_NUMBER = re.compile(r"\d+")
IDEAL_LIMIT = 4096  # ideals are stored as dense operation tables


@dataclass(frozen=True)
class Field:
    p: int
    n: int

    def __str__(self) -> str:
        return f"gf:{self.p}^{self.n}"


@dataclass(frozen=True)
class Zmod:
    m: int

    def __str__(self) -> str:
        return f"zmod:{self.m}"


@dataclass(frozen=True)
class Matrix2:
    field: Field

    def __str__(self) -> str:
        return f"m2:{self.field}"


@dataclass(frozen=True)
class Product:
    left: "Descriptor"
    right: "Descriptor"

    def __str__(self) -> str:
        return f"prod:({self.left},{self.right})"


@dataclass(frozen=True)
class PolyQuot:
    field: Field

    def __str__(self) -> str:
        return f"polyquot:{self.field}"


@dataclass(frozen=True)
class Unitalize:
    base: "Descriptor"

    def __str__(self) -> str:
        return f"unitalize:({self.base})"


@dataclass(frozen=True)
class Ideal:
    k: int
    m: int

    def __str__(self) -> str:
        return f"ideal:{self.k}:zmod:{self.m}"


Descriptor = Field | Zmod | Ideal | Matrix2 | Product | PolyQuot | Unitalize


class _Parser:
    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.pos = 0

    def fail(self, msg: str):
        raise DescriptorError(f"{msg} at position {self.pos} in {self.text!r}")

    def eat(self, token: str) -> bool:
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.eat(token):
            self.fail(f"expected {token!r}")

    def number(self) -> int:
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.fail("expected a number")
        self.pos = m.end()
        return int(m.group())

    def field(self) -> Field:
        self.expect("gf:")
        base = self.number()
        self.expect("^")
        exp = self.number()
        if base < 2 or exp < 1:
            self.fail("field order must be a prime power greater than 1")
        f = factorize(base)
        if len(f) != 1:
            self.fail(f"{base} is not a prime power")
        (p, k), = f.items()
        return Field(p, k * exp)

    def descriptor(self) -> Descriptor:
        if self.text.startswith("gf:", self.pos):
            return self.field()
        if self.eat("zmod:"):
            m = self.number()
            if m < 1:
                self.fail("modulus must be positive")
            return Zmod(m)
        if self.eat("ideal:"):
            k = self.number()
            self.expect(":zmod:")
            m = self.number()
            if k < 1 or m < 1 or m % k:
                self.fail("ideal generator must be a positive divisor of the modulus")
            return Ideal(k, m)
        if self.eat("m2:"):
            return Matrix2(self.field())
        if self.eat("polyquot:"):
            return PolyQuot(self.field())
        if self.eat("prod:("):
            left = self.descriptor()
            self.expect(",")
            right = self.descriptor()
            self.expect(")")
            return Product(left, right)
        if self.eat("unitalize:("):
            base = self.descriptor()
            self.expect(")")
            return Unitalize(base)
        self.fail("unknown ring constructor")

    def parse(self) -> Descriptor:
        d = self.descriptor()
        if self.pos != len(self.text):
            self.fail("trailing input")
        return d


def parse(text: str) -> Descriptor:
    if not isinstance(text, str) or not text.strip():
        raise DescriptorError("empty ring descriptor")
    return _Parser(text).parse()


def canonical(text: str | Descriptor) -> str:
    return str(parse(text) if isinstance(text, str) else text)


def order_of(d: Descriptor) -> int:
    """Order computed from the descriptor alone."""
    if isinstance(d, Field):
        return d.p ** d.n
    if isinstance(d, Zmod):
        return d.m
    if isinstance(d, Ideal):
        return d.m // d.k
    if isinstance(d, Matrix2):
        return order_of(d.field) ** 4
    if isinstance(d, PolyQuot):
        return order_of(d.field) ** 2
    if isinstance(d, Product):
        return order_of(d.left) * order_of(d.right)
    if isinstance(d, Unitalize):
        return characteristic_of(d.base) * order_of(d.base)
    raise TypeError(d)


def characteristic_of(d: Descriptor) -> int:
    if isinstance(d, (Field, Matrix2, PolyQuot)):
        f = d if isinstance(d, Field) else d.field
        return f.p
    if isinstance(d, Zmod):
        return d.m
    if isinstance(d, Ideal):
        return d.m // d.k
    if isinstance(d, Product):
        a, b = characteristic_of(d.left), characteristic_of(d.right)
        return a * b // gcd(a, b)
    if isinstance(d, Unitalize):
        return characteristic_of(d.base)
    raise TypeError(d)


def _build(d: Descriptor, max_order: int | None) -> FiniteRing:
    if isinstance(d, Field):
        return ring_field(make_field(d.p, d.n, max_order=max_order))
    if isinstance(d, Zmod):
        return ring_zmod(d.m)
    if isinstance(d, Ideal):
        check_order(d.m // d.k, min(IDEAL_LIMIT, max_order or IDEAL_LIMIT), str(d))
        return restrict(ring_zmod(d.m), range(0, d.m, d.k))
    if isinstance(d, Matrix2):
        return ring_matrix2(make_field(d.field.p, d.field.n), max_order=max_order)
    if isinstance(d, PolyQuot):
        return ring_polyquot_x2(make_field(d.field.p, d.field.n), max_order=max_order)
    if isinstance(d, Product):
        return ring_product(_build(d.left, max_order), _build(d.right, max_order), max_order=max_order)
    if isinstance(d, Unitalize):
        return unitalization(_build(d.base, max_order), max_order=max_order)
    raise TypeError(d)


def build_ring(text: str | Descriptor, *, max_order: int | None = None) -> FiniteRing:
    """Parse, check the order against the limit before allocating anything,
    then construct."""
    d = parse(text) if isinstance(text, str) else text
    check_order(order_of(d), max_order, str(d))
    ring = _build(d, max_order)
    ring.descriptor = str(d)
    return ring
