"""Integer helpers behind every closed-form count: divisors, d(n), sigma(n),
the Moebius function and the number of monic irreducible polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


def _check_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for n up to ~10**12."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}."""
    _check_positive(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    _check_positive(n)
    small, large = [], []
    for i in range(1, isqrt(n) + 1):
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
    return small + large[::-1]


def num_divisors(n: int) -> int:
    """d(n), the number of positive divisors."""
    return len(divisors(n))


def sigma(n: int) -> int:
    """Sum of the positive divisors of n."""
    return sum(divisors(n))


def mobius(r: int) -> int:
    _check_positive(r, "r")
    result = 1
    for exponent in factorize(r).values():
        if exponent > 1:
            return 0
        result = -result
    return result


def count_irreducible(p: int, d: int) -> int:
    """Number of monic irreducible polynomials of degree d over GF(p),
    ``(1/d) * sum_{r | d} mu(r) p^(d/r)``."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    _check_positive(d, "d")
    total = sum(mobius(r) * p ** (d // r) for r in divisors(d))
    q, rem = divmod(total, d)
    assert rem == 0, (p, d, total)
    return q


@dataclass(frozen=True)
class DivisorProfile:
    n: int
    divisors: tuple[int, ...]
    d: int
    sigma: int


def divisor_profile(n: int) -> DivisorProfile:
    divs = tuple(divisors(n))
    return DivisorProfile(n=n, divisors=divs, d=len(divs), sigma=sum(divs))
