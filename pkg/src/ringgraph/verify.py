"""Closed-form vertex counts and structures, and a harness comparing them
with graphs computed by enumeration.

Notation: q = p^n, d(n) the number of divisors, sigma(n) their sum.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import descriptor as dsc
from .compressed import compressed_graph
from .errors import DEFAULT_MAX_ORDER
from .graph import Join, Kcirc, StructuralExpr, Union, is_isomorphic, realize
from .numtheory import count_irreducible, divisors, is_prime, num_divisors, sigma


def _check_prime_power(p: int, n: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be at least 1")


# ---------------------------------------------------------------------------
# clique sizes inside M2(GF(p^n))

def b_sum(p: int, n: int) -> int:
    """Sum over d | n of (p^n - 1)/(p^d - 1): one-dimensional GF(p^d)-subspaces of GF(p^n)."""
    return sum((p**n - 1) // (p**d - 1) for d in divisors(n))


def a_unital(p: int, n: int) -> int:
    _check_prime_power(p, n)
    d = num_divisors(n)
    base = d * d - d + sigma(n)
    return base - 1 if p == 2 and n % 2 == 0 else base


def b_unital(p: int, n: int) -> int:
    _check_prime_power(p, n)
    return b_sum(p, n)


def c_clique(p: int, n: int) -> int:
    _check_prime_power(p, n)
    return num_divisors(2 * n) - num_divisors(n)


def a_nonunital(p: int, n: int) -> int:
    _check_prime_power(p, n)
    d = num_divisors(n)
    base = d * d + d + sigma(n)
    if p == 2:
        return base - 2 if n % 2 == 0 else base - 1
    return base


def b_nonunital(p: int, n: int) -> int:
    _check_prime_power(p, n)
    return (p**n - 1) // (p - 1) + b_sum(p, n)


# ---------------------------------------------------------------------------
# predictions

@dataclass(frozen=True)
class Prediction:
    ring: str
    unital: bool
    count: int
    structure: StructuralExpr | None = None
    weights: tuple[int, ...] | None = None  # descending
    provenance: str = ""

    def __post_init__(self):
        if self.structure is not None and self.structure.vertex_count() != self.count:
            raise ValueError(f"{self.structure} has {self.structure.vertex_count()} vertices, expected {self.count}")
        if self.weights is not None and len(self.weights) != self.count:
            raise ValueError("weight multiset size differs from the vertex count")


def predict_field(p: int, n: int, unital: bool) -> Prediction:
    """Lambda^1(GF(p^n)) = K_{d(n)}o, Lambda(GF(p^n)) = K_{d(n)+1}o.

    Weights: the class of the subfield GF(p^d), d > 1, holds the d*N_p(d)
    elements of exact degree d; the prime field class holds all p elements
    (unital) or its p - 1 nonzero ones, with {0} separate."""
    _check_prime_power(p, n)
    ws = [d * count_irreducible(p, d) for d in divisors(n) if d > 1]
    ws += [p] if unital else [p - 1, 1]
    count = num_divisors(n) + (0 if unital else 1)
    kind = "unital" if unital else "non-unital"
    return Prediction(f"gf:{p}^{n}", unital, count, Kcirc(count), tuple(sorted(ws, reverse=True)),
                      f"field theorem ({kind})")


def predict_product_counts(p: int, n: int, q: int, m: int) -> tuple[int, int]:
    """(v1, v) for GF(p^n) x GF(q^m)."""
    _check_prime_power(p, n)
    _check_prime_power(q, m)
    dn, dm = num_divisors(n), num_divisors(m)
    v1, v = dn * dm, (dn + 1) * (dm + 1)
    if p != q:
        return v1, v
    s = gcd(n, m)
    if p == 2:
        if s % 2 == 0:
            return v1 + sigma(s) - 1, v + sigma(s) - 2
        return v1 + sigma(s), v + sigma(s) - 1
    return v1 + sigma(s), v + sigma(s)


def predict_polyquot_counts(p: int, n: int) -> tuple[int, int]:
    """(v1, v) for GF(p^n)[x]/(x^2)."""
    _check_prime_power(p, n)
    v1 = num_divisors(n) + b_sum(p, n)
    v = 1 + num_divisors(n) + (p**n - 1) // (p - 1) + b_sum(p, n)
    return v1, v


def m2_clique_sizes(p: int, n: int, unital: bool) -> tuple[int, int, int]:
    if unital:
        return a_unital(p, n), b_unital(p, n), c_clique(p, n)
    return a_nonunital(p, n), b_nonunital(p, n), c_clique(p, n)


def m2_count(p: int, n: int, unital: bool) -> int:
    """Arithmetic total of the M2 structure, without building an expression."""
    q = p**n
    a, b, c = m2_clique_sizes(p, n, unital)
    centre = num_divisors(n) + (0 if unital else 1)
    return centre + (q * q + q) // 2 * a + (q + 1) * b + (q * q - q) // 2 * c


def predict_m2(p: int, n: int, unital: bool) -> Prediction:
    """K_z o v ((q^2+q)/2 K_a o  u  (q+1) K_b o  u  (q^2-q)/2 K_c o) with q = p^n,
    z = d(n) (unital) or d(n)+1, and (a, b, c) from the clique-size functions."""
    _check_prime_power(p, n)
    q = p**n
    a, b, c = m2_clique_sizes(p, n, unital)
    centre = num_divisors(n) + (0 if unital else 1)
    expr = Join(Kcirc(centre), Union(((Kcirc(a), (q * q + q) // 2), (Kcirc(b), q + 1), (Kcirc(c), (q * q - q) // 2))))
    if unital:
        tag = "M2 theorem (unital)"
    else:
        tag = "M2 theorem (non-unital; its statement says 'unital' but its formulas describe Lambda)"
    return Prediction(f"m2:gf:{p}^{n}", unital, m2_count(p, n, unital), expr, None, tag)


def _table1_row(d: dsc.Field) -> tuple[int, int]:
    p, n = d.p, d.n
    if (p, n) == (2, 1):
        return 15, 8
    if (p, n) == (2, 2):
        return 114, 68
    if n == 1:
        return 2 * p**2 + 3 * p + 4, p**2 + p + 2
    if n == 2:
        return 5 * p**4 + 2 * p**3 + 7 * p**2 + 2 * p + 6, 3 * p**4 + p**3 + 4 * p**2 + p + 4
    raise ValueError(f"{d} has no row in the small-field table")


def predict_table1(field_descriptor: str) -> tuple[int, int]:
    """(v, v1) of M2(F) for F = GF(2), GF(4), GF(p) or GF(p^2) with p odd.
    Accepts ``gf:p^n`` or ``m2:gf:p^n``."""
    d = dsc.parse(field_descriptor)
    if isinstance(d, dsc.Matrix2):
        d = d.field
    if not isinstance(d, dsc.Field):
        raise ValueError(f"{field_descriptor} is not a field descriptor")
    return _table1_row(d)


def _zmod_prime(d) -> dsc.Field | None:
    if isinstance(d, dsc.Field):
        return d
    if isinstance(d, dsc.Zmod) and is_prime(d.m):
        return dsc.Field(d.m, 1)
    return None


def predict(ring: str, unital: bool) -> Prediction:
    """Dispatch a descriptor to the matching closed form."""
    d = dsc.parse(ring)
    name = str(d)
    f = _zmod_prime(d)
    if f is not None:
        pred = predict_field(f.p, f.n, unital)
        return Prediction(name, unital, pred.count, pred.structure, pred.weights, pred.provenance)
    if isinstance(d, dsc.Matrix2):
        pred = predict_m2(d.field.p, d.field.n, unital)
        return Prediction(name, unital, pred.count, pred.structure, None, pred.provenance)
    if isinstance(d, dsc.PolyQuot):
        v1, v = predict_polyquot_counts(d.field.p, d.field.n)
        count = v1 if unital else v
        return Prediction(name, unital, count, Kcirc(count), None, "x^2 quotient formula")
    if isinstance(d, dsc.Product):
        left, right = _zmod_prime(d.left), _zmod_prime(d.right)
        if left is not None and right is not None:
            v1, v = predict_product_counts(left.p, left.n, right.p, right.n)
            count = v1 if unital else v
            return Prediction(name, unital, count, Kcirc(count), None, "product of two fields formula")
    raise ValueError(f"no closed form is known for {name}")


# ---------------------------------------------------------------------------
# harness

@dataclass(frozen=True)
class Case:
    ring: str
    unital: bool
    source: str = "auto"  # or "table1": take the count from the small-field table


@dataclass
class CaseResult:
    ring: str
    unital: bool
    predicted: int | None
    computed: int | None
    structure_ok: bool | None
    ms: int
    error: str | None = None

    @property
    def ok(self) -> bool:
        return (self.error is None and self.predicted == self.computed
                and self.structure_ok is not False)

    def to_dict(self) -> dict:
        out = {
            "ring": self.ring,
            "unital": self.unital,
            "predicted": self.predicted,
            "computed": self.computed,
            "structure_ok": self.structure_ok,
            "ms": self.ms,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class VerificationReport:
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cases)

    def to_dict(self) -> dict:
        return {"cases": [c.to_dict() for c in self.cases], "pass": self.passed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def table(self) -> str:
        head = f"{'ring':<34} {'unital':<6} {'predicted':>9} {'computed':>9} {'struct':>6} {'ms':>7}  result"
        lines = [head, "-" * len(head)]
        for c in self.cases:
            struct = {None: "-", True: "ok", False: "FAIL"}[c.structure_ok]
            verdict = "pass" if c.ok else f"FAIL{': ' + c.error if c.error else ''}"
            lines.append(f"{c.ring:<34} {str(c.unital).lower():<6} {_fmt(c.predicted):>9} "
                         f"{_fmt(c.computed):>9} {struct:>6} {c.ms:>7}  {verdict}")
        lines.append(f"overall: {'pass' if self.passed else 'FAIL'} ({sum(c.ok for c in self.cases)}/{len(self.cases)})")
        return "\n".join(lines)


def _fmt(x) -> str:
    return "-" if x is None else str(x)


def _as_case(c) -> Case:
    if isinstance(c, Case):
        return c
    ring, unital = c
    return Case(ring, bool(unital))


def verify_case(case: Case, *, check_structure: bool = False, max_order: int | None = None) -> CaseResult:
    start = time.perf_counter()
    predicted = computed = structure_ok = None
    error = None
    try:
        pred = predict(case.ring, case.unital)
        predicted = pred.count
        if case.source == "table1":
            v, v1 = predict_table1(case.ring)
            predicted = v1 if case.unital else v
        ring = dsc.build_ring(case.ring, max_order=max_order)
        cg = compressed_graph(ring, unital=case.unital)
        computed = cg.n
        if check_structure and pred.structure is not None:
            structure_ok = is_isomorphic(cg.graph, realize(pred.structure), allow_brute_force=False)
    except Exception as exc:  # recorded per case; the batch goes on
        error = f"{type(exc).__name__}: {exc}"
    ms = int(round((time.perf_counter() - start) * 1000))
    name = case.ring
    try:
        name = dsc.canonical(case.ring)
    except Exception:
        pass
    return CaseResult(name, case.unital, predicted, computed, structure_ok, ms, error)


def run_verification(cases, check_structure: bool = False, *, max_order: int | None = None) -> VerificationReport:
    """Cases run one after another; the report keeps input order."""
    report = VerificationReport()
    for c in cases:
        report.cases.append(verify_case(_as_case(c), check_structure=check_structure, max_order=max_order))
    return report


# ---------------------------------------------------------------------------
# named suites

def _both(rings, source: str = "auto") -> list[Case]:
    return [Case(r, u, source) for r in rings for u in (True, False)]


def _fits(ring: str, max_order: int) -> bool:
    return dsc.order_of(dsc.parse(ring)) <= max_order


def suite_cases(name: str, max_order: int | None = None) -> list[Case]:
    limit = DEFAULT_MAX_ORDER if max_order is None else max_order
    if name == "table1":
        rings = ["m2:gf:2^1", "m2:gf:3^1", "m2:gf:2^2", "m2:gf:5^1", "m2:gf:3^2"]
        cases = _both(rings, "table1")
    elif name == "fields":
        cases = _both(f"gf:{p}^{n}" for p in (2, 3, 5) for n in range(1, 7))
    elif name == "products":
        cases = _both(f"prod:(gf:{p}^{n},gf:{q}^{m})"
                      for p in (2, 3) for n in (1, 2, 3) for q in (2, 3) for m in (1, 2, 3))
    elif name == "polyquot":
        rings = []
        for p in (2, 3, 5):
            n = 1
            while p ** (2 * n) <= limit:
                rings.append(f"polyquot:gf:{p}^{n}")
                n += 1
        cases = _both(rings)
    elif name == "m2":
        cases = _both(f"m2:gf:{p}^{n}" for p, n in ((2, 1), (2, 2), (3, 1), (5, 1), (2, 3), (3, 2)))
    elif name == "all":
        cases = [c for s in ("table1", "fields", "products", "polyquot", "m2") for c in suite_cases(s, limit)]
    else:
        raise KeyError(name)
    return [c for c in cases if _fits(c.ring, limit)]


SUITES = ("table1", "fields", "products", "polyquot", "m2", "all")


# ---------------------------------------------------------------------------
# asymptotic diagnostic (not a pass/fail check)

def asymptotic_ratio(p: int, n: int, unital: bool = True) -> Fraction:
    """v1 (or v) of M2(GF(p^n)) divided by sigma(n) p^{2n} / 2, from the formulas."""
    return Fraction(m2_count(p, n, unital) * 2, sigma(n) * p ** (2 * n))


def asymptotic_table(p: int, ns) -> list[tuple[int, float]]:
    return [(n, float(asymptotic_ratio(p, n))) for n in ns]
