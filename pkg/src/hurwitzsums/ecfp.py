"""Brute-force elliptic curves over prime fields F_p, p >= 5.

Everything here is exhaustive enumeration: point counts from a table of
quadratic residues, isomorphism classes as orbits of (A, B) -> (u^4 A, u^6 B),
group structure from the orders of all points.  It is meant for p up to a
few hundred, where it serves as an independent check on class-number sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .arith import is_prime, isqrt, legendre
from .classsums import correction_term
from .hurwitz import hurwitz_single


class UnsupportedCharacteristic(ValueError):
    pass


def _check_prime(p: int) -> None:
    if p < 5 or not is_prime(p):
        raise UnsupportedCharacteristic(f"need a prime p >= 5, got {p}")


@dataclass(frozen=True, order=True)
class CurveWeierstrass:
    """y^2 = x^3 + A x + B over F_p."""

    p: int
    A: int
    B: int

    def __post_init__(self):
        _check_prime(self.p)
        object.__setattr__(self, "A", self.A % self.p)
        object.__setattr__(self, "B", self.B % self.p)
        if self.discriminant() == 0:
            raise ValueError(f"singular curve y^2 = x^3 + {self.A}x + {self.B} over F_{self.p}")

    def discriminant(self) -> int:
        return (4 * self.A**3 + 27 * self.B**2) % self.p


@dataclass(frozen=True)
class GroupStructure:
    """E(F_p) ~ Z/d1 x Z/d2 with d1 | d2."""

    d1: int
    d2: int

    @property
    def order(self) -> int:
        return self.d1 * self.d2


@lru_cache(maxsize=None)
def _field_tables(p: int):
    chi = [0] * p
    roots: dict[int, int] = {}
    for y in range(1, p):
        sq = y * y % p
        chi[sq] = 1
        roots.setdefault(sq, y)
    for a in range(1, p):
        if not chi[a]:
            chi[a] = -1
    return tuple(chi), roots


def count_points(curve: CurveWeierstrass) -> int:
    p, A, B = curve.p, curve.A, curve.B
    chi, _ = _field_tables(p)
    n = p + 1 + sum(chi[(x * x * x + A * x + B) % p] for x in range(p))
    r = p + 1 - n
    assert r * r < 4 * p, "Hasse bound violated"
    return n


def _points(curve: CurveWeierstrass) -> list[tuple[int, int]]:
    p, A, B = curve.p, curve.A, curve.B
    _, roots = _field_tables(p)
    pts = []
    for x in range(p):
        v = (x * x * x + A * x + B) % p
        if v == 0:
            pts.append((x, 0))
        elif v in roots:
            y = roots[v]
            pts.append((x, y))
            pts.append((x, p - y))
    return pts


def _add(P, Q, A: int, p: int):
    # None is the point at infinity
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def group_structure(curve: CurveWeierstrass) -> GroupStructure:
    """Invariant factors from the exponent of E(F_p).

    Orders come from walking cyclic subgroups; every multiple kP visited on
    a walk of length n gets order n / gcd(k, n) for free, so each curve costs
    O(#E) additions.
    """
    pts = _points(curve)
    order = len(pts) + 1
    known: dict[tuple[int, int], int] = {}
    exponent = 1
    for P in pts:
        if P in known:
            continue
        walk = [P]
        Q = _add(P, P, curve.A, curve.p)
        while Q is not None:
            walk.append(Q)
            Q = _add(Q, P, curve.A, curve.p)
        n = len(walk) + 1
        for k, R in enumerate(walk, start=1):
            known.setdefault(R, n // gcd(k, n))
        exponent = _lcm(exponent, n)
        if exponent == order:
            break
    d2 = exponent
    d1 = order // d2
    assert d1 * d2 == order and d2 % d1 == 0 and (curve.p - 1) % d1 == 0
    return GroupStructure(d1, d2)


@lru_cache(maxsize=None)
def isomorphism_classes(p: int) -> tuple[CurveWeierstrass, ...]:
    """Lexicographically smallest (A, B) in every twist orbit over F_p."""
    _check_prime(p)
    u46 = {(pow(u, 4, p), pow(u, 6, p)) for u in range(1, p)}
    seen: set[tuple[int, int]] = set()
    reps = []
    for A in range(p):
        for B in range(p):
            if (4 * A**3 + 27 * B**2) % p == 0 or (A, B) in seen:
                continue
            reps.append(CurveWeierstrass(p, A, B))
            for s4, s6 in u46:
                seen.add((s4 * A % p, s6 * B % p))
    return tuple(reps)


@dataclass(frozen=True)
class ClassData:
    curve: CurveWeierstrass
    points: int
    structure: GroupStructure

    @property
    def trace(self) -> int:
        return self.curve.p + 1 - self.points


@lru_cache(maxsize=None)
def census(p: int) -> tuple[ClassData, ...]:
    return tuple(
        ClassData(E, count_points(E), group_structure(E)) for E in isomorphism_classes(p)
    )


@dataclass
class CurveClassSummary:
    p: int
    trace_counts: dict[int, int]
    torsion_counts: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.trace_counts.values())


def trace_spectrum(p: int) -> CurveClassSummary:
    """Class counts per Frobenius trace, checked against H(4p - r^2) + c_{r,p}."""
    data = census(p)
    bound = isqrt(4 * p - 1)
    counts = {r: 0 for r in range(-bound, bound + 1)}
    for d in data:
        counts[d.trace] += 1
    for r, k in counts.items():
        expected = hurwitz_single(4 * p - r * r) + correction_term(r, p)
        if k != expected:
            raise AssertionError(f"p={p}, r={r}: census {k} != H + c = {expected}")
    summary = CurveClassSummary(p, counts)
    for label in TORSION_QUERIES:
        summary.torsion_counts[label] = torsion_class_counts(p, label)
    return summary


def _query_predicate(query: str):
    kind, _, m = query.rpartition("-")
    if query == "cyclic4-not-full2":
        return lambda d: d.structure.d2 % 4 == 0 and d.structure.d1 % 2 != 0
    try:
        m = int(m)
    except ValueError:
        raise ValueError(f"unsupported torsion query {query!r}") from None
    if kind == "order" and m in (2, 3, 4, 5, 7):
        return lambda d: d.structure.d2 % m == 0
    if kind == "full" and m in (2, 3, 5, 7):
        return lambda d: d.structure.d1 % m == 0
    if kind == "divides" and m >= 1:
        return lambda d: d.points % m == 0
    raise ValueError(f"unsupported torsion query {query!r}")


TORSION_QUERIES = (
    "order-2", "order-3", "order-4", "order-5", "order-7",
    "full-2", "full-3", "full-5", "full-7",
    "cyclic4-not-full2",
)


def two_torsion_class_formula(p: int) -> tuple[int, int]:
    """Closed forms for (classes with a 2-torsion point, classes with full 2-torsion)."""
    num = {1: (4 * p + 8, p + 5), 5: (4 * p + 4, p + 1), 7: (4 * p + 2, p + 2), 11: (4 * p - 2, p - 2)}
    a, b = num[p % 12]
    return a // 3, b // 3


def seven_torsion_class_formula(p: int) -> int | None:
    """Classes with a point of order 7 when p is not 1 mod 7; None otherwise."""
    if p % 7 in (0, 1):
        return None
    if p % 7 == 6:
        return (p - 1) // 3 if p % 3 == 1 else (p - 5) // 3
    return (p + 2) // 3 if p % 3 == 1 else (p - 2) // 3


def torsion_class_counts(p: int, query: str) -> int:
    """Number of isomorphism classes over F_p matching a torsion query.

    Queries: ``order-m`` (a point of order m, m in 2,3,4,5,7), ``full-m``
    (E[m] rational, m in 2,3,5,7), ``cyclic4-not-full2``, ``divides-m``
    (m | #E).  Where a closed form is known the count is checked against it.
    """
    pred = _query_predicate(query)
    count = sum(1 for d in census(p) if pred(d))
    if query == "order-2":
        assert count == two_torsion_class_formula(p)[0], (p, query, count)
    elif query == "full-2":
        assert count == two_torsion_class_formula(p)[1], (p, query, count)
    elif query == "cyclic4-not-full2":
        assert count == (p - 1) // 2, (p, query, count)
    elif query == "order-7":
        expected = seven_torsion_class_formula(p)
        assert expected is None or count == expected, (p, query, count)
    if query.startswith("full-"):
        m = int(query[5:])
        assert count == 0 or p % m == 1, (p, query, count)
    return count


def enumerate_2torsion_models(p: int) -> dict[str, int]:
    """Count nonsingular y^2 = x^3 + b x^2 + c x by full vs cyclic 2-torsion."""
    _check_prime(p)
    full = cyclic = 0
    for b in range(p):
        for c in range(1, p):
            disc = (b * b - 4 * c) % p
            if disc == 0:
                continue
            if legendre(disc, p) == 1:
                full += 1
            else:
                cyclic += 1
    assert full == (p - 1) * (p - 2) // 2
    assert cyclic == p * (p - 1) // 2
    return {"full_count": full, "cyclic_count": cyclic}


def short_weierstrass(a1, a2, a3, a4, a6, p: int) -> tuple[int, int]:
    """(A, B) with y^2 = x^3 + A x + B isomorphic to the long Weierstrass model."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    return (-27 * c4) % p, (-54 * c6) % p


def canonical_class(p: int, A: int, B: int) -> tuple[int, int]:
    """Smallest (u^4 A, u^6 B) over u in F_p^*."""
    return min((pow(u, 4, p) * A % p, pow(u, 6, p) * B % p) for u in range(1, p))


def long_discriminant(a1, a2, a3, a4, a6) -> int:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def tate4_coefficients(b: int):
    """y^2 + xy - b y = x^3 - b x^2."""
    return 1, -b, -b, 0, 0


def tate7_coefficients(s: int):
    """y^2 + (1 - s^2 + s) xy - (s^3 - s^2) y = x^3 - (s^3 - s^2) x^2."""
    return 1 - s * s + s, -(s**3 - s * s), -(s**3 - s * s), 0, 0


def enumerate_tate4(p: int) -> dict[str, int]:
    """Classes reached by the 4-torsion Tate family, split by full 2-torsion."""
    _check_prime(p)
    classes: set[tuple[int, int]] = set()
    cyclic: set[tuple[int, int]] = set()
    for b in range(p):
        delta = pow(b, 4, p) * (1 + 16 * b) % p
        if delta == 0:
            continue
        key = canonical_class(p, *short_weierstrass(*tate4_coefficients(b), p))
        classes.add(key)
        if legendre(16 * b + 1, p) != 1:
            cyclic.add(key)
    assert len(classes) == torsion_class_counts(p, "order-4")
    assert len(cyclic) == torsion_class_counts(p, "cyclic4-not-full2")
    return {"class_count": len(classes), "cyclic_not_full2": len(cyclic)}


def enumerate_tate7(p: int) -> dict[str, int]:
    """Nonsingular members and isomorphism classes of the 7-torsion Tate family."""
    _check_prime(p)
    if p == 7:
        raise UnsupportedCharacteristic("the 7-torsion family needs p != 7")
    roots = sum(1 for s in range(p) if (s**3 - 8 * s * s + 5 * s + 1) % p == 0)
    assert roots == (3 if p % 7 in (1, 6) else 0), (p, roots)
    classes: set[tuple[int, int]] = set()
    nonsingular = 0
    for s in range(p):
        delta = pow(s, 7, p) * pow(s - 1, 7, p) * (s**3 - 8 * s * s + 5 * s + 1) % p
        if delta == 0:
            continue
        nonsingular += 1
        classes.add(canonical_class(p, *short_weierstrass(*tate7_coefficients(s), p)))
    assert nonsingular == p - 2 - roots
    assert len(classes) == torsion_class_counts(p, "order-7")
    return {"nonsingular_count": nonsingular, "cubic_roots": roots, "class_count": len(classes)}
