"""Slow, independent reference computations used only by the tests."""

from fractions import Fraction
from math import gcd


def trial_division_primes(limit):
    out = []
    for n in range(2, limit + 1):
        if all(n % d for d in out if d * d <= n):
            out.append(n)
    return out


def gauss_reduce(a, b, c):
    """Reduce a positive definite form with the classical normalize/swap loop."""
    while True:
        # normalize b into (-a, a]
        k = (a - b) // (2 * a)
        b, c = b + 2 * k * a, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def reduced_classes(n, box=12):
    """Reduced representatives reached by reducing every form of discriminant -n in a box."""
    seen = set()
    for a in range(1, box + n):
        for b in range(-box, box + 1):
            num = b * b + n
            if num % (4 * a):
                continue
            seen.add(gauss_reduce(a, b, num // (4 * a)))
    return seen


def hurwitz_from_classes(n):
    if n == 0:
        return Fraction(-1, 12)
    total = Fraction(0)
    for a, b, c in reduced_classes(n):
        if a == b == c:
            total += Fraction(1, 3)
        elif b == 0 and a == c:
            total += Fraction(1, 2)
        else:
            total += 1
    return total


def brute_points(p, A, B):
    """#E(F_p) by testing every (x, y)."""
    return 1 + sum(1 for x in range(p) for y in range(p) if (y * y - x**3 - A * x - B) % p == 0)


def ec_add(P, Q, A, p):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + A) * pow(2 * y1, p - 2, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, p - 2, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def brute_structure(p, A, B):
    """(d1, d2) from the order of every point, found by repeated addition."""
    pts = [(x, y) for x in range(p) for y in range(p) if (y * y - x**3 - A * x - B) % p == 0]
    n = len(pts) + 1
    exp = 1
    for P in pts:
        k, Q = 1, P
        while Q is not None:
            Q = ec_add(Q, P, A, p)
            k += 1
        exp = exp * k // gcd(exp, k)
    return n // exp, exp


def orbit_classes(p):
    """Isomorphism classes as explicit orbit sets."""
    classes = []
    assigned = {}
    for A in range(p):
        for B in range(p):
            if (4 * A**3 + 27 * B**2) % p == 0 or (A, B) in assigned:
                continue
            orb = frozenset((pow(u, 4, p) * A % p, pow(u, 6, p) * B % p) for u in range(1, p))
            for key in orb:
                assigned[key] = len(classes)
            classes.append(orb)
    return classes
