"""Exact integer/rational helpers shared by the rest of the package.

Rationals are plain :class:`fractions.Fraction` values; Python integers never
overflow, so nothing here can lose precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

Rational = Fraction


def isqrt(n: int) -> int:
    """Largest t with t*t <= n."""
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    t = math.isqrt(n)
    return t * t == n


@dataclass(frozen=True)
class PrimeList:
    """All primes <= ``limit`` in ascending order."""

    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self) -> Iterator[int]:
        return (int(p) for p in self.primes)

    def __getitem__(self, i):
        return self.primes[i]

    def between(self, lo: int, hi: int) -> list[int]:
        """Primes p with lo <= p < hi."""
        a = np.searchsorted(self.primes, lo, side="left")
        b = np.searchsorted(self.primes, hi, side="left")
        return [int(p) for p in self.primes[a:b]]


def sieve_primes(limit: int) -> PrimeList:
    if limit < 0:
        raise ValueError("limit must be non-negative")
    if limit < 2:
        return PrimeList(limit, np.zeros(0, dtype=np.int64))
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return PrimeList(limit, np.flatnonzero(flags).astype(np.int64))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for n up to ~1e10."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
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
    if n < 1:
        raise ValueError("divisors needs n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"legendre symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker3(n: int) -> int:
    """(n/3): the Legendre symbol modulo 3."""
    return (0, 1, -1)[n % 3]


class DivisorFunctions(NamedTuple):
    sigma: int
    mu1: int
    mu2: int
    mu3: int
    lam: Fraction
    phi: int


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def divisor_functions(n: int) -> DivisorFunctions:
    """sigma, the restricted divisor sums mu1/mu2/mu3, lambda and phi at n.

    mu1 sums odd divisors, mu2 sums divisors prime to 3, mu3 = (n/3) sigma(n)
    and lambda = (1/2) sum_{d|n} min(d, n/d).
    """
    if n < 1:
        raise ValueError("divisor functions need n >= 1")
    ds = divisors(n)
    sigma = sum(ds)
    return DivisorFunctions(
        sigma=sigma,
        mu1=sum(d for d in ds if d % 2),
        mu2=sum(d for d in ds if d % 3),
        mu3=kronecker3(n) * sigma,
        lam=Fraction(sum(min(d, n // d) for d in ds), 2),
        phi=euler_phi(n),
    )


def mu(i: int, r) -> int:
    """mu_i evaluated at a rational argument; zero off the positive integers."""
    r = Fraction(r)
    if r.denominator != 1 or r <= 0:
        return 0
    f = divisor_functions(int(r))
    return (f.mu1, f.mu2, f.mu3)[i - 1]
