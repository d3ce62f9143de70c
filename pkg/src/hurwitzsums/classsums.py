"""Restricted sums of Hurwitz class numbers and their closed forms.

The central quantity is

    S(n; c, m) = sum of H(4n - r^2) over integers r with r^2 < 4n, r = c (mod m)

(or H(n - r^2) with r^2 < n for the "plain" radius).  Sums are computed for all
residues at once with numpy and kept as integers scaled by 12.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .arith import divisor_functions, factorize, is_square, isqrt, sieve_primes
from .hurwitz import HurwitzTable
from .report import VerificationReport


class Radius(enum.Enum):
    FOUR_N = "4n"  # r^2 < 4n, summand H(4n - r^2)
    PLAIN_N = "n"  # r^2 < n, summand H(n - r^2)


@dataclass(frozen=True)
class SumQuery:
    n: int
    m: int
    c: int
    radius: Radius = Radius.FOUR_N

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("SumQuery needs n >= 1 and m >= 1")
        object.__setattr__(self, "c", self.c % self.m)


def residue_sums12(n: int, m: int, table: HurwitzTable, radius: Radius = Radius.FOUR_N,
                   inclusive: bool = False) -> np.ndarray:
    """12 * S(n; c, m) for c = 0..m-1.

    ``inclusive`` admits the boundary r^2 == 4n (or n), contributing H(0).
    """
    big = 4 * n if radius is Radius.FOUR_N else n
    table.require(big)
    bound = isqrt(big) if inclusive else isqrt(big - 1)
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    vals = table.values12[big - r * r]
    out = np.zeros(m, dtype=np.int64)
    np.add.at(out, r % m, vals)
    return out


def restricted_sum(query: SumQuery, table: HurwitzTable) -> Fraction:
    sums = residue_sums12(query.n, query.m, table, query.radius)
    return Fraction(int(sums[query.c]), 12)


def correction_term(r: int, p: int) -> Fraction:
    """c_{r,p}: 1/2 if 4p - r^2 is 4 times a square, 2/3 if 3 times a square."""
    d = 4 * p - r * r
    if d <= 0:
        raise ValueError(f"need r^2 < 4p, got r={r}, p={p}")
    if d % 4 == 0 and is_square(d // 4):
        return Fraction(1, 2)
    if d % 3 == 0 and is_square(d // 3):
        return Fraction(2, 3)
    return Fraction(0)


def _correction_display(p: int, m: int, c: int) -> Fraction | None:
    # closed forms for the correction sums where they are known (p > 3)
    if p <= 3:
        return None
    if m == 2 and c == 0:
        return {1: Fraction(10, 3), 5: Fraction(2), 7: Fraction(4, 3), 11: Fraction(0)}[p % 12]
    if m == 4 and c == (p + 1) % 4:
        return {1: Fraction(7, 3), 5: Fraction(1), 7: Fraction(4, 3), 11: Fraction(0)}[p % 12]
    if m == 7 and c == (p + 1) % 7 and p % 7 not in (0, 1):
        return Fraction(4, 3) if p % 3 == 1 else Fraction(0)
    return None


def correction_sum(p: int, m: int, c: int) -> Fraction:
    """Sum of c_{r,p} over |r| < 2 sqrt(p), r = c (mod m)."""
    if p < 3:
        raise ValueError("correction sums need p >= 3")
    c %= m
    bound = isqrt(4 * p - 1)
    total = sum((correction_term(r, p) for r in range(-bound, bound + 1) if r % m == c), Fraction(0))
    expected = _correction_display(p, m, c)
    assert expected is None or total == expected, (p, m, c, total, expected)
    return total


# --- theorem case tables -------------------------------------------------
# Each row: (residues, expected value, mode).  mode "each" means every listed
# residue class sums to the value; "total" means the union of classes does.

def _rows_t1(p):
    return 2, [((0,), Fraction(4 * p - 2, 3), "each"), ((1,), Fraction(2 * p + 2, 3), "each")]


def _rows_t2(p):
    return 4, [
        ((1, 3), Fraction(p + 1, 3), "each"),
        (((p + 1) % 4,), Fraction(5 * p - 7, 6), "each"),
        (((p - 1) % 4,), Fraction(p + 1, 2), "each"),
    ]


def _rows_t3(p):
    if p % 3 == 1:
        return 3, [((0,), Fraction(p + 1, 2), "each"), ((1, 2), Fraction(3 * p - 1, 4), "each")]
    if p % 3 == 2:
        return 3, [((0,), Fraction(p - 1), "each"), ((1, 2), Fraction(p + 1, 2), "each")]
    return 3, []


def _rows_t4(p):
    if p % 5 in (2, 3):
        return 5, [(((p + 1) % 5, (-p - 1) % 5), Fraction(p - 1, 2), "each")]
    if p % 5 == 4:
        return 5, [((0,), Fraction(p - 3, 2), "each")]
    return 5, []


def _rows_t6(p):
    rows = []
    if p % 7 in (3, 5):
        rows.append(((0,), Fraction(p + 1, 3), "each"))
    if p % 7 == 6:
        rows.append(((0,), Fraction(p - 5, 3), "each"))
        rows.append(((2, 5), Fraction(p + 1, 3), "each"))
    if p % 7 in (2, 3, 4, 5):
        rows.append((((p + 1) % 7, (-p - 1) % 7), Fraction(p - 2, 3), "each"))
    return 7, rows


# residues s mod 7 carrying a nonzero level-7 trace-formula weight
STARRED_MOD7 = {3: (0, 3, 4), 5: (0, 1, 6), 6: (0, 2, 5)}


def _rows_p42(p):
    if p % 7 in STARRED_MOD7:
        return 7, [(STARRED_MOD7[p % 7], Fraction(p - 1), "total")]
    return 7, []


def _rows_full(p):
    return 1, [((0,), Fraction(2 * p), "each")]


THEOREMS = {
    "T1": _rows_t1,
    "T2": _rows_t2,
    "T3": _rows_t3,
    "T4": _rows_t4,
    "T6": _rows_t6,
    "P42": _rows_p42,
    "FULL": _rows_full,
}


def _verify_chunk(theorem: str, primes: list[int], table: HurwitzTable) -> VerificationReport:
    rows_for = THEOREMS[theorem]
    report = VerificationReport(theorem)
    for p in primes:
        report.items += 1
        if p == 2:
            continue
        m, rows = rows_for(p)
        sums = residue_sums12(p, m, table)
        for residues, expected, mode in rows:
            if mode == "each":
                got = [Fraction(int(sums[c]), 12) for c in residues]
            else:
                got = [Fraction(int(sums[list(residues)].sum()), 12)]
            for g, c in zip(got, residues):
                report.checks += 1
                if g != expected:
                    report.failures.append(f"p={p}, c={c} (mod {m}): got {g}, expected {expected}")
    return report


def verify_theorem(theorem: str, primes, table: HurwitzTable, workers: int = 1) -> VerificationReport:
    """Check every case row of a closed-form theorem on the given primes.

    ``theorem`` is one of T1, T2, T3, T4, T6, P42 or FULL (the unrestricted
    sum 2p).  Primes outside a theorem's hypotheses count toward ``items`` but
    contribute no checks; p = 2 is always skipped.
    """
    theorem = theorem.upper()
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}")
    primes = [int(p) for p in primes]
    if primes:
        table.require(4 * max(primes))
    if workers <= 1 or len(primes) < 2 * workers:
        return _verify_chunk(theorem, primes, table)
    size = -(-len(primes) // workers)
    chunks = [primes[i : i + size] for i in range(0, len(primes), size)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_verify_chunk, [theorem] * len(chunks), chunks, [table] * len(chunks)))
    out = VerificationReport(theorem)
    for part in parts:
        out = out.merge(part)
    return out


def verify_hurwitz_kronecker(n_range, table: HurwitzTable) -> VerificationReport:
    """sum_{r^2 <= 4N} H(4N - r^2) == 2 sigma(N) - 2 lambda(N), boundary terms included."""
    report = VerificationReport("hurwitz-kronecker")
    for n in n_range:
        n = int(n)
        lhs = Fraction(int(residue_sums12(n, 1, table, inclusive=True)[0]), 12)
        f = divisor_functions(n)
        rhs = 2 * f.sigma - 2 * f.lam
        report.items += 1
        report.checks += 1
        if lhs != rhs:
            report.failures.append(f"N={n}: sum {lhs} != 2sigma - 2lambda = {rhs}")
    return report


def theorem5_residues(n: int) -> tuple[int, ...]:
    """Admissible c for the plain-radius sum, or () if n does not qualify."""
    if gcd(n, 6) != 1:
        return ()
    if not any(q % 3 == 2 and e % 2 == 1 for q, e in factorize(n).items()):
        return ()
    return (0,) if n % 3 == 1 else (1, 2)


def verify_theorem5(n_range, table: HurwitzTable) -> VerificationReport:
    report = VerificationReport("T5")
    for n in n_range:
        n = int(n)
        if n < 1:
            continue
        cs = theorem5_residues(n)
        if not cs:
            continue
        report.items += 1
        sums = residue_sums12(n, 3, table, Radius.PLAIN_N)
        expected = Fraction(divisor_functions(n).sigma, 12)
        for c in cs:
            report.checks += 1
            got = Fraction(int(sums[c]), 12)
            if got != expected:
                report.failures.append(f"n={n}, c={c}: got {got}, expected sigma/12 = {expected}")
    return report


# --- conjecture scanning -------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    """Linear fit S(p) = (alpha p + beta) / gamma for one (p mod m, +-c) cell."""

    p_residue: int
    c: int
    alpha: int
    beta: int
    gamma: int
    status: str  # "Fitted" or "NoPattern"
    samples: int = 0

    @property
    def fitted(self) -> bool:
        return self.status == "Fitted"

    def formula(self) -> str:
        if not self.fitted:
            return "NO_PATTERN"
        a = "p" if self.alpha == 1 else f"{self.alpha}p"
        b = f"+{self.beta}" if self.beta > 0 else (f"{self.beta}" if self.beta else "")
        return f"({a}{b})/{self.gamma}"

    def value(self, p: int) -> Fraction:
        return Fraction(self.alpha * p + self.beta, self.gamma)


def fit_linear(samples: list[tuple[int, Fraction]], max_gamma: int = 12):
    """(alpha, beta, gamma) from the first two samples if every sample agrees, else None."""
    (p1, s1), (p2, s2) = samples[0], samples[1]
    slope = (s2 - s1) / (p2 - p1)
    intercept = s1 - slope * p1
    gamma = slope.denominator * intercept.denominator // gcd(slope.denominator, intercept.denominator)
    if gamma > max_gamma:
        return None
    alpha, beta = int(slope * gamma), int(intercept * gamma)
    if any(Fraction(alpha * p + beta, gamma) != s for p, s in samples):
        return None
    return alpha, beta, gamma


MIN_SAMPLES = 30


def scan_conjectures(m: int, pmin: int, pmax: int, table: HurwitzTable,
                     max_gamma: int = 12) -> list[FitResult]:
    """Fit (alpha p + beta)/gamma to S(p; c, m) in every (p mod m, +-c) cell.

    Primes pmin <= p < pmax are fitted; the first prime >= pmax in each cell is
    held out and must also match for a cell to count as Fitted.  Cells are
    reported with 0 <= c <= m/2, merging c and -c.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    half = m // 2
    primes = sieve_primes(table.n_max // 4)
    fit_primes = [p for p in primes.between(max(pmin, 3), pmax) if p % m]
    cells: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    holdout: dict[int, int] = {}
    for p in primes.between(pmax, table.n_max // 4 + 1):
        if p % m and p % m not in holdout:
            holdout[p % m] = p
    for p in fit_primes:
        sums = residue_sums12(p, m, table)
        for c in range(half + 1):
            cells.setdefault((p % m, c), []).append((p, Fraction(int(sums[c]), 12)))
    results = []
    for a in range(1, m):
        if a not in holdout:
            raise ValueError(f"table too small to hold out a prime = {a} (mod {m}) beyond {pmax}")
        hp = holdout[a]
        hsums = residue_sums12(hp, m, table)
        for c in range(half + 1):
            samples = cells.get((a, c), [])
            if len(samples) < MIN_SAMPLES:
                raise ValueError(
                    f"only {len(samples)} primes = {a} (mod {m}) in [{pmin}, {pmax}); need {MIN_SAMPLES}"
                )
            fit = fit_linear(samples + [(hp, Fraction(int(hsums[c]), 12))], max_gamma)
            if fit is None:
                results.append(FitResult(a, c, 0, 0, 1, "NoPattern", len(samples)))
            else:
                results.append(FitResult(a, c, *fit, "Fitted", len(samples)))
    return results
