"""Truncated q-expansions with exact rational coefficients.

Covers what is needed to write the Hurwitz slice series times theta as an
explicit combination of weight-2 forms of level 36: real Dirichlet
characters, generalized Bernoulli numbers, Eisenstein series E_2(z; psi1, psi2),
the newform attached to y^2 = x^3 + 1, and exact linear solving.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd, lcm
from typing import Sequence

from . import ecfp
from .arith import factorize, is_prime, isqrt, mu, sieve_primes
from .hurwitz import HurwitzTable
from .report import VerificationReport


class QSeries:
    """sum_{n=0}^{T} coeffs[n] q^n, everything beyond q^T discarded."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @classmethod
    def zero(cls, T: int) -> "QSeries":
        return cls([0] * (T + 1))

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        return f"QSeries(T={self.truncation}, [{head}{', ...' if len(self) > 8 else ''}])"

    def _check(self, other: "QSeries") -> None:
        if self.truncation != other.truncation:
            raise ValueError(f"truncation mismatch: {self.truncation} vs {other.truncation}")

    def __add__(self, other):
        self._check(other)
        return QSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return QSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return QSeries([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def stretch(self, d: int) -> "QSeries":
        return series_stretch(self, d)

    def truncate(self, T: int) -> "QSeries":
        if T > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[: T + 1])


def series_add(f: QSeries, g: QSeries) -> QSeries:
    return f + g


def series_scale(f: QSeries, k) -> QSeries:
    k = Fraction(k)
    return QSeries([k * a for a in f.coeffs])


def _common_denominator(f: QSeries) -> tuple[int, list[int]]:
    den = 1
    for a in f.coeffs:
        den = lcm(den, a.denominator)
    return den, [int(a * den) for a in f.coeffs]


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product truncated at the common truncation."""
    f._check(g)
    T = f.truncation
    df, nf = _common_denominator(f)
    dg, ng = _common_denominator(g)
    # iterate over the sparser factor's support
    if sum(1 for x in nf if x) > sum(1 for x in ng if x):
        nf, ng = ng, nf
    out = [0] * (T + 1)
    for i, a in enumerate(nf):
        if not a:
            continue
        for j in range(T + 1 - i):
            b = ng[j]
            if b:
                out[i + j] += a * b
    den = df * dg
    return QSeries([Fraction(x, den) for x in out])


def series_stretch(f: QSeries, d: int) -> QSeries:
    """f(dz): coefficient n moves to d*n."""
    if d < 1:
        raise ValueError("stretch factor must be positive")
    T = f.truncation
    out = [Fraction(0)] * (T + 1)
    for n in range(T // d + 1):
        out[d * n] = f.coeffs[n]
    return QSeries(out)


def theta(T: int) -> QSeries:
    """sum over all integers s of q^(s^2)."""
    if T < 0:
        raise ValueError("truncation must be non-negative")
    out = [0] * (T + 1)
    out[0] = 1
    for s in range(1, isqrt(T) + 1):
        out[s * s] = 2
    return QSeries(out)


# --- characters ----------------------------------------------------------

@dataclass(frozen=True)
class DirichletCharacter:
    """Real Dirichlet character given by its values on 0..M-1."""

    modulus: int
    values: tuple[int, ...]

    def __post_init__(self):
        M = self.modulus
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if M < 1 or len(vals) != M:
            raise ValueError("character needs one value per residue")
        for a, v in enumerate(vals):
            if v not in (-1, 0, 1):
                raise ValueError("only real characters are supported")
            if (v == 0) != (gcd(a, M) > 1):
                raise ValueError(f"value at {a} inconsistent with gcd({a}, {M})")
        if vals[1 % M] != 1:
            raise ValueError("chi(1) must be 1")
        units = [a for a in range(M) if gcd(a, M) == 1]
        for a in units:
            for b in units:
                if vals[a * b % M] != vals[a] * vals[b]:
                    raise ValueError("character is not multiplicative")

    def __call__(self, n: int) -> int:
        return self.values[n % self.modulus]

    @property
    def is_trivial(self) -> bool:
        return all(v in (0, 1) for v in self.values)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        M = lcm(self.modulus, other.modulus)
        return DirichletCharacter(M, tuple(self(a) * other(a) for a in range(M)))


def principal_character(M: int) -> DirichletCharacter:
    return DirichletCharacter(M, tuple(1 if gcd(a, M) == 1 else 0 for a in range(M)))


def quadratic_character(p: int) -> DirichletCharacter:
    """The Legendre symbol (./p) for an odd prime p."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError("quadratic character needs an odd prime")
    squares = {a * a % p for a in range(1, p)}
    return DirichletCharacter(p, tuple(0 if a == 0 else (1 if a in squares else -1) for a in range(p)))


CHI0 = principal_character(1)
CHI0_2 = principal_character(2)
CHI0_3 = principal_character(3)
LEGENDRE3 = quadratic_character(3)


def gen_bernoulli(k: int, chi: DirichletCharacter) -> Fraction:
    """B_{k,chi}: k! times the t^k coefficient of sum_a chi(a) t e^{at} / (e^{mt} - 1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    m = chi.modulus
    # numerator sum_a chi(a) e^{at}; denominator (e^{mt} - 1)/t
    num = [Fraction(sum(chi(a) * a**j for a in range(1, m + 1)), factorial(j)) for j in range(k + 1)]
    den = [Fraction(m ** (j + 1), factorial(j + 1)) for j in range(k + 1)]
    quo = []
    for j in range(k + 1):
        acc = num[j] - sum((quo[i] * den[j - i] for i in range(j)), Fraction(0))
        quo.append(acc / den[0])
    return quo[k] * factorial(k)


def eisenstein_E2(psi1: DirichletCharacter, psi2: DirichletCharacter, T: int) -> QSeries:
    """Weight-2 Eisenstein series with a_n = sum_{d|n} psi1(n/d) psi2(d) d."""
    if not psi1.is_trivial:
        a0 = Fraction(0)
    elif psi2.is_trivial:
        a0 = Fraction(psi1.modulus * psi2.modulus - 1, 24)
    else:
        a0 = -gen_bernoulli(2, psi1 * psi2) / 4
    out = [0] * (T + 1)
    for d in range(1, T + 1):
        w = psi2(d) * d
        if not w:
            continue
        for k in range(1, T // d + 1):
            out[d * k] += psi1(k) * w
    out[0] = a0
    return QSeries(out)


def hurwitz_slice(a: int, b: int, table: HurwitzTable, T: int) -> QSeries:
    """sum over N = b (mod a) of H(N) q^N; requires -b to be a non-residue mod a."""
    if a < 1:
        raise ValueError("modulus must be positive")
    table.require(T)
    squares = {x * x % a for x in range(a)}
    if (-b) % a in squares:
        raise ValueError(f"-{b} is a square modulo {a}")
    b %= a
    return QSeries([table[N] if N % a == b else 0 for N in range(T + 1)])


# --- the level-36 newform --------------------------------------------------

def hecke_prime_power(ap: int, p: int, e: int) -> int:
    """a(p^e) from a(p^{e+1}) = a(p) a(p^e) - p a(p^{e-1})."""
    prev, cur = 1, ap
    if e == 0:
        return 1
    for _ in range(e - 1):
        prev, cur = cur, ap * cur - p * prev
    return cur


def binomial_prime_power(ap: int, p: int, e: int) -> int:
    """Closed form sum_{ceil(e/2) <= k <= e} C(k, e-k) a(p)^{2k-e} (-p)^{e-k}, with 0^0 = 1."""
    return sum(comb(k, e - k) * ap ** (2 * k - e) * (-p) ** (e - k) for k in range((e + 1) // 2, e + 1))


def frobenius_trace_x3p1(p: int) -> int:
    """p + 1 - #E(F_p) for E: y^2 = x^3 + 1, p >= 5."""
    return p + 1 - ecfp.count_points(ecfp.CurveWeierstrass(p, 0, 1))


def cuspform_aN(n_max: int) -> list[int]:
    """Coefficients a(0..n_max) of the newform attached to y^2 = x^3 + 1 (a(0) = 0)."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    ap = {p: frobenius_trace_x3p1(p) for p in sieve_primes(n_max) if p >= 5}
    out = [0] * (n_max + 1)
    out[1] = 1
    for n in range(2, n_max + 1):
        if gcd(n, 6) > 1:
            continue
        v = 1
        for p, e in factorize(n).items():
            val = hecke_prime_power(ap[p], p, e)
            assert val == binomial_prime_power(ap[p], p, e), (n, p, e)
            v *= val
        out[n] = v
    return out


def cuspform_series(T: int) -> QSeries:
    return QSeries(cuspform_aN(max(T, 1))[: T + 1])


def sturm_bound(k: int, N: int) -> int:
    """Index up to which coefficients pin down a weight-k form of level N."""
    if k < 1 or N < 1:
        raise ValueError("need k >= 1 and N >= 1")
    m = Fraction(k, 12) * N
    for p in factorize(N):
        m *= Fraction(p + 1, p)
    return m.numerator // m.denominator


BASIS_36_LABELS = (
    "E2(z;chi0,chi0_2)",
    "E2(z;chi0,chi0_3)",
    "E2(z;(./3),(./3))",
    "E2(2z;chi0,chi0_2)",
    "E2(3z;chi0,chi0_2)",
    "E2(9z;chi0,chi0_2)",
    "E2(6z;chi0,chi0_2)",
    "E2(18z;chi0,chi0_2)",
    "E2(3z;chi0,chi0_3)",
    "E2(2z;(./3),(./3))",
    "E2(4z;(./3),(./3))",
    "f_E",
)


def build_basis_36(T: int) -> list[QSeries]:
    """Eleven Eisenstein series spanning the Eisenstein part of M_2(36), then f_E."""
    if T < 12:
        raise ValueError("need at least 13 coefficients")
    e02 = eisenstein_E2(CHI0, CHI0_2, T)
    e03 = eisenstein_E2(CHI0, CHI0_3, T)
    e33 = eisenstein_E2(LEGENDRE3, LEGENDRE3, T)
    return [
        e02, e03, e33,
        e02.stretch(2), e02.stretch(3), e02.stretch(9), e02.stretch(6), e02.stretch(18),
        e03.stretch(3),
        e33.stretch(2), e33.stretch(4),
        cuspform_series(T),
    ]


class BasisDependentError(ValueError):
    pass


class NotInSpanError(ValueError):
    def __init__(self, index: int, residual: Fraction):
        super().__init__(f"target not in span: residual {residual} at coefficient {index}")
        self.index = index
        self.residual = residual


def solve_combination(target: QSeries, basis: Sequence[QSeries], fit_terms: int) -> list[Fraction]:
    """Exact coefficients x with sum_j x_j basis[j] == target.

    The system is solved on coefficients 0..fit_terms-1 by Gaussian elimination
    over the rationals; the remaining coefficients up to the truncation are then
    checked and the first mismatch is reported.
    """
    k = len(basis)
    if fit_terms < k:
        raise ValueError("fit_terms must be at least the basis size")
    for b in basis:
        target._check(b)
    if fit_terms > len(target):
        raise ValueError("fit_terms exceeds the truncation")
    rows = [[b[n] for b in basis] + [target[n]] for n in range(fit_terms)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, fit_terms) if rows[i][col] != 0), None)
        if piv is None:
            raise BasisDependentError(f"basis dependent on the first {fit_terms} coefficients (column {col})")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(fit_terms):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    x = [rows[i][k] for i in range(k)]
    for n in range(len(target)):
        resid = target[n] - sum((xj * b[n] for xj, b in zip(x, basis)), Fraction(0))
        if resid != 0:
            raise NotInSpanError(n, resid)
    return x


def combine(coeffs: Sequence, basis: Sequence[QSeries]) -> QSeries:
    out = QSeries.zero(basis[0].truncation)
    for c, b in zip(coeffs, basis):
        out = out + series_scale(b, c)
    return out


def slice_theta_product(table: HurwitzTable, T: int) -> QSeries:
    """The q-series sum_{N = 1 (3)} H(N) q^N times theta."""
    return hurwitz_slice(3, 1, table, T) * theta(T)


# twelve coefficients of the level-36 identity, in basis order; mu-arguments
# are (function index, divisor) pairs for the Eisenstein part
_TECHPROP_TERMS = (
    (Fraction(-1, 16), 1, 1),
    (Fraction(3, 16), 2, 1),
    (Fraction(-1, 24), 3, 1),
    (Fraction(-1, 2), 1, 2),
    (Fraction(1, 4), 1, 3),
    (Fraction(-3, 16), 1, 9),
    (Fraction(2), 1, 6),
    (Fraction(-3, 2), 1, 18),
    (Fraction(-3, 16), 2, 3),
    (Fraction(-1, 8), 3, 2),
    (Fraction(-1, 3), 3, 4),
)
CUSP_WEIGHT = Fraction(-1, 12)


def techprop_rhs(n: int, a_n: int) -> Fraction:
    total = sum((w * mu(i, Fraction(n, d)) for w, i, d in _TECHPROP_TERMS), Fraction(0))
    return total + CUSP_WEIGHT * a_n


def starred_sum(n: int, table: HurwitzTable) -> Fraction:
    """sum over |s| < sqrt(n) of H(n - s^2), s = 0 (3) if n = 1 (3), s = +-1 (3) if n = 2 (3)."""
    if n % 3 == 0:
        raise ValueError("the starred sum is defined for n not divisible by 3")
    table.require(n)
    want_zero = n % 3 == 1
    bound = isqrt(n - 1)
    total = 0
    for s in range(-bound, bound + 1):
        if (s % 3 == 0) == want_zero:
            total += int(table.values12[n - s * s])
    return Fraction(total, 12)


def verify_techprop(table: HurwitzTable, T: int) -> VerificationReport:
    report = VerificationReport("techprop")
    a = cuspform_aN(max(T, 1))
    for n in range(1, T + 1):
        if n % 3 == 0:
            continue
        report.items += 1
        report.checks += 1
        lhs = starred_sum(n, table)
        rhs = techprop_rhs(n, a[n])
        if lhs != rhs:
            report.failures.append(f"n={n}: starred sum {lhs} != {rhs}")
    return report
