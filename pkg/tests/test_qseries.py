from fractions import Fraction
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hurwitzsums import qseries as qs
from hurwitzsums.arith import divisor_functions, sieve_primes
from hurwitzsums.hurwitz import hurwitz_table
from hurwitzsums.qseries import QSeries


def series_strategy(T=12):
    coeff = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 50))
    return st.lists(coeff, min_size=T + 1, max_size=T + 1).map(QSeries)


def test_stretch_identity():
    th = qs.theta(50)
    assert th.stretch(1) == th
    assert th.stretch(3)[27] == 2 and th.stretch(3)[9] == 0


def test_theta_squared():
    sq = qs.theta(30) * qs.theta(30)
    brute = [sum(1 for a in range(-6, 7) for b in range(-6, 7) if a * a + b * b == n) for n in range(31)]
    assert list(sq.coeffs) == brute
    assert list(sq.coeffs[:6]) == [1, 4, 4, 0, 4, 8]


def test_theta_coefficients():
    th = qs.theta(12)
    assert list(th.coeffs[:5]) == [1, 2, 0, 0, 2]
    assert th[9] == 2 and th[12] == 0


def test_truncation_mismatch():
    with pytest.raises(ValueError):
        qs.theta(5) + qs.theta(6)


@given(series_strategy(), series_strategy())
def test_add_sub(f, g):
    assert (f + g) - g == f


@settings(max_examples=30)
@given(series_strategy(), series_strategy(), series_strategy())
def test_mul_comm_assoc(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)


def test_mul_against_naive():
    rng = random.Random(1)
    f = QSeries([Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(20)])
    g = QSeries([Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(20)])
    naive = [sum((f[i] * g[n - i] for i in range(n + 1)), Fraction(0)) for n in range(20)]
    assert list((f * g).coeffs) == naive


def test_character_validation():
    assert qs.LEGENDRE3.values == (0, 1, -1)
    assert qs.CHI0_2.values == (0, 1)
    assert qs.CHI0.is_trivial and not qs.LEGENDRE3.is_trivial
    with pytest.raises(ValueError):
        qs.DirichletCharacter(3, (1, 1, 1))
    with pytest.raises(ValueError):
        qs.DirichletCharacter(5, (0, 1, 1, -1, -1))  # chi(4) != chi(2)^2


def bernoulli_oracle(k, chi):
    # B_{k,chi} = m^{k-1} sum_a chi(a) B_k(a/m), with Bernoulli polynomials
    m = chi.modulus
    x = sympy.Symbol("x")
    total = sum(chi(a) * sympy.bernoulli(k, x).subs(x, sympy.Rational(a, m)) for a in range(1, m + 1))
    val = sympy.Rational(m) ** (k - 1) * total
    return Fraction(int(val.p), int(val.q))


@pytest.mark.parametrize("k,chi,expected", [(2, qs.CHI0, Fraction(1, 6)), (1, qs.LEGENDRE3, Fraction(-1, 3)),
                                            (2, qs.LEGENDRE3, 0)])
def test_gen_bernoulli_examples(k, chi, expected):
    assert qs.gen_bernoulli(k, chi) == expected


def test_gen_bernoulli_oracle():
    chars = [qs.CHI0, qs.CHI0_2, qs.CHI0_3, qs.LEGENDRE3, qs.quadratic_character(5),
             qs.quadratic_character(7), qs.LEGENDRE3 * qs.quadratic_character(5)]
    for chi in chars:
        for k in range(0, 7):
            assert qs.gen_bernoulli(k, chi) == bernoulli_oracle(k, chi), (chi.modulus, k)


def test_eisenstein_examples():
    e02 = qs.eisenstein_E2(qs.CHI0, qs.CHI0_2, 20)
    assert e02[0] == Fraction(1, 24) and e02[6] == 4
    e03 = qs.eisenstein_E2(qs.CHI0, qs.CHI0_3, 20)
    assert e03[0] == Fraction(1, 12) and e03[3] == 1
    e33 = qs.eisenstein_E2(qs.LEGENDRE3, qs.LEGENDRE3, 20)
    assert e33[0] == 0 and e33[2] == -3


def test_eisenstein_third_case_constant():
    # psi1 trivial, psi2 nontrivial: constant term -B_{2, psi1 psi2}/4
    e = qs.eisenstein_E2(qs.CHI0, qs.quadratic_character(5), 5)
    assert e[0] == -bernoulli_oracle(2, qs.quadratic_character(5)) / 4


def test_eisenstein_match_mu():
    e02 = qs.eisenstein_E2(qs.CHI0, qs.CHI0_2, 500)
    e03 = qs.eisenstein_E2(qs.CHI0, qs.CHI0_3, 500)
    e33 = qs.eisenstein_E2(qs.LEGENDRE3, qs.LEGENDRE3, 500)
    for n in range(1, 501):
        f = divisor_functions(n)
        assert e02[n] == f.mu1 and e03[n] == f.mu2 and e33[n] == f.mu3


def test_hurwitz_slice():
    t = hurwitz_table(50)
    s = qs.hurwitz_slice(3, 1, t, 50)
    assert s[4] == Fraction(1, 2) and s[3] == 0 and s[7] == 1
    with pytest.raises(ValueError):
        qs.hurwitz_slice(3, 2, t, 50)  # -2 = 1 is a square mod 3
    with pytest.raises(ValueError):
        qs.hurwitz_slice(3, 1, t, 60)


def test_cuspform_values():
    a = qs.cuspform_aN(60)
    assert a[1] == 1 and a[7] == -4 and a[5] == 0 and a[49] == 9
    assert all(a[n] == 0 for n in range(2, 61) if n % 2 == 0 or n % 3 == 0)
    assert a[35] == a[5] * a[7]


def test_cuspform_hasse_and_supersingular():
    a = qs.cuspform_aN(500)
    for p in sieve_primes(500):
        if p < 5:
            continue
        assert a[p] ** 2 < 4 * p
        assert (a[p] == 0) == (p % 3 == 2)


def test_recursion_equals_binomial():
    for p in sieve_primes(50):
        if p < 5:
            continue
        ap = qs.frobenius_trace_x3p1(p)
        for e in range(6):
            assert qs.hecke_prime_power(ap, p, e) == qs.binomial_prime_power(ap, p, e)


@pytest.mark.parametrize("k,N,b", [(2, 36, 12), (2, 7, 1), (2, 1, 0), (12, 1, 1)])
def test_sturm_bound(k, N, b):
    assert qs.sturm_bound(k, N) == b


@pytest.fixture(scope="module")
def basis200():
    return qs.build_basis_36(200)


def test_basis_shape(basis200):
    assert len(basis200) == 12
    assert basis200[0][0] == Fraction(1, 24)
    assert basis200[11][7] == -4


def test_solve_identity(basis200):
    x = qs.solve_combination(basis200[3], basis200, 13)
    assert x == [1 if i == 3 else 0 for i in range(12)]


def test_solve_random_round_trip(basis200):
    rng = random.Random(7)
    for _ in range(3):
        coeffs = [Fraction(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(12)]
        target = qs.combine(coeffs, basis200)
        assert qs.solve_combination(target, basis200, 13) == coeffs


def test_solve_errors(basis200):
    bumped = QSeries(list(basis200[0].coeffs[:150]) + [basis200[0][150] + 1] + list(basis200[0].coeffs[151:]))
    with pytest.raises(qs.NotInSpanError) as err:
        qs.solve_combination(bumped, basis200, 13)
    assert err.value.index == 150
    with pytest.raises(qs.BasisDependentError):
        qs.solve_combination(basis200[0], basis200[:11] + [basis200[0]], 13)
    with pytest.raises(ValueError):
        qs.solve_combination(basis200[0], basis200, 11)


def test_starred_mod3_small():
    t = hurwitz_table(10)
    a = qs.cuspform_aN(10)
    assert qs.starred_sum(1, t) == 0 == qs.techprop_rhs(1, a[1])
    assert qs.starred_sum(4, t) == Fraction(1, 2) == qs.techprop_rhs(4, a[4])


def test_product_coefficients_are_starred_sums():
    t = hurwitz_table(300)
    prod = qs.slice_theta_product(t, 300)
    for n in range(1, 301):
        if n % 3:
            assert prod[n] == qs.starred_sum(n, t)
        else:
            assert prod[n] == 0
