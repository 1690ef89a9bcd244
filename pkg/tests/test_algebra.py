import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarends.algebra import (
    I,
    NEG_INF,
    ExactComplex,
    PoleOrderError,
    Polynomial,
    RationalFunction,
    RootFindingError,
    bigcomplex,
    context,
    poly_derivative,
    poly_gcd,
    poly_roots,
    residue,
    residue_at_infinity,
    square_free_decomposition,
    vanishing_order,
)

from _builders import Z, rand_poly

P = 60


# --- scalars -----------------------------------------------------------------

def test_exact_complex_canonical_form():
    x = ExactComplex(Fraction(2, 4), Fraction(-3, -6))
    assert x.re == Fraction(1, 2) and x.re.denominator == 2
    assert x.im == Fraction(1, 2)
    assert str(ExactComplex(Fraction(1, 3), -2)) == "1/3 - 2*I"


def test_exact_complex_field_ops():
    a = ExactComplex(Fraction(1, 3), 2)
    b = ExactComplex(-5, Fraction(7, 2))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert I * I == -1
    assert a.conjugate() * a == a.norm2()
    with pytest.raises(ZeroDivisionError):
        a / ExactComplex(0)


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50),
       st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_exact_complex_add_sub_roundtrip(a, b, c, d):
    x, y = ExactComplex(a, b), ExactComplex(c, d)
    assert (x + y) - y == x


def test_bigcomplex_records_precision():
    x = bigcomplex("1.5", 45)
    assert x.context.dps == 45
    y = bigcomplex(ExactComplex(Fraction(1, 3), 1), 80)
    assert abs(y.real - y.context.mpf(1) / 3) < mpmath.mpf(10) ** -75


# --- polynomials --------------------------------------------------------------

def test_zero_polynomial_degree_sentinel():
    assert Polynomial([]).degree == NEG_INF
    assert Polynomial([0, 0]).degree == NEG_INF
    assert Polynomial([1, 0, 0]).degree == 0


def test_derivative_examples():
    assert poly_derivative(Z ** 3) == Polynomial([0, 0, 3])
    assert poly_derivative(Polynomial([5])).is_zero()
    p = Polynomial([5, 0, 0, 0, 20, 0, 0, 0, -1])
    assert poly_derivative(p) == Polynomial([0, 0, 0, 80, 0, 0, 0, -8])


def test_vanishing_order_examples():
    assert vanishing_order(Z ** 3 - Z * 3 + 2, 1) == 2
    assert vanishing_order(Z ** 3, 0) == 3
    assert vanishing_order(Z ** 4 - 1, I) == 1
    with pytest.raises(ValueError):
        vanishing_order(Polynomial([]), 0)


def test_gcd_examples():
    one = Polynomial([1])
    assert poly_gcd(Z ** 2 - one, Z - one) == Z - one
    assert poly_gcd(Z ** 3, Z ** 2) == Z ** 2
    q = Z ** 4 - one
    assert poly_gcd(q * Z ** 2, q * (Z + one)) == q


def test_square_free_decomposition():
    p = (Z - 1) ** 3 * (Z + 2) * (Z * Z + 1) ** 2
    parts = dict((m, f) for f, m in square_free_decomposition(p))
    assert parts[1] == Z + 2
    assert parts[2] == Z * Z + 1
    assert parts[3] == Z - 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 6), st.integers(1, 5))
def test_exact_division_roundtrip(seed, dp, dq):
    rng = random.Random(seed)
    p, q = rand_poly(rng, dp), rand_poly(rng, dq)
    quo, rem = divmod(p * q, q)
    assert quo == p and rem.is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 5))
def test_vanishing_order_additive(seed, m):
    rng = random.Random(seed)
    p = rand_poly(rng, rng.randint(0, 5))
    z0 = ExactComplex(Fraction(rng.randint(-3, 3), rng.randint(1, 3)), rng.randint(-2, 2))
    assert vanishing_order(p * (Z - z0) ** m, z0) == vanishing_order(p, z0) + m


# --- roots --------------------------------------------------------------------

def test_roots_of_unity():
    roots = poly_roots(Z ** 4 - 1, P)
    assert [m for _, m in roots] == [1, 1, 1, 1]
    for r, _ in roots:
        assert abs(r ** 4 - 1) < mpmath.mpf(10) ** -(P - 10)


def test_double_root_at_zero():
    assert [(complex(r), m) for r, m in poly_roots(Z ** 2, P)] == [(0j, 2)]


def test_nine_simple_ends_for_k4():
    ctx = context(P)
    lam = -31 - 8 * ctx.sqrt(15)
    zn = Polynomial([0, 1], ctx)
    p = zn * (zn ** 4 - 1) * (zn ** 4 - lam)
    roots = poly_roots(p, P)
    assert len(roots) == 9 and all(m == 1 for _, m in roots)


def test_exact_root_at_zero_beside_small_root():
    # z (z - c) with c = 7/10 - 2i/5: the square-free factor has an exact zero constant term
    c = ExactComplex(Fraction(7, 10), Fraction(-2, 5))
    roots = poly_roots(Z * (Z - c), P)
    assert [m for _, m in roots] == [1, 1]
    assert min(abs(r) for r, _ in roots) == 0


def test_constant_polynomial_rejected():
    with pytest.raises(ValueError):
        poly_roots(Polynomial([3]), P)


def test_numeric_double_root_is_clustered():
    ctx = context(P)
    r0 = ctx.mpc(0.3, -1.1)
    p = Polynomial.from_roots([r0, r0, ctx.mpc(2)], ctx)
    roots = poly_roots(p, P)
    assert sorted(m for _, m in roots) == [1, 2]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_roots_from_roots_recovered(seed):
    rng = random.Random(seed)
    degree = rng.randint(1, 20)
    pts = [ExactComplex(Fraction(rng.randint(-40, 40), 7), Fraction(rng.randint(-40, 40), 11))
           for _ in range(degree)]
    p = Polynomial.from_roots(pts)
    found = [r for r, m in poly_roots(p, P) for _ in range(m)]
    tol = mpmath.mpf(10) ** -(P - 10)
    remaining = list(found)
    for x in pts:
        xm = x.to_mp(context(P))
        j = min(range(len(remaining)), key=lambda i: abs(remaining[i] - xm))
        assert abs(remaining[j] - xm) < tol * max(1, abs(xm))
        remaining.pop(j)


def test_root_finding_error_is_an_arithmetic_error():
    assert issubclass(RootFindingError, ArithmeticError)


# --- rational functions and residues --------------------------------------------

def test_rational_function_reduced_form():
    f = RationalFunction((Z - 1) * (Z + 2), (Z - 1) * Z)
    assert f.num == Z + 2 and f.den == Z
    assert RationalFunction(Z, Z) == RationalFunction(1)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Z, Polynomial([]))


def test_residue_examples():
    assert residue(RationalFunction(1, Z), 0) == 1
    assert residue(RationalFunction(Z * 3 + 2, Z ** 2), 0) == 3
    with pytest.raises(PoleOrderError):
        residue(RationalFunction(1, Z), 1)


def test_residue_numeric_simple_pole_formula():
    f = RationalFunction(Z * Z + 1, Z ** 3 - 2)
    ctx = context(P)
    z0 = ctx.cbrt(2)
    expected = (z0 ** 2 + 1) / (3 * z0 ** 2)
    assert abs(residue(f, z0, P) - expected) < mpmath.mpf(10) ** -(P - 10)


def test_residue_higher_order_pole_numeric():
    # (z^2 + 1)/(z - 1/2)^3: residue is half the second derivative of z^2 + 1, i.e. 1
    f = RationalFunction(Z * Z + 1, (Z - Fraction(1, 2)) ** 3)
    assert residue(f, Fraction(1, 2)) == 1
    assert abs(residue(f, bigcomplex(0.5, P), P) - 1) < mpmath.mpf(10) ** -30


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_residue_theorem(seed):
    rng = random.Random(seed)
    den = rand_poly(rng, rng.randint(1, 6))
    num = rand_poly(rng, rng.randint(0, den.degree - 1)) if den.degree > 1 else Polynomial([1])
    f = RationalFunction(num, den)
    if f.den.is_constant():
        return
    fn = f.to_numeric(context(P))
    parts = [bigcomplex(residue_at_infinity(f, P), P)]
    parts += [residue(fn, r, P) for r, _ in poly_roots(f.den, P)]
    scale = max(1, max(abs(x) for x in parts))
    assert abs(sum(parts)) < mpmath.mpf(10) ** -(P - 15) * scale


def test_residue_at_infinity_simple():
    # 1/z has residue 1 at 0 and -1 at infinity
    assert residue_at_infinity(RationalFunction(1, Z)) == -1
