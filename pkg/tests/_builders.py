"""Random and classical test objects shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from planarends.algebra import I, ExactComplex, Polynomial, RationalFunction
from planarends.contact import ProjectiveCurve4
from planarends.klein import MeroMap3

Z = Polynomial([0, 1])


def rand_gauss_rational(rng: random.Random, size: int = 5, imag: bool = True) -> ExactComplex:
    re = Fraction(rng.randint(-size, size), rng.randint(1, 3))
    im = Fraction(rng.randint(-size, size), rng.randint(1, 3)) if imag else 0
    return ExactComplex(re, im)


def rand_poly(rng: random.Random, degree: int, imag: bool = True) -> Polynomial:
    coeffs = [rand_gauss_rational(rng, imag=imag) for _ in range(degree)]
    lead = rand_gauss_rational(rng, imag=imag)
    while not lead:
        lead = rand_gauss_rational(rng, imag=imag)
    return Polynomial(coeffs + [lead])


def integrate(p: Polynomial) -> Polynomial:
    """Antiderivative with zero constant term."""
    return Polynomial([0] + [c / (i + 1) for i, c in enumerate(p.coeffs)])


def random_gl4(rng: random.Random):
    from planarends.algebra import exact_rank

    while True:
        m = [[rand_gauss_rational(rng, 3, imag=False) for _ in range(4)] for _ in range(4)]
        if exact_rank(m) == 4:
            return m


def branched_rnc(rng: random.Random, e: int) -> ProjectiveCurve4:
    """``M (1, q, q^2, q^3)`` for a random degree-``e`` polynomial ``q`` and random invertible ``M``.

    Degree ``3e``; branched exactly where ``q`` is (total ``2(e-1)`` including infinity).
    """
    q = rand_poly(rng, e, imag=False)
    base = [Polynomial([1]), q, q * q, q * q * q]
    m = random_gl4(rng)
    lift = []
    for row in m:
        acc = Polynomial([])
        for c, b in zip(row, base):
            acc = acc + b * c
        lift.append(acc)
    return ProjectiveCurve4(tuple(lift))


def random_contact_curve(rng: random.Random, da: int = 2, db: int = 3) -> ProjectiveCurve4:
    """``(1, x2, a, b)`` with ``x2' = a' b - a b'``, so ``Omega(psi ^ psi') = 0`` exactly."""
    a, b = rand_poly(rng, da), rand_poly(rng, db)
    x2 = integrate(a.derivative() * b - a * b.derivative())
    return ProjectiveCurve4((Polynomial([1]), x2, a, b))


def enneper() -> MeroMap3:
    """``(z - z^3/3, i (z + z^3/3), z^2)``: Gauss map ``g = z``, ``K = -4 / (1 + |z|^2)^4``."""
    third = Fraction(1, 3)
    return MeroMap3((
        RationalFunction(Z - Z ** 3 * third),
        RationalFunction((Z + Z ** 3 * third) * I),
        RationalFunction(Z ** 2),
    ))


def null_line() -> MeroMap3:
    return MeroMap3((RationalFunction(Z), RationalFunction(Z * I), RationalFunction(Polynomial([]))))


def non_null_line() -> MeroMap3:
    return MeroMap3((RationalFunction(Z), RationalFunction(Z), RationalFunction(Polynomial([]))))
