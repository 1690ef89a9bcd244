"""Rational contact curves in CP^3 and their branch divisors.

Everything here is exact: lifts are 4-tuples of polynomials over Q(i) in the
affine chart ``z`` of CP^1, and the symplectic form is
``Omega = dx1^dx2 + dx3^dx4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import (
    ExactComplex,
    Polynomial,
    exact_rank,
    poly_gcd,
    poly_roots,
    vanishing_order,
)

__all__ = [
    "DegenerateCurveError",
    "ProjectiveCurve4",
    "BranchPoint",
    "BranchDivisor",
    "contact_curve",
    "contact_pairing",
    "verify_contact",
    "curve_degree",
    "nondegenerate",
    "wedge_polynomials",
    "branch_divisor",
    "cyclotomic",
]

PAIRS = tuple(combinations(range(4), 2))  # (0,1) ~ e1^e2, ..., (2,3) ~ e3^e4


class DegenerateCurveError(ValueError):
    """The requested curve is a point (or otherwise outside the family)."""


def _gcd_all(polys: Sequence[Polynomial]) -> Polynomial:
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g is None else poly_gcd(g, p)
        if g.is_constant():
            break
    if g is None:
        raise ValueError("all polynomials vanish")
    return g


@dataclass(frozen=True)
class ProjectiveCurve4:
    """A rational curve in CP^3 given by a reduced polynomial lift."""

    lift: tuple

    def __post_init__(self):
        lift = tuple(p if isinstance(p, Polynomial) else Polynomial([p]) for p in self.lift)
        if len(lift) != 4:
            raise ValueError("a lift into C^4 needs four components")
        if all(p.is_zero() for p in lift):
            raise ValueError("lift has no nonzero component")
        if not all(p.exact for p in lift):
            raise TypeError("contact curves are handled with exact coefficients")
        g = _gcd_all(lift)
        if not g.is_constant():
            lift = tuple(p.exact_div(g) for p in lift)
        object.__setattr__(self, "lift", lift)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.lift if not p.is_zero())

    def derivative(self) -> tuple:
        return tuple(p.derivative() for p in self.lift)

    def is_constant(self) -> bool:
        return all(p.is_zero() for p in wedge_polynomials(self))

    def __call__(self, z):
        return tuple(p(z) for p in self.lift)


def contact_curve(k: int) -> ProjectiveCurve4:
    """The degree-``2k`` contact curve of the family (``k`` not 0 or 3).

    Components: ``z^3``,
    ``((2k^3 - 9k^2 + 13k - 6) + (12(2k-3)/(k-3) + 3k(2k-3)) z^k - 6 z^(2k)) / 6``,
    ``(2k-3) z (k - 2 + 2 z^k) / 2`` and ``z^2 (k - 1 + z^k)``.
    """
    if k < 0:
        raise ValueError("k must be a natural number")
    if k in (0, 3):
        raise DegenerateCurveError(
            f"k={k} is excluded: the lift degenerates to a single point of CP^3"
        )
    q = Fraction
    zk = Polynomial.monomial(k)
    z = Polynomial.monomial(1)
    c0 = q(-6 + 13 * k - 9 * k**2 + 2 * k**3, 6)
    ck = (q(12 * (2 * k - 3), k - 3) + 3 * k * (2 * k - 3)) / 6
    psi2 = Polynomial([c0]) + zk * ck - Polynomial.monomial(2 * k)
    psi3 = z * (Polynomial([k - 2]) + zk * 2) * q(2 * k - 3, 2)
    psi4 = Polynomial.monomial(2) * (Polynomial([k - 1]) + zk)
    return ProjectiveCurve4((Polynomial.monomial(3), psi2, psi3, psi4))


def contact_pairing(u: Sequence[Polynomial], v: Sequence[Polynomial]) -> Polynomial:
    """``Omega(u ^ v) = u1 v2 - u2 v1 + u3 v4 - u4 v3``."""
    u = [p if isinstance(p, Polynomial) else Polynomial([p]) for p in u]
    v = [p if isinstance(p, Polynomial) else Polynomial([p]) for p in v]
    return u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]


def verify_contact(c: ProjectiveCurve4) -> tuple[bool, Polynomial]:
    """Exact contact test.  Returns ``(ok, Omega(psi ^ psi'))``; the certificate is zero iff ok."""
    cert = contact_pairing(c.lift, c.derivative())
    return cert.is_zero(), cert


def curve_degree(c: ProjectiveCurve4) -> int:
    """Degree of the curve: common degree of the homogenised lift after removing common factors.

    The stored lift is already reduced, and homogenising to the top degree
    introduces no common power of ``w``, so this is the top component degree.
    """
    return c.degree


def _homogeneous_coefficient_rows(c: ProjectiveCurve4):
    d = c.degree
    return [[p[i] for i in range(d + 1)] for p in c.lift]


def nondegenerate(c: ProjectiveCurve4) -> bool:
    """True iff the 4 x (d+1) coefficient matrix has full rank 4 (no hyperplane contains the curve)."""
    return exact_rank(_homogeneous_coefficient_rows(c)) == 4


def wedge_polynomials(c: ProjectiveCurve4) -> tuple:
    """Plücker coordinates ``p_ij = psi_i psi_j' - psi_j psi_i'`` for ``i < j`` (1-based order 12,13,14,23,24,34)."""
    lift, der = c.lift, c.derivative()
    return tuple(lift[i] * der[j] - lift[j] * der[i] for i, j in PAIRS)


@dataclass(frozen=True)
class BranchPoint:
    """A point of CP^1 with its branch order.

    ``value`` is an ExactComplex for exact rational points, an ``mpc`` for
    algebraic ones (``exact`` then tells whether the point was identified
    through an exact factor), or ``None`` for ``z = infinity``.
    ``root_of_unity`` holds ``j/n`` when the point is ``exp(2 pi i j/n)``.
    """

    value: object
    order: int
    exact: bool
    label: str
    root_of_unity: Fraction | None = None

    @property
    def is_infinity(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class BranchDivisor:
    entries: tuple

    @property
    def total(self) -> int:
        return sum(e.order for e in self.entries)

    def at_infinity(self) -> int:
        return sum(e.order for e in self.entries if e.is_infinity)

    def roots_of_unity(self) -> dict:
        """``{j/n: order}`` for entries that are roots of unity."""
        return {e.root_of_unity: e.order for e in self.entries if e.root_of_unity is not None}


def cyclotomic(n: int) -> Polynomial:
    """The n-th cyclotomic polynomial, by exact division of ``z^n - 1``."""
    p = Polynomial.monomial(n) - Polynomial([1])
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def _split_exact_factors(G: Polynomial, precision: int):
    entries = []
    m0 = vanishing_order(G, 0)
    if m0:
        entries.append(BranchPoint(ExactComplex(0), m0, True, "0"))
        G = G.exact_div(Polynomial.monomial(m0))
    # roots of unity through cyclotomic factors
    n = 1
    while G.degree >= 1 and n <= 4 * G.degree + 4:
        phi = cyclotomic(n)
        if phi.degree <= G.degree:
            mult = 0
            while True:
                q, r = divmod(G, phi)
                if r:
                    break
                G = q
                mult += 1
            if mult:
                for j in range(n):
                    if _gcd_int(j, n) == 1:
                        frac = Fraction(j, n)
                        entries.append(
                            BranchPoint(_root_of_unity_value(frac, precision), mult, True,
                                        f"exp(2*pi*i*{frac})", frac)
                        )
        n += 1
    # remaining rational-free part: roots located numerically
    if G.degree >= 1:
        for r, mult in poly_roots(G, precision):
            entries.append(BranchPoint(r, mult, False, "numeric"))
    return entries


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _root_of_unity_value(frac: Fraction, precision: int):
    from .algebra import context

    ctx = context(precision)
    if frac == 0:
        return ctx.mpc(1)
    return ctx.expjpi(2 * ctx.mpf(frac.numerator) / frac.denominator)


def branch_divisor(c: ProjectiveCurve4, precision: int = 60) -> BranchDivisor:
    """Branch points of the curve with orders.

    Affine branch points are the common zeros of the six wedge polynomials
    (order = multiplicity in their gcd).  The order at infinity is
    ``2(d - 1) - max deg p_ij``, the vanishing order of the homogeneous
    wedge at ``[1:0]``.
    """
    wedges = wedge_polynomials(c)
    if all(p.is_zero() for p in wedges):
        raise DegenerateCurveError("constant curve has no branch divisor")
    G = _gcd_all(wedges)
    entries = _split_exact_factors(G, precision) if G.degree >= 1 else []
    d = curve_degree(c)
    top = max(p.degree for p in wedges if not p.is_zero())
    inf_order = 2 * (d - 1) - top
    if inf_order:
        entries.append(BranchPoint(None, inf_order, True, "inf"))
    return BranchDivisor(tuple(entries))
