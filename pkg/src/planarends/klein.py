"""Klein correspondence: contact curves in CP^3 -> null curves in Q^3 -> null curves in C^3.

Conventions
-----------
* Bivectors ``eta = sum p_ij e_i ^ e_j`` are stored by their Plücker
  coordinates ``(p12, p13, p14, p23, p24, p34)``.
* ``Omega(eta) = p12 + p34``; ``W`` is its kernel.
* ``q(eta) = p12 p34 - p13 p24 + p14 p23`` so that ``eta ^ eta = 2 q(eta) e1^e2^e3^e4``.
* ``<w, w> = -2 w0 w4 + w1^2 + w2^2 + w3^2`` on C^5, and
  ``Psi(F) = [ (F.F)/2, F1, F2, F3, 1 ]``.

The isometry ``(W, q) -> (C^5, <,>)`` is fixed once as a matrix with
Gaussian-rational entries (:data:`ISOMETRY`), so the whole pipeline is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    I,
    ExactComplex,
    Polynomial,
    RationalFunction,
    context,
    default_precision,
    exact_rank,
    poly_gcd,
    poly_lcm,
    poly_roots,
    square_free_decomposition,
)
from .contact import (
    DegenerateCurveError,
    ProjectiveCurve4,
    branch_divisor,
    contact_curve,
    curve_degree,
    verify_contact,
    wedge_polynomials,
)

__all__ = [
    "CertificationError",
    "Pluecker6",
    "NullCurve5",
    "MeroMap3",
    "Pole",
    "ISOMETRY",
    "ROTATION",
    "W_BASIS",
    "second_associated",
    "omega_of",
    "quadric_form",
    "inner",
    "identify_W_with_C5",
    "isometry_self_test",
    "psi_embed",
    "psi_invert",
    "verify_null_C3",
    "pole_structure",
    "paper_F",
    "pipeline",
    "certify_pipeline",
]

_half = Fraction(1, 2)


class CertificationError(ArithmeticError):
    """An exact certificate that should hold does not."""


def _gcd_all(polys):
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g is None else poly_gcd(g, p)
        if g.is_constant():
            break
    return g


def _strip_common(polys):
    g = _gcd_all(polys)
    if g is None or g.is_constant():
        return tuple(polys)
    return tuple(p.exact_div(g) for p in polys)


@dataclass(frozen=True)
class Pluecker6:
    p12: Polynomial
    p13: Polynomial
    p14: Polynomial
    p23: Polynomial
    p24: Polynomial
    p34: Polynomial

    @classmethod
    def from_coords(cls, coords) -> "Pluecker6":
        return cls(*(c if isinstance(c, Polynomial) else Polynomial([c]) for c in coords))

    @property
    def coords(self) -> tuple:
        return (self.p12, self.p13, self.p14, self.p23, self.p24, self.p34)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.coords if not p.is_zero())

    def plucker_relation(self) -> Polynomial:
        return self.p12 * self.p34 - self.p13 * self.p24 + self.p14 * self.p23

    def reduced(self) -> "Pluecker6":
        return Pluecker6(*_strip_common(self.coords))


def second_associated(c: ProjectiveCurve4) -> Pluecker6:
    """Tangent-line curve ``psi ^ psi'`` with the common factor of its six minors removed."""
    wedges = wedge_polynomials(c)
    if all(p.is_zero() for p in wedges):
        raise DegenerateCurveError("constant curve has no second associated curve")
    return Pluecker6(*wedges).reduced()


def omega_of(eta: Pluecker6) -> Polynomial:
    return eta.p12 + eta.p34


def quadric_form(eta: Pluecker6) -> Polynomial:
    return eta.plucker_relation()


def inner(u: Sequence, v: Sequence):
    """``<u, v> = -u0 v4 - u4 v0 + u1 v1 + u2 v2 + u3 v3``."""
    return -u[0] * v[4] - u[4] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]


# rows: w0..w4; columns: p12, p13, p14, p23, p24, p34
ISOMETRY = (
    (0, _half, 0, 0, 0, 0),
    (0, 0, _half, _half, 0, 0),
    (I, 0, 0, 0, 0, 0),
    (0, 0, I * _half, -I * _half, 0, 0),
    (0, 0, 0, 0, 1, 0),
)
"""``w = (p13/2, (p14+p23)/2, i p12, i (p14-p23)/2, p24)``; on ``W`` (``p34 = -p12``)
this gives ``<w,w> = -p13 p24 + p14 p23 - p12^2 = q``."""

ROTATION = (
    (0, 0, 0, 0, 1),
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (1, 0, 0, 0, 0),
)
"""Fallback isometry of C^5 (swap of w0 and w4), used when ``w4`` vanishes identically."""

W_BASIS = (
    (0, 1, 0, 0, 0, 0),   # e1^e3
    (1, 0, 0, 0, 0, -1),  # e1^e2 - e3^e4
    (0, 0, 1, 0, 0, 0),   # e1^e4
    (0, 0, 0, 1, 0, 0),   # e2^e3
    (0, 0, 0, 0, 1, 0),   # e2^e4
)


def _apply(matrix, vec):
    return tuple(
        sum((v * c for c, v in zip(row, vec) if c), Polynomial([]) if isinstance(vec[0], Polynomial) else 0)
        for row in matrix
    )


def _q_bilinear(x, y):
    def q(v):
        p12, p13, p14, p23, p24, p34 = v
        return p12 * p34 - p13 * p24 + p14 * p23

    s = tuple(a + b for a, b in zip(x, y))
    return (ExactComplex(q(s)) - q(x) - q(y)) * _half


def isometry_self_test() -> tuple[bool, list, list]:
    """Compare the Gram matrix of ``q`` on :data:`W_BASIS` with that of ``<,>`` on its image."""
    basis = [tuple(ExactComplex(c) for c in b) for b in W_BASIS]
    images = [tuple(ExactComplex(c) for c in _apply(ISOMETRY, b)) for b in basis]
    gram_w = [[_q_bilinear(x, y) for y in basis] for x in basis]
    gram_c5 = [[ExactComplex(inner(u, v)) for v in images] for u in images]
    rotated = [tuple(ExactComplex(c) for c in _apply(ROTATION, u)) for u in images]
    gram_rot = [[ExactComplex(inner(u, v)) for v in rotated] for u in rotated]
    ok = gram_w == gram_c5 == gram_rot and exact_rank(gram_c5) == 5
    return ok, gram_w, gram_c5


@dataclass(frozen=True)
class NullCurve5:
    """Polynomial lift ``(w0, ..., w4)`` of a curve in the quadric of C^5."""

    w: tuple
    reduced: bool = False

    def __post_init__(self):
        w = tuple(p if isinstance(p, Polynomial) else Polynomial([p]) for p in self.w)
        if len(w) != 5:
            raise ValueError("need five components")
        object.__setattr__(self, "w", w)

    def reduce(self) -> "NullCurve5":
        if self.reduced or not all(p.exact for p in self.w):
            return self
        return NullCurve5(_strip_common(self.w), reduced=True)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.w if not p.is_zero())

    def norm(self) -> Polynomial:
        return inner(self.w, self.w)

    def derivative_norm(self) -> Polynomial:
        d = tuple(p.derivative() for p in self.w)
        return inner(d, d)

    def is_null(self) -> bool:
        return self.norm().is_zero() and self.derivative_norm().is_zero()

    def coefficient_rank(self) -> int:
        d = self.degree
        return exact_rank([[p[i] for i in range(d + 1)] for p in self.w])


def identify_W_with_C5(eta: Pluecker6, rotate: bool = False) -> NullCurve5:
    """Apply the fixed isometry ``W -> C^5`` (optionally followed by :data:`ROTATION`)."""
    if not omega_of(eta).is_zero():
        raise ValueError("bivector curve does not lie in W: Omega(eta) != 0")
    w = _apply(ISOMETRY, eta.coords)
    if rotate:
        w = _apply(ROTATION, w)
    return NullCurve5(w).reduce()


@dataclass(frozen=True)
class MeroMap3:
    """Meromorphic map ``F: CP^1 -> C^3`` as three rational functions."""

    F: tuple
    planar_ends: bool = False

    def __post_init__(self):
        F = tuple(f if isinstance(f, RationalFunction) else RationalFunction(f) for f in self.F)
        if len(F) != 3:
            raise ValueError("need three components")
        object.__setattr__(self, "F", F)

    @property
    def exact(self) -> bool:
        return all(f.exact for f in self.F)

    @property
    def ctx(self):
        for f in self.F:
            if f.ctx is not None:
                return f.ctx
        return None

    def __call__(self, z):
        return tuple(f(z) for f in self.F)

    def derivative(self) -> "MeroMap3":
        return MeroMap3(tuple(f.derivative() for f in self.F))


@dataclass(frozen=True)
class Pole:
    point: object  # ExactComplex/mpc, or None for infinity
    order: int
    exact_factor: Polynomial | None = field(default=None, compare=False)


def _pole_order_at_infinity(F: MeroMap3) -> int:
    return max((f.num.degree - f.den.degree for f in F.F if not f.is_zero()), default=0)


def pole_structure(F: MeroMap3, precision: int | None = None) -> list[Pole]:
    """All poles of ``F`` on CP^1 with their orders (max over components).

    Exact maps: finite poles come from the square-free decomposition of the
    lcm of the reduced denominators, so orders are exact; points are located
    numerically.  Numeric maps: common roots are cancelled, then denominator
    roots of all components are merged.
    """
    precision = precision or (F.ctx.dps if F.ctx is not None else default_precision())
    poles: list[Pole] = []
    if F.exact:
        L = Polynomial([1])
        for f in F.F:
            if not f.den.is_constant():
                L = poly_lcm(L, f.den)
        if not L.is_constant():
            for factor, mult in square_free_decomposition(L):
                for r, _ in poly_roots(factor, precision):
                    poles.append(Pole(r, mult, factor))
    else:
        ctx = context(precision)
        tol = ctx.mpf(10) ** (-(precision // 3))
        merged: list[list] = []
        for f in F.F:
            g = f.cancel_numeric()
            if g.den.is_constant() or g.is_zero():
                continue
            for r, m in poly_roots(g.den, precision):
                for entry in merged:
                    if abs(entry[0] - r) <= tol * max(1, abs(r)):
                        entry[1] = max(entry[1], m)
                        break
                else:
                    merged.append([r, m])
        poles = [Pole(r, m) for r, m in merged]
    inf = _pole_order_at_infinity(F)
    if inf > 0:
        poles.append(Pole(None, inf))
    return poles


def psi_embed(F: MeroMap3) -> NullCurve5:
    """Polynomial lift of ``Psi o F = [(F.F)/2, F1, F2, F3, 1]``, common factors removed."""
    comps = [(F.F[0] * F.F[0] + F.F[1] * F.F[1] + F.F[2] * F.F[2]) * _half_for(F), *F.F,
             RationalFunction(Polynomial([1]))]
    if F.exact:
        L = Polynomial([1])
        for r in comps:
            if not r.den.is_constant():
                L = poly_lcm(L, r.den)
        lift = [r.num * L.exact_div(r.den) for r in comps]
        return NullCurve5(_strip_common(lift), reduced=True)
    ctx = F.ctx
    comps = [r.cancel_numeric() for r in comps]
    roots: list[list] = []
    tol = ctx.mpf(10) ** (-(ctx.dps // 3))
    for r in comps:
        if r.den.is_constant():
            continue
        for x, m in poly_roots(r.den, ctx.dps):
            for entry in roots:
                if abs(entry[0] - x) <= tol * max(1, abs(x)):
                    entry[1] = max(entry[1], m)
                    break
            else:
                roots.append([x, m])
    L = Polynomial.from_roots([x for x, m in roots for _ in range(m)], ctx)
    lift = [r.num * (L // r.den) for r in comps]
    return NullCurve5(tuple(lift))


def _half_for(F: MeroMap3):
    return _half if F.exact else F.ctx.mpf(1) / 2


def psi_invert(w: NullCurve5) -> MeroMap3:
    """``F = (w1/w4, w2/w4, w3/w4)``; checks ``w0/w4 = (F.F)/2``."""
    w0, w1, w2, w3, w4 = w.w
    if w4.is_zero():
        raise ValueError("w4 vanishes identically: the curve lies in the hyperplane at infinity")
    F = MeroMap3(tuple(RationalFunction(x, w4) for x in (w1, w2, w3)))
    if all(p.exact for p in w.w):
        lhs = RationalFunction(w0, w4)
        rhs = (F.F[0] * F.F[0] + F.F[1] * F.F[1] + F.F[2] * F.F[2]) * _half
        if lhs != rhs:
            raise CertificationError("w0/w4 != (F.F)/2: input is not on the quadric")
    return F


def verify_null_C3(F: MeroMap3, samples: int = 100, seed: int = 0) -> tuple[bool, object]:
    """Certify ``(F', F') = 0``.

    Exact maps: returns ``(ok, certificate)`` where the certificate is the
    rational function ``F1'^2 + F2'^2 + F3'^2`` (zero iff ok).  Numeric maps:
    evaluates the relative residual ``|F'.F'| / |F'|^2`` at ``samples`` seeded
    random points and returns ``(max < 10**-(P-20), max)``.
    """
    if F.exact:
        D = Polynomial([1])
        for f in F.F:
            if not f.den.is_constant():
                D = poly_lcm(D, f.den)
        a = [f.num * D.exact_div(f.den) for f in F.F]
        dD = D.derivative()
        terms = [x.derivative() * D - x * dD for x in a]
        total = terms[0] * terms[0] + terms[1] * terms[1] + terms[2] * terms[2]
        return total.is_zero(), RationalFunction(total, D ** 4)
    ctx = F.ctx
    dF = F.derivative()
    rng = random.Random(seed)
    worst = ctx.mpf(0)
    for _ in range(samples):
        z = ctx.mpc(rng.uniform(-2, 2), rng.uniform(-2, 2))
        vals = dF(z)
        num = abs(vals[0] ** 2 + vals[1] ** 2 + vals[2] ** 2)
        den = abs(vals[0]) ** 2 + abs(vals[1]) ** 2 + abs(vals[2]) ** 2
        worst = max(worst, num / den)
    return worst < ctx.mpf(10) ** (-(ctx.dps - 20)), worst


def paper_F(k: int, variant: str = "section2", precision: int | None = None) -> MeroMap3:
    """Closed-form null curves with ``2k+1`` simple poles.

    ``variant="section2"``: the exact family for ``k >= 4`` belonging to the
    contact curves.  ``variant="pengxiao"``: the ``k = 4`` map with coefficients
    in ``Q(sqrt 15, i)``, evaluated at ``precision`` digits.
    """
    if variant == "pengxiao":
        if k != 4:
            raise ValueError("the radical-coefficient closed form exists only for k = 4")
        ctx = context(precision or default_precision())
        s15 = ctx.sqrt(15)
        iu = ctx.mpc(0, 1)
        z = Polynomial([0, 1], ctx)
        z4 = z ** 4
        m = 31 + 8 * s15
        den = z * (z4 - 1) * (z4 + m) * 45
        n1 = z ** 2 * (z4 * 5 - 15 - 4 * s15) * (6 * iu)
        n2 = Polynomial([5 * m], ctx) - z4 * (z4 * 15 + 153 + 40 * s15) * 3
        n3 = (Polynomial([5 * m], ctx) - z4 * (z4 * 15 + 147 + 40 * s15) * 3) * iu
        return MeroMap3(tuple(RationalFunction(n, den, reduce=False) for n in (n1, n2, n3)), planar_ends=True)
    if variant != "section2":
        raise ValueError(f"unknown variant {variant!r}")
    if k <= 3:
        raise ValueError("the closed form needs k >= 4")
    zk = Polynomial.monomial(k)
    z2k = Polynomial.monomial(2 * k)
    z4 = Polynomial.monomial(4)
    z = Polynomial.monomial(1)
    den = z * (Polynomial([(k - 3) * (k - 1) ** 2 * (2 * k - 3)])
               - zk * (6 * (k - 1) * (2 * k - 3)) - z2k * (3 * (k - 3))) * 4
    c = (6 - 7 * k + 2 * k * k) ** 2
    n1 = Polynomial.monomial(2) * (Polynomial([2 - 3 * k + k * k]) - zk * 2) * (-12 * I * (k - 3) * (2 * k - 3))
    n2 = (zk * (-12 * (3 - 2 * k) ** 2 * (k - 2)) - z2k * (12 * (k - 3) * (2 * k - 3))
          + (Polynomial([c]) - z4 * 12) * (k - 3)) * (k - 1)
    n3 = (zk * (12 * (3 - 2 * k) ** 2 * (k - 2)) + z2k * (12 * (k - 3) * (2 * k - 3))
          + (Polynomial([-c]) - z4 * 12) * (k - 3)) * (I * (k - 1))
    return MeroMap3(tuple(RationalFunction(n, den) for n in (n1, n2, n3)), planar_ends=True)


def certify_pipeline(k: int, precision: int | None = None) -> tuple[MeroMap3, dict]:
    """Run contact curve -> tangent lines -> C^5 -> C^3 and collect the certificate record."""
    if k < 4:
        if k in (0, 3):
            raise DegenerateCurveError(f"k={k} is excluded: the lift degenerates to a point of CP^3")
        raise ValueError("the pipeline needs k >= 4")
    c = contact_curve(k)
    contact_ok, _ = verify_contact(c)
    d = curve_degree(c)
    beta = branch_divisor(c, precision or default_precision()).total
    eta = second_associated(c)
    plucker_ok = quadric_form(eta).is_zero()
    omega_ok = omega_of(eta).is_zero()
    rotated = False
    w = identify_W_with_C5(eta)
    if w.w[4].is_zero():
        w = identify_W_with_C5(eta, rotate=True)
        rotated = True
    F = psi_invert(w)
    null_ok, _ = verify_null_C3(F)
    poles = pole_structure(F, precision)
    simple = all(p.order == 1 for p in poles)
    embedded = psi_embed(F)
    record = {
        "k": k,
        "contact": contact_ok,
        "degree": d,
        "branch_total": beta,
        "second_associated_degree": eta.degree,
        "degree_law": eta.degree == 2 * d - 2 - beta,
        "plucker_ok": plucker_ok,
        "omega_ok": omega_ok,
        "quadric_null": w.is_null(),
        "null_ok": null_ok,
        "pole_count": len(poles),
        "simple_poles": simple,
        "embedded_degree": embedded.degree,
        "embedded_rank": embedded.coefficient_rank(),
        "rotated": rotated,
    }
    record["certified"] = bool(
        contact_ok and plucker_ok and omega_ok and null_ok and record["quadric_null"] and simple
        and record["degree_law"] and len(poles) == 2 * k + 1
        and embedded.degree == 2 * k + 1 and record["embedded_rank"] == 5
    )
    return MeroMap3(F.F, planar_ends=record["certified"]), record


def pipeline(k: int, precision: int | None = None) -> MeroMap3:
    """Null curve with ``2k+1`` simple poles obtained from the contact curve of the family."""
    F, record = certify_pipeline(k, precision)
    if not record["certified"]:
        failed = [key for key, v in record.items() if v is False]
        raise CertificationError(f"pipeline(k={k}) failed certification: {failed}")
    return F
