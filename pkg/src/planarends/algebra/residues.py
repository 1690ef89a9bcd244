"""Residues of rational functions at finite poles and at infinity."""

from __future__ import annotations

from numbers import Rational

from .numeric import context, default_precision, is_numeric_scalar, to_context
from .polynomial import Polynomial
from .rational import RationalFunction
from .scalars import ExactComplex, as_exact

__all__ = ["PoleOrderError", "residue", "residue_at_infinity", "laurent_head", "pole_order"]


class PoleOrderError(ValueError):
    """``z0`` is not a pole, or its order cannot be decided at the working precision."""


def _series_quotient(num, den, n_terms, zero):
    """First ``n_terms`` Taylor coefficients of ``num/den`` (``den[0] != 0``)."""
    q = []
    h0 = den[0]
    for j in range(n_terms):
        acc = num[j] if j < len(num) else zero
        for l in range(1, min(j, len(den) - 1) + 1):
            acc = acc - den[l] * q[j - l]
        q.append(acc / h0)
    return q


def pole_order(den: Polynomial, z0, precision: int | None = None) -> int:
    """Vanishing order of ``den`` at ``z0``.

    Exact inputs give the exact order.  Numerically a Taylor coefficient of
    ``den`` at ``z0`` counts as zero when it is below ``10**(-P/2)`` times its
    rounding scale and as nonzero above ``10**(-P/4)``; anything in between
    raises :class:`PoleOrderError`.
    """
    if den.is_zero():
        raise PoleOrderError("zero denominator")
    if den.exact and isinstance(z0, (ExactComplex, Rational)):
        t = den.taylor(as_exact(z0)).coeffs
        return next(j for j, c in enumerate(t) if c)
    ctx, t, scales = _numeric_taylor(den, z0, precision)
    zero_tol = ctx.mpf(10) ** (-(ctx.dps / 2))
    nonzero_tol = ctx.mpf(10) ** (-(ctx.dps / 4))
    for j, c in enumerate(t):
        rel = abs(c) / scales[j] if scales[j] else 0
        if rel < zero_tol:
            continue
        if rel < nonzero_tol:
            raise PoleOrderError(
                f"ambiguous vanishing of Taylor coefficient {j}: relative size {ctx.nstr(rel, 5)}"
            )
        return j
    raise PoleOrderError("denominator vanishes identically to working precision")


def _numeric_taylor(p: Polynomial, z0, precision):
    if precision is None:
        precision = z0.context.dps if is_numeric_scalar(z0) else (p.ctx.dps if p.ctx else default_precision())
    ctx = context(precision)
    z0 = to_context(z0, ctx)
    pn = p.to_numeric(ctx)
    t = list(pn.taylor(z0).coeffs)
    t += [ctx.mpc(0)] * (len(pn.coeffs) - len(t))
    # Taylor coefficients of sum |c_i| z^i at |z0| bound the rounding in t
    scale_poly = Polynomial._raw([ctx.mpc(abs(c)) for c in pn.coeffs], ctx)
    scales = [abs(c) for c in scale_poly.taylor(ctx.mpc(abs(z0))).coeffs]
    scales += [ctx.mpf(0)] * (len(t) - len(scales))
    return ctx, t, scales


def laurent_head(f: RationalFunction, z0, precision: int | None = None):
    """``(m, coeffs)``: pole order ``m`` of ``den`` at ``z0`` and the Laurent
    coefficients ``c_{-m}, ..., c_{-1}`` of ``f`` there."""
    exact = f.exact and isinstance(z0, (ExactComplex, Rational))
    if exact:
        z0 = as_exact(z0)
        m = pole_order(f.den, z0)
        nt = list(f.num.taylor(z0).coeffs)
        dt = list(f.den.taylor(z0).coeffs)
        zero = ExactComplex(0)
    else:
        m = pole_order(f.den, z0, precision)
        ctx, dt, _ = _numeric_taylor(f.den, z0, precision)
        _, nt, _ = _numeric_taylor(f.num, z0, ctx.dps) if not f.num.is_zero() else (ctx, [], [])
        zero = ctx.mpc(0)
    if m == 0:
        return 0, []
    h = dt[m:]
    return m, _series_quotient(nt, h, m, zero)


def residue(f: RationalFunction, z0, precision: int | None = None):
    """Residue of ``f`` at the finite pole ``z0``.

    With an exact ``f`` and an exact point the result is an :class:`ExactComplex`.
    Otherwise the computation runs at ``precision`` digits (default: the
    precision of ``z0``) and returns an ``mpc``.  For a simple pole this is
    ``num(z0)/den'(z0)``; in general the ``(z-z0)^-1`` coefficient of the
    Laurent series, obtained by dividing Taylor series.

    Raises
    ------
    PoleOrderError
        If ``den(z0) != 0`` or if the order of vanishing is ambiguous.
    """
    if not isinstance(f, RationalFunction):
        f = RationalFunction(f)
    m, head = laurent_head(f, z0, precision)
    if m == 0:
        raise PoleOrderError("point is not a pole: the denominator does not vanish there")
    return head[-1]


def residue_at_infinity(f: RationalFunction, precision: int | None = None):
    """``res_inf f = -res_{w=0} f(1/w)/w**2``."""
    if not isinstance(f, RationalFunction):
        f = RationalFunction(f)
    if f.is_zero():
        return ExactComplex(0) if f.exact else context(precision or f.ctx.dps).mpc(0)
    dn, dd = f.num.degree, f.den.degree
    j = dn - dd + 1
    if f.exact:
        zero = ExactComplex(0)
        num, den = f.num, f.den
    else:
        ctx = context(precision or f.ctx.dps)
        zero = ctx.mpc(0)
        num, den = f.num.to_numeric(ctx), f.den.to_numeric(ctx)
    if j < 0:
        return zero
    q = _series_quotient(list(num.reversed().coeffs), list(den.reversed().coeffs), j + 1, zero)
    return -q[j]
