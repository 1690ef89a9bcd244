"""Univariate rational functions ``num/den``.

Exact rational functions are kept reduced (``gcd(num, den) = 1``, monic
denominator) after every operation.  Numeric ones (coefficients in an mpmath
context) are stored as built; :meth:`RationalFunction.cancel_numeric` removes
common roots explicitly when needed.
"""

from __future__ import annotations

from numbers import Rational

from .numeric import is_numeric_scalar
from .polynomial import Polynomial, poly_gcd
from .scalars import ExactComplex

__all__ = ["RationalFunction"]


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial([x])


class RationalFunction:
    """Quotient of two polynomials with a nonzero denominator."""

    __slots__ = ("_num", "_den")

    def __init__(self, num, den=None, reduce: bool = True):
        num = _as_poly(num)
        den = Polynomial([1]) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.ctx is not den.ctx:
            co = num._coerce(den)
            num, den = co[0], co[1]
        if num.exact and reduce:
            num, den = _reduce(num, den)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def num(self) -> Polynomial:
        return self._num

    @property
    def den(self) -> Polynomial:
        return self._den

    @property
    def exact(self) -> bool:
        return self._num.exact

    @property
    def ctx(self):
        return self._num.ctx

    @property
    def degree(self) -> int:
        """Degree as a map of CP^1 (``max(deg num, deg den)``); meaningful once reduced."""
        if self._num.is_zero():
            return 0
        return max(self._num.degree, self._den.degree)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_polynomial(self) -> bool:
        return self._den.is_constant()

    def to_numeric(self, ctx) -> "RationalFunction":
        return RationalFunction(self._num.to_numeric(ctx), self._den.to_numeric(ctx), reduce=False)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (ExactComplex, Rational)) or is_numeric_scalar(other):
            return RationalFunction(Polynomial([other]))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return RationalFunction(self._num + o._num, self._den)
        if self.exact and o.exact:
            # add over the lcm of the denominators to keep sizes down
            g = poly_gcd(self._den, o._den)
            a = o._den.exact_div(g)
            b = self._den.exact_div(g)
            return RationalFunction(self._num * a + o._num * b, self._den * a)
        # numeric: if one denominator divides the other, use the larger one
        q = _numeric_quotient(o._den, self._den)
        if q is not None:
            return RationalFunction(self._num * q + o._num, o._den)
        q = _numeric_quotient(self._den, o._den)
        if q is not None:
            return RationalFunction(self._num + o._num * q, self._den)
        return RationalFunction(self._num * o._den + o._num * self._den, self._den * o._den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self._num, self._den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.exact and o.exact:
            # cross-cancel before multiplying
            g1 = poly_gcd(self._num, o._den) if self._num else Polynomial([1])
            g2 = poly_gcd(o._num, self._den) if o._num else Polynomial([1])
            num = self._num.exact_div(g1) * o._num.exact_div(g2)
            den = self._den.exact_div(g2) * o._den.exact_div(g1)
            return RationalFunction(num, den, reduce=False)._normalised()
        return RationalFunction(self._num * o._num, self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RationalFunction(o._den, o._num, reduce=False)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RationalFunction(self._den, self._num) ** (-n)
        return RationalFunction(self._num ** n, self._den ** n, reduce=False)._normalised()

    def _normalised(self):
        if self.exact:
            lc = self._den.lc
            if lc != 1:
                return RationalFunction(self._num / lc, self._den / lc, reduce=False)
        return self

    def derivative(self) -> "RationalFunction":
        n, d = self._num, self._den
        if d.is_constant():
            return RationalFunction(n.derivative(), d, reduce=False)
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x):
        return self._num(x) / self._den(x)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.exact and o.exact:
            return self._num == o._num and self._den == o._den
        return (self._num * o._den - o._num * self._den).is_zero()

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f"RationalFunction({self._num!r} / {self._den!r})"

    def cancel_numeric(self, tol=None) -> "RationalFunction":
        """Drop numerator/denominator root pairs that agree to within ``tol``.

        Only for numeric rational functions; exact ones are already reduced.
        """
        if self.exact:
            return self
        from .roots import poly_roots

        ctx = self.ctx
        if tol is None:
            tol = ctx.mpf(10) ** (-(ctx.dps // 3))
        if self._num.is_constant() or self._den.is_constant():
            return self
        zn = [r for r, m in poly_roots(self._num, ctx.dps) for _ in range(m)]
        zd = [r for r, m in poly_roots(self._den, ctx.dps) for _ in range(m)]
        keep_n = []
        for r in zn:
            match = None
            for j, s in enumerate(zd):
                if abs(r - s) <= tol * max(1, abs(r)):
                    match = j
                    break
            if match is None:
                keep_n.append(r)
            else:
                zd.pop(match)
        num = Polynomial.from_roots(keep_n, ctx) * self._num.lc
        den = Polynomial.from_roots(zd, ctx) * self._den.lc
        return RationalFunction(num, den, reduce=False)


def _reduce(num: Polynomial, den: Polynomial):
    if num.is_zero():
        return num, Polynomial([1])
    if not den.is_constant() and not num.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    lc = den.lc
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return num, den


def _numeric_quotient(a: Polynomial, b: Polynomial):
    """``a / b`` when ``b`` divides ``a`` up to rounding, else None."""
    if b.is_constant() or a.degree < b.degree:
        return None
    ctx = a.ctx if not a.exact else b.ctx
    q, r = divmod(a, b)
    scale = max(abs(c) for c in a.coeffs)
    if not r.coeffs or max(abs(c) for c in r.coeffs) <= scale * ctx.mpf(10) ** (-(ctx.dps // 2)):
        return q
    return None
