"""Dense univariate polynomials over Q(i) or over a fixed-precision complex field.

Coefficients are stored lowest degree first.  A polynomial is *exact* when all
coefficients are :class:`ExactComplex`; otherwise every coefficient is an
``mpc`` of a single mpmath context (see :mod:`planarends.algebra.numeric`).
Mixing the two promotes the exact operand.
"""

from __future__ import annotations

from numbers import Rational

from .numeric import is_numeric_scalar, to_context
from .scalars import ExactComplex, as_exact

__all__ = [
    "NEG_INF",
    "Polynomial",
    "poly_derivative",
    "vanishing_order",
    "poly_gcd",
    "poly_lcm",
    "square_free_decomposition",
    "Z",
]

NEG_INF = float("-inf")

_ZERO = ExactComplex(0)
_ONE = ExactComplex(1)


def _pick_context(a, b):
    if a is None:
        return b
    if b is None or a is b:
        return a
    return a if a.dps <= b.dps else b


class Polynomial:
    """Immutable dense polynomial ``c[0] + c[1] z + ... + c[n] z**n``.

    Trailing zero coefficients are stripped, so the leading coefficient is
    nonzero unless the polynomial is zero; ``Polynomial([]).degree`` is
    ``-inf``.
    """

    __slots__ = ("_c", "_ctx")

    def __init__(self, coeffs=(), ctx=None):
        coeffs = list(coeffs)
        if ctx is None:
            for c in coeffs:
                if is_numeric_scalar(c):
                    ctx = c.context
                    break
                if not isinstance(c, (ExactComplex, Rational)):
                    raise TypeError(f"unsupported coefficient {c!r}; use ExactComplex or bigcomplex()")
        if ctx is None:
            coeffs = [as_exact(c) for c in coeffs]
        else:
            coeffs = [to_context(c, ctx) for c in coeffs]
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        object.__setattr__(self, "_c", tuple(coeffs[:n]))
        object.__setattr__(self, "_ctx", ctx)

    @classmethod
    def _raw(cls, coeffs, ctx):
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        obj = object.__new__(cls)
        object.__setattr__(obj, "_c", tuple(coeffs[:n]))
        object.__setattr__(obj, "_ctx", ctx)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, c, ctx=None):
        return cls([c], ctx)

    @classmethod
    def monomial(cls, n: int, c=1, ctx=None):
        zero = _ZERO if ctx is None else ctx.mpc(0)
        return cls([zero] * n + [c], ctx)

    @classmethod
    def from_roots(cls, roots, ctx=None):
        """``prod (z - r)`` over ``roots``."""
        p = cls.constant(1, ctx)
        for r in roots:
            p = p * cls([-r, 1], ctx)
        return p

    # basic properties ------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def ctx(self):
        return self._ctx

    @property
    def exact(self) -> bool:
        return self._ctx is None

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def __getitem__(self, i):
        if 0 <= i < len(self._c):
            return self._c[i]
        return self._zero()

    @property
    def lc(self):
        if not self._c:
            return self._zero()
        return self._c[-1]

    def _zero(self):
        return _ZERO if self._ctx is None else self._ctx.mpc(0)

    def _one(self):
        return _ONE if self._ctx is None else self._ctx.mpc(1)

    def to_numeric(self, ctx) -> "Polynomial":
        return Polynomial._raw([to_context(c, ctx) for c in self._c], ctx)

    def _coerce(self, other):
        """Return ``(a, b, ctx)`` with both operands in a common coefficient field."""
        if not isinstance(other, Polynomial):
            if isinstance(other, (ExactComplex, Rational)) or is_numeric_scalar(other):
                other = Polynomial([other])
            else:
                return None
        ctx = _pick_context(self._ctx, other._ctx)
        a = self if self._ctx is ctx else self.to_numeric(ctx)
        b = other if other._ctx is ctx else other.to_numeric(ctx)
        return a, b, ctx

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        a, b, ctx = co
        x, y = a._c, b._c
        if len(x) < len(y):
            x, y = y, x
        out = list(x)
        for i, c in enumerate(y):
            out[i] = out[i] + c
        return Polynomial._raw(out, ctx)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self._c], self._ctx)

    def __sub__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        a, b, _ = co
        return a + (-b)

    def __rsub__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        a, b, _ = co
        return b + (-a)

    def __mul__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        a, b, ctx = co
        x, y = a._c, b._c
        if not x or not y:
            return Polynomial._raw([], ctx)
        if len(y) == 1:
            s = y[0]
            return Polynomial._raw([c * s for c in x], ctx)
        if len(x) == 1:
            s = x[0]
            return Polynomial._raw([s * c for c in y], ctx)
        out = [a._zero()] * (len(x) + len(y) - 1)
        for i, ci in enumerate(x):
            if not ci:
                continue
            for j, cj in enumerate(y):
                out[i + j] = out[i + j] + ci * cj
        return Polynomial._raw(out, ctx)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial._raw([self._one()], self._ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        a, b, ctx = co
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(a._c)
        db = len(b._c) - 1
        inv_lc = b._one() / b._c[-1]
        if len(rem) - 1 < db:
            return Polynomial._raw([], ctx), a
        quot = [a._zero()] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] * inv_lc
            quot[i - db] = c
            if not c:
                continue
            for j in range(db + 1):
                rem[i - db + j] = rem[i - db + j] - c * b._c[j]
        # the top entries are zero by construction (exactly, or up to rounding)
        return Polynomial._raw(quot, ctx), Polynomial._raw(rem[:db], ctx)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        """Quotient ``self / other``; raises if the division leaves a remainder (exact mode)."""
        q, r = divmod(self, other)
        if r and self.exact and other.exact:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __truediv__(self, scalar):
        if isinstance(scalar, Polynomial):
            return NotImplemented
        if is_numeric_scalar(scalar):
            p = self if self._ctx is not None else self.to_numeric(scalar.context)
            return p * (p._one() / to_context(scalar, p._ctx))
        if self._ctx is None:
            return self * (_ONE / as_exact(scalar))
        return self * (self._one() / to_context(scalar, self._ctx))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._ctx is other._ctx and self._c == other._c
        if isinstance(other, (ExactComplex, Rational)) or is_numeric_scalar(other):
            return self == Polynomial([other], self._ctx)
        return NotImplemented

    def __hash__(self):
        return hash((self._c, id(self._ctx) if self._ctx is not None else None))

    def __call__(self, x):
        """Horner evaluation; works with exact, mpmath, or numpy arguments."""
        if not self._c:
            return 0 * x if not isinstance(x, ExactComplex) else _ZERO
        c = self._c
        if self._ctx is None and not isinstance(x, (ExactComplex, Rational)):
            if is_numeric_scalar(x):
                c = [to_context(v, x.context) for v in c]
            else:
                c = [complex(v) for v in c]
        acc = c[-1]
        for v in reversed(c[:-1]):
            acc = acc * x + v
        return acc

    # calculus and transformations ----------------------------------------------

    def derivative(self, order: int = 1) -> "Polynomial":
        p = self
        for _ in range(order):
            p = Polynomial._raw([c * i for i, c in enumerate(p._c) if i], p._ctx)
        return p

    def taylor(self, z0) -> "Polynomial":
        """Coefficients of ``p(z0 + t)`` as a polynomial in ``t``."""
        ctx = self._ctx
        if ctx is None and is_numeric_scalar(z0):
            ctx = z0.context
        c = [to_context(v, ctx) for v in self._c] if ctx is not None else list(self._c)
        if ctx is not None:
            z0 = to_context(z0, ctx)
        else:
            z0 = as_exact(z0)
        n = len(c)
        # repeated synthetic division by (z - z0)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + z0 * c[j + 1]
        return Polynomial._raw(c, ctx)

    def compose(self, q: "Polynomial") -> "Polynomial":
        """``p(q(z))`` by Horner's scheme."""
        if not self._c:
            return Polynomial._raw([], self._ctx)
        acc = Polynomial([self._c[-1]], self._ctx)
        for v in reversed(self._c[:-1]):
            acc = acc * q + Polynomial([v], self._ctx)
        return acc

    def reversed(self, degree: int | None = None) -> "Polynomial":
        """``z**degree * p(1/z)``; ``degree`` defaults to ``self.degree``."""
        if degree is None:
            degree = len(self._c) - 1
        if degree < len(self._c) - 1:
            raise ValueError("reversal degree smaller than polynomial degree")
        c = list(self._c) + [self._zero()] * (degree + 1 - len(self._c))
        return Polynomial._raw(c[::-1], self._ctx)

    def monic(self) -> "Polynomial":
        if not self._c:
            raise ZeroDivisionError("zero polynomial has no monic normalisation")
        inv = self._one() / self._c[-1]
        return Polynomial._raw([c * inv for c in self._c[:-1]] + [self._one()], self._ctx)

    def conjugate(self) -> "Polynomial":
        """Polynomial with complex-conjugated coefficients."""
        return Polynomial._raw([c.conjugate() for c in self._c], self._ctx)

    def norm(self):
        """Max-abs coefficient norm (a float for exact polynomials)."""
        if not self._c:
            return 0
        if self._ctx is None:
            return max(abs(complex(c)) for c in self._c)
        return max(abs(c) for c in self._c)

    def __repr__(self):
        if not self._c:
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self._c):
            if not c:
                continue
            s = str(c) if self._ctx is None else self._ctx.nstr(c, 8)
            if i:
                s = f"({s})*z" + (f"^{i}" if i > 1 else "")
            terms.append(s)
        return "Polynomial(" + " + ".join(terms) + ")"


Z = Polynomial([0, 1])


def poly_derivative(p: Polynomial) -> Polynomial:
    """``dp/dz``."""
    return p.derivative()


def vanishing_order(p: Polynomial, z0) -> int:
    """Largest ``m`` such that ``(z - z0)**m`` divides ``p`` exactly."""
    if p.is_zero():
        raise ValueError("vanishing order of the zero polynomial is undefined")
    if not p.exact:
        raise TypeError("vanishing_order needs an exact polynomial")
    z0 = as_exact(z0)
    c = list(p.coeffs)
    m = 0
    while len(c) > 1:
        # synthetic division by (z - z0)
        q = [_ZERO] * (len(c) - 1)
        acc = c[-1]
        for j in range(len(c) - 2, -1, -1):
            q[j] = acc
            acc = c[j] + acc * z0
        if acc:
            break
        c = q
        m += 1
    return m


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor by the Euclidean algorithm (exact coefficients)."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if not (p.exact and q.exact):
        raise TypeError("poly_gcd needs exact polynomials")
    a, b = p, q
    if a.degree < b.degree:
        a, b = b, a
    while b:
        a, b = b, (a % b)
        if b:
            b = b.monic()
    return a.monic()


def poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero() or q.is_zero():
        return Polynomial([])
    return (p * q).exact_div(poly_gcd(p, q)).monic()


def square_free_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``p = lc * prod f_i**i`` with each ``f_i`` square-free and monic.

    Returns the non-constant factors as ``(f_i, i)`` pairs.
    """
    if p.is_zero():
        raise ValueError("square-free decomposition of zero")
    if p.is_constant():
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while not b.is_constant():
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if not a.is_constant():
            out.append((a.monic(), i))
        i += 1
    return out
