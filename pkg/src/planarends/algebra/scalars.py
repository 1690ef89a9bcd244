"""Gaussian rationals: exact complex numbers ``re + i*im`` with ``re, im`` in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["ExactComplex", "as_exact", "is_exact_scalar", "I"]


class ExactComplex:
    """An element of Q(i).

    Both parts are :class:`fractions.Fraction`, so they are always stored in
    lowest terms with a positive denominator. Instances are immutable.

    >>> ExactComplex(1, 2) * ExactComplex(1, -2)
    ExactComplex(5)
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, ExactComplex):
            if im:
                raise TypeError("cannot combine an ExactComplex real part with an imaginary part")
            re, im = re._re, re._im
        if isinstance(re, str) or isinstance(im, str):
            re, im = Fraction(re), Fraction(im)
        if not isinstance(re, Rational) or not isinstance(im, Rational):
            raise TypeError(f"ExactComplex needs rational parts, got {re!r}, {im!r}")
        object.__setattr__(self, "_re", Fraction(re))
        object.__setattr__(self, "_im", Fraction(im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "ExactComplex":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_re", re)
        object.__setattr__(obj, "_im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @property
    def real(self) -> Fraction:
        return self._re

    @property
    def imag(self) -> Fraction:
        return self._im

    def conjugate(self) -> "ExactComplex":
        return ExactComplex._raw(self._re, -self._im)

    def norm2(self) -> Fraction:
        """``|x|**2``, exactly."""
        return self._re * self._re + self._im * self._im

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return ExactComplex._raw(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return ExactComplex._raw(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self._re, self._im, other._re, other._im
        if not b and not d:
            return ExactComplex._raw(a * c, b)
        return ExactComplex._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c, d = other._re, other._im
        if not d:
            if not c:
                raise ZeroDivisionError("division by exact zero")
            return ExactComplex._raw(self._re / c, self._im / c)
        n = c * c + d * d
        a, b = self._re, self._im
        return ExactComplex._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return ExactComplex._raw(-self._re, -self._im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ExactComplex(1) / self ** (-n)
        result = ExactComplex._raw(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparisons / conversions --------------------------------------------

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self):
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    def __repr__(self):
        if not self._im:
            return f"ExactComplex({_frac_str(self._re)})"
        return f"ExactComplex({_frac_str(self._re)}, {_frac_str(self._im)})"

    def __str__(self):
        if not self._im:
            return _frac_str(self._re)
        if not self._re:
            return f"{_frac_str(self._im)}*I"
        sign = "+" if self._im > 0 else "-"
        return f"{_frac_str(self._re)} {sign} {_frac_str(abs(self._im))}*I"

    def to_mp(self, ctx):
        """Convert to an ``mpc`` of the given mpmath context (rounded once per part)."""
        return ctx.mpc(_frac_to_mpf(self._re, ctx), _frac_to_mpf(self._im, ctx))

    def is_real(self) -> bool:
        return not self._im


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _frac_to_mpf(q: Fraction, ctx):
    if q.denominator == 1:
        return ctx.mpf(q.numerator)
    return ctx.mpf(q.numerator) / q.denominator


def _coerce(x):
    if isinstance(x, ExactComplex):
        return x
    if isinstance(x, Rational):
        return ExactComplex._raw(Fraction(x), Fraction(0))
    return NotImplemented


def is_exact_scalar(x) -> bool:
    return isinstance(x, (ExactComplex, Rational))


def as_exact(x) -> ExactComplex:
    """Coerce ints, Fractions and ExactComplex values; reject anything inexact."""
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"not an exact Gaussian rational: {x!r}")
    return c


I = ExactComplex(0, 1)
