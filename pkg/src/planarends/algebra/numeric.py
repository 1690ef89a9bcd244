"""Extended precision complex numbers.

A BigComplex is an ``mpc`` belonging to an :class:`mpmath.MPContext` whose
working precision is fixed at creation.  Each context is created once per
precision and never mutated afterwards, so values carry their precision with
them (``x.context.dps``) and arithmetic between values of the same context
rounds at that precision.  Contexts are cached and shared between threads.
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from numbers import Rational

import mpmath

from .scalars import ExactComplex

__all__ = [
    "DEFAULT_PRECISION",
    "context",
    "bigcomplex",
    "precision_of",
    "is_numeric_scalar",
    "to_context",
    "default_precision",
]

DEFAULT_PRECISION = 60

_contexts: dict[int, mpmath.MPContext] = {}
_lock = threading.Lock()


def default_precision() -> int:
    """Default working precision in decimal digits; ``WF_PRECISION`` overrides it."""
    value = os.environ.get("WF_PRECISION")
    if value is None:
        return DEFAULT_PRECISION
    return int(value)


def context(precision: int) -> mpmath.MPContext:
    """Return the shared mpmath context working at ``precision`` decimal digits."""
    precision = int(precision)
    if precision < 5:
        raise ValueError(f"precision must be at least 5 digits, got {precision}")
    ctx = _contexts.get(precision)
    if ctx is None:
        with _lock:
            ctx = _contexts.get(precision)
            if ctx is None:
                ctx = mpmath.MPContext()
                ctx.dps = precision
                _contexts[precision] = ctx
    return ctx


def is_numeric_scalar(x) -> bool:
    return hasattr(x, "context") and isinstance(getattr(x, "context"), mpmath.ctx_mp.MPContext)


def precision_of(x) -> int:
    return x.context.dps


def to_context(x, ctx):
    """Convert an exact or numeric scalar into an ``mpc`` of ``ctx``."""
    if isinstance(x, ExactComplex):
        return x.to_mp(ctx)
    if isinstance(x, Rational):
        x = Fraction(x)
        if x.denominator == 1:
            return ctx.mpc(x.numerator)
        return ctx.mpc(ctx.mpf(x.numerator) / x.denominator)
    if is_numeric_scalar(x):
        return ctx.mpc(x)
    if isinstance(x, (int, float, complex)):
        return ctx.mpc(x)
    if isinstance(x, str):
        return ctx.mpc(ctx.mpmathify(x))
    raise TypeError(f"cannot convert {x!r} to an mpmath complex")


def bigcomplex(value, precision: int | None = None):
    """Create a BigComplex at ``precision`` digits (default: :func:`default_precision`).

    ``value`` may be an int, Fraction, ExactComplex, Python float/complex, a decimal
    string, or an mpmath number (possibly of another precision).
    """
    if precision is None:
        precision = default_precision()
    return to_context(value, context(precision))
