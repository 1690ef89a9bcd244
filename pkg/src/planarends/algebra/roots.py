"""All-roots polynomial solver (Aberth-Ehrlich simultaneous iteration).

Exact input is first split into square-free factors (Yun), so every factor
handed to the iteration has simple roots and the multiplicity of each root
is known exactly.  Numeric input is iterated as is and nearby roots are
clustered afterwards.
"""

from __future__ import annotations

from .numeric import context
from .polynomial import Polynomial, square_free_decomposition

__all__ = ["RootFindingError", "poly_roots", "MAX_SWEEPS", "GUARD_DIGITS"]

MAX_SWEEPS = 200
GUARD_DIGITS = 10


class RootFindingError(ArithmeticError):
    """The simultaneous iteration did not converge within the sweep budget."""


def _eval_with_scale(coeffs, x, absx):
    """``p(x)``, ``p'(x)`` and the rounding scale ``sum |c_i| |x|^i``."""
    p = coeffs[-1]
    dp = 0 * p
    s = abs(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        dp = dp * x + p
        p = p * x + c
        s = s * absx + abs(c)
    return p, dp, s


def _initial_guesses(coeffs, ctx):
    n = len(coeffs) - 1
    lc = abs(coeffs[-1])
    # Fujiwara bound on the root moduli
    bound = max(
        2 * (abs(coeffs[n - j]) / lc) ** (ctx.mpf(1) / j) if j < n else
        2 * (abs(coeffs[0]) / (2 * lc)) ** (ctx.mpf(1) / n)
        for j in range(1, n + 1)
    )
    radius = bound / 2 if bound > 0 else ctx.mpf(1)
    offset = ctx.mpf("0.4")
    return [radius * ctx.expj(2 * ctx.pi * k / n + offset) for k in range(n)]


def _aberth(coeffs, ctx, max_sweeps):
    n = len(coeffs) - 1
    if n == 1:
        return [-coeffs[0] / coeffs[1]]
    z = _initial_guesses(coeffs, ctx)
    eps = ctx.mpf(10) ** (-(ctx.dps - 3))
    res_tol = ctx.mpf(10) ** (-(ctx.dps - 8))
    for sweep in range(max_sweeps):
        converged = True
        small_residual = True
        for i in range(n):
            zi = z[i]
            p, dp, scale = _eval_with_scale(coeffs, zi, abs(zi))
            if abs(p) > res_tol * scale:
                small_residual = False
            if not p:
                continue
            if not dp:
                # stationary point: nudge off it and keep iterating
                z[i] = zi + ctx.mpf(10) ** (-(ctx.dps // 4)) * max(1, abs(zi))
                converged = False
                continue
            ratio = p / dp
            s = 0
            for j in range(n):
                if j != i:
                    diff = zi - z[j]
                    if diff:
                        s += 1 / diff
            denom = 1 - ratio * s
            w = ratio / denom if denom else ratio
            z[i] = zi - w
            if abs(w) > eps * max(1, abs(z[i])):
                converged = False
        if converged or small_residual:
            return z
    raise RootFindingError(f"Aberth iteration did not converge in {max_sweeps} sweeps (degree {n})")


def _newton_polish(coeffs, z, sweeps=2):
    out = []
    for x in z:
        for _ in range(sweeps):
            p, dp, _ = _eval_with_scale(coeffs, x, abs(x))
            if not dp or not p:
                break
            x = x - p / dp
        out.append(x)
    return out


def _simple_roots(p: Polynomial, precision: int, polish: bool):
    work = context(precision + GUARD_DIGITS)
    coeffs = [work.mpc(c) if not p.exact else c.to_mp(work) for c in p.coeffs]
    roots = _aberth(coeffs, work, MAX_SWEEPS)
    if polish:
        roots = _newton_polish(coeffs, roots)
    tol = work.mpf(10) ** (-(precision - 10))
    for r in roots:
        val, _, scale = _eval_with_scale(coeffs, r, abs(r))
        if abs(val) > tol * scale:
            raise RootFindingError(f"root {work.nstr(r, 10)} has residual {work.nstr(abs(val), 5)}")
    return roots


def _sort_key(r):
    return (round(float(r.real), 9), round(float(r.imag), 9))


def poly_roots(p: Polynomial, precision: int = 60):
    """All complex roots of ``p`` with multiplicities.

    Parameters
    ----------
    p : Polynomial
        Exact or numeric, of degree at least one.
    precision : int
        Decimal digits of the returned BigComplex values.

    Returns
    -------
    list of (root, multiplicity)
        Roots are ``mpc`` values at ``precision`` digits, sorted by real then
        imaginary part.  Each satisfies ``|p(r)| < 10**-(precision-10)`` relative
        to the rounding scale ``sum |c_i| |r|**i``.
    """
    if p.is_constant():
        raise ValueError("poly_roots needs a non-constant polynomial")
    out_ctx = context(precision)
    result = []
    if p.exact:
        for factor, mult in square_free_decomposition(p):
            # a square-free factor divisible by z: the root 0 is exact
            if not factor.coeffs[0]:
                result.append((out_ctx.mpc(0), mult))
                factor = Polynomial(list(factor.coeffs[1:]))
                if factor.degree < 1:
                    continue
            for r in _simple_roots(factor, precision, polish=True):
                result.append((out_ctx.mpc(r), mult))
    else:
        # exactly vanishing low coefficients are roots at 0 of known multiplicity
        m0 = next(i for i, c in enumerate(p.coeffs) if c)
        if m0:
            result.append((out_ctx.mpc(0), m0))
            p = Polynomial._raw(list(p.coeffs[m0:]), p.ctx)
        raw = _simple_roots(p, precision, polish=False) if p.degree >= 1 else []
        work = context(precision + GUARD_DIGITS)
        tol = work.mpf(10) ** (-(precision // 5))
        clusters: list[list] = []
        for r in raw:
            for cl in clusters:
                if abs(cl[0] - r) <= tol * max(1, abs(r)):
                    cl.append(r)
                    break
            else:
                clusters.append([r])
        for cl in clusters:
            centre = sum(cl) / len(cl)
            result.append((out_ctx.mpc(centre), len(cl)))
    result.sort(key=lambda rm: _sort_key(rm[0]))
    return result
