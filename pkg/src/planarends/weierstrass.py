"""Weierstrass data of minimal surfaces and a spinor ansatz with 2k+1 planar ends.

The spinors ``s1, s2`` are only used through the single-valued quadratic
combinations ``s1**2, s1*s2, s2**2`` (coefficients of ``dz`` in the chart
``z``), so the sign ambiguity of ``sqrt(dz)`` never enters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .algebra import (
    I,
    Polynomial,
    RationalFunction,
    bigcomplex,
    context,
    default_precision,
)
from .algebra.residues import laurent_head

__all__ = [
    "PengXiaoParams",
    "SpinorPair",
    "End",
    "ConvergenceError",
    "SingularJacobianError",
    "paper_params_k4",
    "end_set",
    "principal_root",
    "pengxiao_spinors",
    "del_f",
    "null_defect",
    "residue_system",
    "end_residues",
    "SYMMETRY_WEIGHTS",
    "solve_residues",
    "gauss_newton_step",
    "continuation_initial",
    "gauss_map",
]

SOLVER_GUARD_DIGITS = 20
MAX_NEWTON_STEPS = 60


class ConvergenceError(ArithmeticError):
    pass


class SingularJacobianError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PengXiaoParams:
    """Parameters ``(a, b, c, lambda)`` of the ansatz for ``2k+1`` ends."""

    k: int
    a: object
    b: object
    c: object
    lam: object
    precision: int = 60

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        ctx = context(self.precision)
        for name in ("a", "b", "c", "lam"):
            object.__setattr__(self, name, bigcomplex(getattr(self, name), self.precision))
        vals = {"a": self.a, "b": self.b, "c": self.c, "lambda": self.lam}
        names = list(vals)
        tol = ctx.mpf(10) ** (-(self.precision // 2))
        for i, u in enumerate(names):
            for v in names[i + 1:]:
                x, y = vals[u], vals[v]
                if abs(x - y) <= tol * max(1, abs(x), abs(y)):
                    raise ValueError(f"parameters {u} and {v} must be distinct")
        for bad in (0, 1):
            if abs(self.lam - bad) <= tol:
                raise ValueError(f"lambda must not equal {bad}")

    @property
    def values(self) -> tuple:
        return (self.a, self.b, self.c, self.lam)

    def with_values(self, values, precision: int | None = None) -> "PengXiaoParams":
        a, b, c, lam = values
        return replace(self, a=a, b=b, c=c, lam=lam, precision=precision or self.precision)

    def at_precision(self, precision: int) -> "PengXiaoParams":
        return self.with_values(self.values, precision)


def paper_params_k4(precision: int | None = None) -> PengXiaoParams:
    """The closed-form solution for ``k = 4`` (nine ends)."""
    precision = precision or default_precision()
    ctx = context(precision + 10)
    s7, s15 = ctx.sqrt(7), ctx.sqrt(15)
    a = 10 - 4 * s7 + ctx.sqrt(ctx.mpf(635) / 3 - 80 * s7)
    b = 10 + 4 * s7 + ctx.sqrt(ctx.mpf(635) / 3 + 80 * s7)
    c = -3 - 4 * ctx.sqrt(ctx.mpf(3) / 5)
    lam = -31 - 8 * s15
    return PengXiaoParams(4, a, b, c, lam, precision)


@dataclass(frozen=True)
class SpinorPair:
    """Spinors ``(s1, s2)`` as coefficients of ``sqrt(dz)``.

    The squares are what get computed with, so a pair may also be given
    directly through ``squares = (s1**2, s1*s2, s2**2)``.
    """

    s1: RationalFunction
    s2: RationalFunction
    squares: tuple | None = None

    def __post_init__(self):
        for name in ("s1", "s2"):
            v = getattr(self, name)
            if not isinstance(v, RationalFunction):
                object.__setattr__(self, name, RationalFunction(v))
        if self.s1.is_zero() and self.s2.is_zero():
            raise ValueError("s1 and s2 must not both vanish identically")
        if self.squares is None:
            object.__setattr__(self, "squares", (self.s1 * self.s1, self.s1 * self.s2, self.s2 * self.s2))

    @property
    def numeric_mode(self) -> bool:
        return not (self.s1.exact and self.s2.exact)

    @property
    def precision(self) -> int | None:
        ctx = self.s1.ctx or self.s2.ctx
        return ctx.dps if ctx is not None else None


@dataclass(frozen=True)
class End:
    point: object
    label: str  # which factor of z (z^k - 1) (z^k - lambda) vanishes


def principal_root(lam, k: int):
    """The k-th root of ``lam`` with argument in ``[0, 2 pi / k)``."""
    ctx = lam.context
    arg = ctx.arg(lam)
    if arg < 0:
        arg += 2 * ctx.pi
    return ctx.root(abs(lam), k) * ctx.expj(arg / k)


def end_set(params: PengXiaoParams) -> list[End]:
    """The ``2k+1`` punctures: ``0``, the k-th roots of unity, the k-th roots of lambda."""
    ctx = context(params.precision)
    k = params.k
    mu = principal_root(params.lam, k)
    ends = [End(ctx.mpc(0), "z")]
    ends += [End(ctx.expj(2 * ctx.pi * j / k), "z^k-1") for j in range(k)]
    ends += [End(mu * ctx.expj(2 * ctx.pi * j / k), "z^k-lambda") for j in range(k)]
    return ends


def _ansatz_polys(params: PengXiaoParams, ctx):
    k = params.k
    a, b, c, lam = (ctx.mpc(v) for v in params.values)
    zk = Polynomial.monomial(k, ctx.mpc(1), ctx)
    z = Polynomial.monomial(1, ctx.mpc(1), ctx)
    one = Polynomial.constant(ctx.mpc(1), ctx)
    q = (zk - one) * (zk - Polynomial.constant(lam, ctx))
    m1 = zk - Polynomial.constant(c, ctx)
    return {
        "z": z,
        "q": q,
        "m1": m1,
        "n1": z * m1,
        "n2": (zk - Polynomial.constant(a, ctx)) * (zk - Polynomial.constant(b, ctx)),
    }


def _quadratics(params: PengXiaoParams, ctx):
    p = _ansatz_polys(params, ctx)
    q2 = p["q"] * p["q"]
    n1, n2, z = p["n1"], p["n2"], p["z"]
    s11 = RationalFunction(n1 * n1, q2, reduce=False)
    # s1*s2: the factor z cancels exactly
    s12 = RationalFunction(p["m1"] * n2, q2, reduce=False)
    s22 = RationalFunction(n2 * n2, z * z * q2, reduce=False)
    return s11, s12, s22


def pengxiao_spinors(params: PengXiaoParams) -> SpinorPair:
    """``s1 = z (z^k - c) / ((z^k-1)(z^k-lambda))``, ``s2 = (z^k-a)(z^k-b) / (z (z^k-1)(z^k-lambda))``."""
    ctx = context(params.precision)
    p = _ansatz_polys(params, ctx)
    s1 = RationalFunction(p["n1"], p["q"], reduce=False)
    s2 = RationalFunction(p["n2"], p["z"] * p["q"], reduce=False)
    return SpinorPair(s1, s2, squares=_quadratics(params, ctx))


def del_f(sp: SpinorPair) -> tuple:
    """``(s1^2 + s2^2, i (s1^2 - s2^2), -2 i s1 s2)``, the ``dz`` coefficients of ``df``."""
    s11, s12, s22 = sp.squares
    i = I if not sp.numeric_mode else context(sp.precision).mpc(0, 1)
    return (s11 + s22, (s11 - s22) * i, s12 * (-2 * i))


def null_defect(phi: Sequence[RationalFunction]):
    """``phi1^2 + phi2^2 + phi3^2``.

    Exact input returns the (zero, for genuine Weierstrass data) rational
    function itself.  Numeric input returns the largest coefficient of the
    numerator of the sum over a common denominator, relative to the largest
    coefficient of the three summands.
    """
    if all(f.exact for f in phi):
        return phi[0] * phi[0] + phi[1] * phi[1] + phi[2] * phi[2]
    sq = [f * f for f in phi]
    nums = [
        sq[0].num * sq[1].den * sq[2].den,
        sq[1].num * sq[0].den * sq[2].den,
        sq[2].num * sq[0].den * sq[1].den,
    ]
    total = nums[0] + nums[1] + nums[2]
    scale = max(max((abs(c) for c in n.coeffs), default=0) for n in nums)
    if not scale:
        return 0
    return max((abs(c) for c in total.coeffs), default=0) / scale


SYMMETRY_WEIGHTS = {"s1^2": 3, "s1s2": 1, "s2^2": -1}
"""Under ``z -> zeta z`` (``zeta**k = 1``) the residue of each quadratic at
``zeta p`` is ``zeta**w`` times the residue at ``p``: ``s1`` has weight 1,
``s2`` weight -1, and ``dz`` contributes one more factor of ``zeta``."""


def end_residues(params: PengXiaoParams, points, precision: int | None = None):
    """Residues of ``(s1^2, s1 s2, s2^2)`` at each given end point."""
    precision = precision or params.precision
    ctx = context(precision)
    quads = _quadratics(params, ctx)
    out = []
    for p in points:
        row = []
        for f in quads:
            m, head = laurent_head(f, ctx.mpc(p), precision)
            row.append(head[-1] if m else ctx.mpc(0))
        out.append(tuple(row))
    return out


def residue_system(params: PengXiaoParams, precision: int | None = None) -> list:
    """Nine residues: ``s1^2, s1 s2, s2^2`` at ``z = 0``, ``z = 1`` and ``z = lambda^(1/k)``.

    By the rotational symmetry of the ansatz (see :data:`SYMMETRY_WEIGHTS`) these
    three orbit representatives determine the residues at all ``2k+1`` ends.
    """
    precision = precision or params.precision
    ctx = context(precision)
    p = params.at_precision(precision) if precision != params.precision else params
    mu = principal_root(p.lam, p.k)
    if abs(ctx.power(mu, p.k) - 1) < ctx.mpf(10) ** (-(precision // 2)):
        raise ValueError("lambda^(1/k) collides with a root of unity")
    rows = end_residues(p, [ctx.mpc(0), ctx.mpc(1), mu], precision)
    return [v for row in rows for v in row]


# indices into residue_system used by the solver: the six entries at z=1 and at
# lambda^(1/k); the three at z=0 vanish identically for k >= 2
_SOLVER_ROWS = (3, 4, 5, 6, 7, 8)


def _solver_residuals(values, k, ctx):
    params = PengXiaoParams(k, *values, precision=ctx.dps)
    res = residue_system(params, ctx.dps)
    return [res[i] for i in _SOLVER_ROWS], res


def _jacobian(values, k, ctx):
    h = ctx.mpf(10) ** (-(ctx.dps // 3))
    cols = []
    for j in range(4):
        plus = list(values)
        minus = list(values)
        step = h * max(1, abs(values[j]))
        plus[j] += step
        minus[j] -= step
        rp, _ = _solver_residuals(plus, k, ctx)
        rm, _ = _solver_residuals(minus, k, ctx)
        cols.append([(x - y) / (2 * step) for x, y in zip(rp, rm)])
    J = ctx.matrix(len(_SOLVER_ROWS), 4)
    for j, col in enumerate(cols):
        for i, v in enumerate(col):
            J[i, j] = v
    return J


def _gauss_newton(values, k, ctx, tol, log):
    values = [ctx.mpc(v) for v in values]
    r, full = _solver_residuals(values, k, ctx)
    norm = max(abs(v) for v in full)
    for it in range(MAX_NEWTON_STEPS):
        if log:
            log(f"{it} {ctx.nstr(norm, 6)}")
        if norm < tol:
            return values, norm
        J = _jacobian(values, k, ctx)
        JH = J.transpose_conj()
        try:
            dx = ctx.lu_solve(JH * J, JH * ctx.matrix(r))
        except ZeroDivisionError as exc:
            raise SingularJacobianError(f"Jacobian singular at iteration {it}") from exc
        t = ctx.mpf(1)
        while True:
            trial = [values[i] - t * dx[i] for i in range(4)]
            try:
                rt, ft = _solver_residuals(trial, k, ctx)
                nt = max(abs(v) for v in ft)
            except (ValueError, ZeroDivisionError):
                nt = None
            if nt is not None and nt < norm:
                break
            t /= 2
            if t < ctx.mpf(10) ** -6:
                raise ConvergenceError(f"line search failed at iteration {it} (residual {ctx.nstr(norm, 5)})")
        values, r, norm = trial, rt, nt
    raise ConvergenceError(f"no convergence in {MAX_NEWTON_STEPS} steps (residual {ctx.nstr(norm, 5)})")


def gauss_newton_step(params: PengXiaoParams, precision: int | None = None) -> PengXiaoParams:
    """One undamped Gauss-Newton step on the residue conditions (with guard digits)."""
    precision = precision or params.precision
    ctx = context(precision + SOLVER_GUARD_DIGITS)
    values = [ctx.mpc(v) for v in params.values]
    r, _ = _solver_residuals(values, params.k, ctx)
    J = _jacobian(values, params.k, ctx)
    JH = J.transpose_conj()
    try:
        dx = ctx.lu_solve(JH * J, JH * ctx.matrix(r))
    except ZeroDivisionError as exc:
        raise SingularJacobianError("Jacobian singular") from exc
    return PengXiaoParams(params.k, *(values[i] - dx[i] for i in range(4)), precision=precision)


def solve_residues(
    k: int,
    initial: PengXiaoParams,
    precision: int | None = None,
    *,
    retries: int = 20,
    seed: int = 0,
    log: Callable[[str], None] | None = None,
) -> PengXiaoParams:
    """Solve the residue conditions for ``(a, b, c, lambda)`` by damped Gauss-Newton.

    The unknowns are fitted to the six residues at ``z = 1`` and
    ``z = lambda^(1/k)`` (the ones at ``z = 0`` vanish identically); the whole
    residue system is then required to be below ``10**-(P-20)``.  The
    iteration runs with 20 guard digits.  If the given start fails, up to
    ``retries`` seeded random rescalings of it are tried.

    Raises
    ------
    ValueError
        If ``k < 4`` or the starting values are not pairwise distinct.
    ConvergenceError, SingularJacobianError
        If no attempt converges.
    """
    if k < 4:
        raise ValueError("the ansatz is solved for k >= 4")
    precision = precision or initial.precision
    ctx = context(precision + SOLVER_GUARD_DIGITS)
    tol = ctx.mpf(10) ** (-(precision - 20))
    start = [ctx.mpc(v) for v in initial.values]
    PengXiaoParams(k, *start, precision=ctx.dps)  # validates distinctness
    rng = random.Random(seed)
    attempts = [start]
    last_error: Exception | None = None
    for attempt in range(retries + 1):
        if attempt >= len(attempts):
            attempts.append([v * ctx.mpf(rng.uniform(0.5, 1.5)) for v in start])
        if log:
            log(f"# attempt {attempt}")
        try:
            values, _ = _gauss_newton(attempts[attempt], k, ctx, tol, log)
        except (ConvergenceError, SingularJacobianError, ValueError, ZeroDivisionError) as exc:
            last_error = exc
            if log:
                log(f"# failed: {exc}")
            continue
        return PengXiaoParams(k, *values, precision=precision)
    if isinstance(last_error, SingularJacobianError):
        raise last_error
    raise ConvergenceError(f"solve_residues(k={k}) failed after {retries + 1} attempts: {last_error}")


def continuation_initial(k: int, precision: int | None = None, log=None) -> PengXiaoParams:
    """Starting values for ``k``: the ``k=4`` solution carried up through ``k-1``."""
    precision = precision or default_precision()
    params = paper_params_k4(precision)
    for j in range(5, k):
        params = solve_residues(j, params.with_values(params.values), precision, log=log)
    return replace(params, k=k) if k != params.k else params


def gauss_map(phi: Sequence[RationalFunction]) -> RationalFunction:
    """``g = s2/s1 = i phi3 / (phi1 - i phi2)``, reduced.

    Numeric input is reduced by cancelling common roots of numerator and
    denominator.  ``g.degree`` is the degree of the Gauss map.
    """
    phi1, phi2, phi3 = phi
    exact = phi1.exact and phi2.exact and phi3.exact
    i = I if exact else context(_ctx_of(phi).dps).mpc(0, 1)
    denom = phi1 - phi2 * i
    if denom.is_zero():
        raise ValueError("phi1 - i phi2 vanishes identically")
    g = (phi3 * i) / denom
    if not exact:
        g = g.cancel_numeric()
    return g


def _ctx_of(phi):
    for f in phi:
        if f.ctx is not None:
            return f.ctx
    return context(default_precision())
