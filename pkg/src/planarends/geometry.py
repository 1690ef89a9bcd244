"""Surfaces ``f = Re F`` of null curves: sampling, curvature, energy and meshes.

High-precision work (finite-difference curvature, null residuals) runs in
mpmath at ``P`` digits; the quadrature and the meshes use numpy float64.
"""

from __future__ import annotations

import functools
import json
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    I,
    Polynomial,
    RationalFunction,
    context,
    default_precision,
    poly_gcd,
    poly_lcm,
    to_context,
)
from .klein import MeroMap3, pole_structure

__all__ = [
    "DegenerateMetricError",
    "ExclusionError",
    "QuadratureError",
    "SurfaceSample",
    "MeshSpec",
    "EnergyReport",
    "Mesh",
    "eval_surface",
    "conformality_residual",
    "metric_defect",
    "inverse_stereographic",
    "stereographic",
    "VIEW_POLE",
    "curvature_estimates",
    "mean_curvature_convergence",
    "gauss_map_polys",
    "gauss_degree",
    "total_curvature",
    "make_mesh",
    "write_obj",
    "write_s3_sidecar",
    "random_interior_points",
]


class DegenerateMetricError(ArithmeticError):
    """The induced metric is (numerically) degenerate: a branch point or a non-immersion."""


class ExclusionError(ValueError):
    """A sample point lies inside an exclusion disk around a pole."""


class QuadratureError(ArithmeticError):
    """The total-curvature quadrature missed its tolerance at the finest grid."""


@dataclass
class SurfaceSample:
    z: object
    xyz: tuple
    s3: tuple
    K: float | None = None
    H: float | None = None


@dataclass(frozen=True)
class MeshSpec:
    """Polar grid per chart: ``grid = (radial, angular)`` divisions of the unit disk."""

    grid: tuple = (512, 1024)
    exclusion_radius: float = 0.02
    charts: tuple = ("z", "1/z")

    def __post_init__(self):
        if not self.exclusion_radius > 0:
            raise ValueError("exclusion_radius must be positive: samples would hit the poles")
        if len(self.grid) != 2 or min(self.grid) < 8:
            raise ValueError("grid needs (radial, angular) with at least 8 divisions each")
        if not set(self.charts) <= {"z", "1/z"} or not self.charts:
            raise ValueError("charts must be drawn from {'z', '1/z'}")


@dataclass
class EnergyReport:
    """Total curvature and Willmore energy of a minimal surface with ``n`` planar ends.

    ``total_curvature`` is ``4 pi deg(g)`` for the Gauss map ``g``;
    ``quadrature_estimate`` is the numerical integral of ``-K dA``;
    ``relative_error`` compares the quadrature with ``willmore = 4 pi (n-1)``.
    """

    n: int
    total_curvature: float
    willmore: float
    quadrature_estimate: float
    relative_error: float
    gauss_degree: int
    ladder: list = field(default_factory=list)
    converged: bool = True
    derivation: str = (
        "W = int(H^2 - K + 1) dA over the compact sphere in S^3 = int(-K) dA of the minimal "
        "surface in R^3 (conformal invariance; Gauss-Bonnet with chi = 2 absorbs the planar ends) "
        "= 4 pi deg(g) = 4 pi (n - 1)"
    )


# ---------------------------------------------------------------------------
# pointwise evaluation at precision P


def _numeric_map(F: MeroMap3, ctx):
    return [f.to_numeric(ctx) for f in F.F]


@functools.lru_cache(maxsize=32)
def _all_poles(F: MeroMap3, precision: int) -> tuple:
    return tuple(p.point for p in pole_structure(F, precision))


def _finite_poles(F: MeroMap3, precision: int):
    return [p for p in _all_poles(F, precision) if p is not None]


def _check_exclusion(z, poles, radius):
    for p in poles:
        d = abs(z - p)
        if d == 0 or d < radius:
            raise ExclusionError(f"z is within {radius} of a pole")


def eval_surface(F: MeroMap3, z, precision: int | None = None, exclusion_radius: float = 0.0,
                 poles=None) -> SurfaceSample:
    """``f(z) = Re F(z)`` together with its image on S^3.

    Raises
    ------
    ExclusionError
        If ``z`` is a pole or lies inside an exclusion disk.
    """
    precision = precision or default_precision()
    ctx = context(precision)
    z = to_context(z, ctx)
    if poles is None:
        poles = _finite_poles(F, precision)
    _check_exclusion(z, poles, exclusion_radius)
    vals = [f(z) for f in _numeric_map(F, ctx)]
    xyz = tuple(ctx.re(v) for v in vals)
    s3 = tuple(inverse_stereographic([float(x) for x in xyz]))
    return SurfaceSample(z=z, xyz=xyz, s3=s3)


def conformality_residual(F: MeroMap3, samples, precision: int | None = None):
    """``max |F'.F'| / |F'|^2`` over the sample points (relative null residual, as an mpf)."""
    precision = precision or default_precision()
    ctx = context(precision)
    dF = [f.derivative().to_numeric(ctx) for f in F.F]
    worst = ctx.mpf(0)
    for z in samples:
        z = to_context(z, ctx)
        v = [d(z) for d in dF]
        num = abs(v[0] ** 2 + v[1] ** 2 + v[2] ** 2)
        den = abs(v[0]) ** 2 + abs(v[1]) ** 2 + abs(v[2]) ** 2
        if den == 0:
            raise DegenerateMetricError("F' vanishes at a sample point")
        worst = max(worst, num / den)
    return worst


def _real_part_fn(F: MeroMap3, ctx):
    comps = _numeric_map(F, ctx)

    def f(z):
        return [ctx.re(c(z)) for c in comps]

    return f


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u, v):
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


# central-difference weights for f' (denominator 12 h) and f'' (denominator 12 h^2)
_D1 = {2: {-1: -6, 1: 6}, 4: {-2: 1, -1: -8, 1: 8, 2: -1}}
_D2 = {2: {-1: 12, 0: -24, 1: 12}, 4: {-2: -1, -1: 16, 0: -30, 1: 16, 2: -1}}


def _stencil(F, z, h, ctx, order=4):
    """First and second partials of ``Re F`` at ``z`` from central differences of the given order."""
    if order not in _D1:
        raise ValueError("order must be 2 or 4")
    f = _real_part_fn(F, ctx)
    i = ctx.mpc(0, 1)
    cache = {}

    def at(a, b):
        if (a, b) not in cache:
            cache[(a, b)] = f(z + a * h + b * i * h)
        return cache[(a, b)]

    def combine(weights, denom):
        acc = [ctx.mpf(0)] * 3
        for (a, b), w in weights.items():
            acc = [x + w * y for x, y in zip(acc, at(a, b))]
        return [x / denom for x in acc]

    d1, d2 = _D1[order], _D2[order]
    fx = combine({(a, 0): w for a, w in d1.items()}, 12 * h)
    fy = combine({(0, b): w for b, w in d1.items()}, 12 * h)
    fxx = combine({(a, 0): w for a, w in d2.items()}, 12 * h ** 2)
    fyy = combine({(0, b): w for b, w in d2.items()}, 12 * h ** 2)
    fxy = combine({(a, b): wa * wb for a, wa in d1.items() for b, wb in d1.items()}, 144 * h ** 2)
    return fx, fy, fxx, fyy, fxy


def metric_defect(F: MeroMap3, samples, h: float = 1e-4, precision: int | None = None,
                  order: int = 4) -> dict:
    """First fundamental form check: ``max |f_x.f_y| / E`` and ``max | |f_x| - |f_y| | / |f_x|``."""
    precision = precision or default_precision()
    ctx = context(precision)
    h = ctx.mpf(h)
    ortho = length = ctx.mpf(0)
    for z in samples:
        fx, fy, *_ = _stencil(F, to_context(z, ctx), h, ctx, order)
        E, G = _dot(fx, fx), _dot(fy, fy)
        ortho = max(ortho, abs(_dot(fx, fy)) / E)
        length = max(length, abs(ctx.sqrt(E) - ctx.sqrt(G)) / ctx.sqrt(E))
    return {"orthogonality": float(ortho), "length_mismatch": float(length)}


def curvature_estimates(F: MeroMap3, z, h: float = 1e-4, precision: int | None = None,
                        poles=None, order: int = 4) -> tuple:
    """Gaussian and mean curvature of ``f = Re F`` at ``z`` from central differences.

    Returns
    -------
    (K, H) : mpf
        Computed at ``precision`` digits from central differences with step
        ``h``; ``order`` 4 (default, 25 points) or 2 (9 points).

    Raises
    ------
    DegenerateMetricError
        If ``EG - F^2`` is negligible relative to ``(E + G)^2``.
    """
    precision = precision or default_precision()
    ctx = context(precision)
    z = to_context(z, ctx)
    h = ctx.mpf(h)
    if poles is None:
        poles = _finite_poles(F, precision)
    _check_exclusion(z, poles, 3 * h)
    fx, fy, fxx, fyy, fxy = _stencil(F, z, h, ctx, order)
    E, Fm, G = _dot(fx, fx), _dot(fx, fy), _dot(fy, fy)
    det = E * G - Fm ** 2
    if E + G == 0 or det <= ctx.mpf(10) ** (-(precision // 2)) * (E + G) ** 2:
        raise DegenerateMetricError("induced metric is degenerate at this point")
    n = _cross(fx, fy)
    norm = ctx.sqrt(_dot(n, n))
    n = [c / norm for c in n]
    L, M, N = _dot(fxx, n), _dot(fxy, n), _dot(fyy, n)
    K = (L * N - M ** 2) / det
    H = (E * N - 2 * Fm * M + G * L) / (2 * det)
    return K, H


def mean_curvature_convergence(F: MeroMap3, z, h: float = 1e-4, precision: int | None = None,
                               order: int = 4) -> dict:
    """``|H|`` at steps ``h, h/2, h/4`` and the observed order ``log2`` of successive ratios."""
    precision = precision or default_precision()
    poles = _finite_poles(F, precision)
    hs = [h, h / 2, h / 4]
    Hs = [abs(curvature_estimates(F, z, s, precision, poles, order)[1]) for s in hs]
    slopes = [float(math.log2(Hs[i] / Hs[i + 1])) if Hs[i + 1] else math.inf for i in range(2)]
    return {"h": hs, "H": [float(x) for x in Hs], "slopes": slopes, "slope": min(slopes)}


def random_interior_points(F: MeroMap3, count: int, seed: int = 0, radius: float = 2.0,
                           clearance: float = 0.25, precision: int | None = None) -> list:
    """Seeded points of the disk ``|z| < radius`` at distance ``>= clearance`` from every pole."""
    precision = precision or default_precision()
    poles = [complex(p) for p in _finite_poles(F, precision)]
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r = radius * math.sqrt(rng.random())
        z = r * complex(math.cos(t := 2 * math.pi * rng.random()), math.sin(t))
        if all(abs(z - p) >= clearance for p in poles):
            out.append(z)
    return out


# ---------------------------------------------------------------------------
# S^3


def inverse_stereographic(xyz):
    """``x = (2 xyz, |xyz|^2 - 1) / (|xyz|^2 + 1)``; accepts one point or an ``(N, 3)`` array.

    Infinite input maps to the pole ``(0, 0, 0, 1)``.
    """
    a = np.asarray(xyz, dtype=float)
    single = a.ndim == 1
    a = np.atleast_2d(a)
    out = np.empty((a.shape[0], 4))
    inf = ~np.all(np.isfinite(a), axis=1)
    b = a[~inf]
    scale = np.max(np.abs(b), axis=1, keepdims=True) if b.size else np.zeros((0, 1))
    scale = np.maximum(scale, 1.0)
    u = b / scale  # |xyz| = scale |u|, avoids overflow of |xyz|^2
    s2 = np.sum(u * u, axis=1, keepdims=True)
    inv = 1.0 / scale
    den = s2 + inv * inv
    out[~inf, :3] = 2 * u * inv / den
    out[~inf, 3:] = (s2 - inv * inv) / den
    out[inf] = (0.0, 0.0, 0.0, 1.0)
    return out[0] if single else out


VIEW_POLE = (0.5, 0.5, 0.5, -0.5)
"""Projection centre for R^3 views of S^3 meshes; generic, so it misses the sample surfaces."""


def stereographic(x, pole=(0.0, 0.0, 0.0, 1.0)):
    """Projection from the unit vector ``pole`` onto R^3.

    A Householder reflection takes ``pole`` to ``(0,0,0,1)``; then
    ``pi(x) = (x1, x2, x3) / (1 - x4)``.  For the default pole this is the
    inverse of :func:`inverse_stereographic`.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    q = np.asarray(pole, dtype=float)
    q = q / np.linalg.norm(q)
    e4 = np.array([0.0, 0.0, 0.0, 1.0])
    v = q - e4
    if np.linalg.norm(v) > 1e-15:
        x = x - 2 * np.outer(x @ v, v) / (v @ v)
    with np.errstate(divide="ignore", invalid="ignore"):
        return x[:, :3] / (1.0 - x[:, 3:4])


# ---------------------------------------------------------------------------
# Gauss map and total curvature


def _lift(F: MeroMap3):
    """Common denominator ``D`` and numerators ``a_i`` with ``F_i = a_i / D``."""
    if F.exact:
        D = Polynomial([1])
        for f in F.F:
            if not f.den.is_constant():
                D = poly_lcm(D, f.den)
        return [f.num * D.exact_div(f.den) for f in F.F], D
    dens = [f.den for f in F.F]
    if all(d == dens[0] for d in dens):
        return [f.num for f in F.F], dens[0]
    D = dens[0] * dens[1] * dens[2]
    return [F.F[0].num * dens[1] * dens[2], F.F[1].num * dens[0] * dens[2],
            F.F[2].num * dens[0] * dens[1]], D


def gauss_map_polys(F: MeroMap3):
    """``(N, D)`` with Gauss map ``g = N/D = phi3 / (phi1 - i phi2)`` for ``phi = F'``.

    Exact maps give the reduced pair; numeric maps cancel common roots numerically.
    """
    a, D = _lift(F)
    dD = D.derivative()
    P = [x.derivative() * D - x * dD for x in a]
    if F.exact:
        num, den = P[2], P[0] - P[1] * I
        g = poly_gcd(num, den)
        return num.exact_div(g), den.exact_div(g)
    ctx = F.ctx
    num, den = P[2], P[0] - P[1] * ctx.mpc(0, 1)
    g = RationalFunction(num, den, reduce=False).cancel_numeric()
    return g.num, g.den


def gauss_degree(F: MeroMap3) -> int:
    N, D = gauss_map_polys(F)
    return max(N.degree, D.degree)


def _np_coeffs(p: Polynomial, degree: int | None = None) -> np.ndarray:
    """Coefficients highest-first as complex128, padded to ``degree``."""
    c = [complex(v) for v in p.coeffs]
    if degree is not None:
        c += [0j] * (degree + 1 - len(c))
    return np.array(c[::-1], dtype=complex)


def _density_fn(N: Polynomial, D: Polynomial, chart: str):
    """Pullback of the sphere area form by ``g``: ``4 |N'D - ND'|^2 / (|N|^2 + |D|^2)^2``."""
    m = max(N.degree, D.degree)
    n_c, d_c = _np_coeffs(N, m), _np_coeffs(D, m)
    if chart == "1/z":
        n_c, d_c = n_c[::-1], d_c[::-1]
    dn_c, dd_c = np.polyder(n_c), np.polyder(d_c)

    def density(w):
        n, d = np.polyval(n_c, w), np.polyval(d_c, w)
        dn, dd = np.polyval(dn_c, w), np.polyval(dd_c, w)
        return 4 * np.abs(dn * d - n * dd) ** 2 / (np.abs(n) ** 2 + np.abs(d) ** 2) ** 2

    return density


def _chart_poles(poles, chart):
    """Pole positions in the chart coordinate (poles at the chart's own infinity are dropped)."""
    out = []
    for p in poles:
        if chart == "z":
            if p is not None:
                out.append(complex(p))
        elif p is None:
            out.append(0j)
        elif p != 0:
            out.append(1 / complex(p))
    return out


def _chart_integral(density, grid, radius, poles):
    """Midpoint rule on the unit disk of one chart; cells near ends are replaced by a tail term.

    At a planar end the Gauss map is regular, so each dropped cell is charged
    the density at the end itself.
    """
    nr, na = grid
    r = (np.arange(nr) + 0.5) / nr
    t = 2 * np.pi * (np.arange(na) + 0.5) / na
    R, T = np.meshgrid(r, t, indexing="ij")
    w = R * np.exp(1j * T)
    cell = R * (1.0 / nr) * (2 * np.pi / na)
    vals = density(w) * cell
    keep = np.ones_like(R, dtype=bool)
    tail = []
    for p in poles:
        near = keep & (np.abs(w - p) < radius)
        if near.any():
            tail.append(float(density(np.array([p]))[0]) * math.fsum(cell[near].tolist()))
        keep &= ~near
    return math.fsum(vals[keep].tolist()), tail


def _quadrature(N, D, poles, grid, radius, charts):
    parts = []
    for chart in charts:
        body, tails = _chart_integral(_density_fn(N, D, chart), grid, radius, _chart_poles(poles, chart))
        parts.append(body)
        parts.extend(tails)
    return math.fsum(parts)


def total_curvature(F: MeroMap3, mesh: MeshSpec | None = None, levels: int = 4,
                    tolerance: float = 0.01, precision: int | None = None) -> EnergyReport:
    """Total curvature ``int (-K) dA`` by two-chart quadrature of the Gauss-map pullback density.

    ``mesh.grid`` is the finest level of a ladder that halves both divisions
    ``levels - 1`` times; the exclusion radius scales like ``1/sqrt(radial divisions)``.

    Raises
    ------
    QuadratureError
        If the finest level differs from ``4 pi (n-1)`` by more than ``tolerance`` (relative).
    """
    mesh = mesh or MeshSpec()
    precision = precision or default_precision()
    poles = list(_all_poles(F, precision))
    n = len(poles)
    N, D = gauss_map_polys(F)
    deg = max(N.degree, D.degree)
    willmore = 4 * math.pi * (n - 1)
    nr_max, na_max = mesh.grid
    ladder = []
    for j in reversed(range(levels)):
        grid = (nr_max >> j, na_max >> j)
        if min(grid) < 8:
            continue
        radius = mesh.exclusion_radius * math.sqrt(nr_max / grid[0])
        est = _quadrature(N, D, poles, grid, radius, mesh.charts)
        ladder.append({"grid": list(grid), "exclusion_radius": radius, "estimate": est,
                       "relative_error": abs(est - willmore) / willmore if willmore else abs(est)})
    errors = [step["relative_error"] for step in ladder]
    bands = [0.01, 0.005, 0.0025]
    converged = len(errors) >= 3 and all(e <= b for e, b in zip(errors[-3:], bands))
    report = EnergyReport(
        n=n,
        total_curvature=4 * math.pi * deg,
        willmore=willmore,
        quadrature_estimate=ladder[-1]["estimate"],
        relative_error=errors[-1],
        gauss_degree=deg,
        ladder=ladder,
        converged=converged,
    )
    if report.relative_error > tolerance:
        raise QuadratureError(
            f"quadrature {report.quadrature_estimate:.6f} misses 4*pi*(n-1) = {willmore:.6f} "
            f"by {report.relative_error:.2%}"
        )
    return report


# ---------------------------------------------------------------------------
# meshes


@dataclass
class Mesh:
    vertices: np.ndarray      # (V, 3) points of the minimal surface in R^3
    s3: np.ndarray            # (V, 4) the same points on S^3
    faces: np.ndarray         # (T, 3) 0-based vertex indices
    z: np.ndarray             # (V,) parameter values (inf for z = infinity)
    excluded: int             # number of grid vertices dropped near poles
    boundary_loops: int


def _eval_numpy(F: MeroMap3, z: np.ndarray, chart: str) -> np.ndarray:
    out = np.empty((z.size, 3))
    for k, f in enumerate(F.F):
        nd, dd = f.num.degree, f.den.degree
        if f.is_zero():
            out[:, k] = 0.0
            continue
        m = max(nd, dd)
        n_c, d_c = _np_coeffs(f.num, m), _np_coeffs(f.den, m)
        if chart == "1/z":
            n_c, d_c = n_c[::-1], d_c[::-1]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[:, k] = (np.polyval(n_c, z) / np.polyval(d_c, z)).real
    return out


def _ring_params(nr, na, chart):
    """Parameter values (in the chart coordinate) of rings ``j = 0..nr`` ({centre} then circles)."""
    t = 2 * np.pi * np.arange(na) / na
    rings = [np.zeros(1, dtype=complex)]
    for j in range(1, nr + 1):
        rings.append((j / nr) * np.exp(1j * t if chart == "z" else -1j * t))
    return rings


def make_mesh(F: MeroMap3, mesh: MeshSpec | None = None, precision: int | None = None,
              degenerate_fraction: float = 1e-3) -> Mesh:
    """Triangulate both charts on a shared unit-circle seam and drop vertices near the ends.

    Raises
    ------
    DegenerateMetricError
        If more than ``degenerate_fraction`` of the triangles have (relative) zero area.
    """
    mesh = mesh or MeshSpec(grid=(32, 64))
    precision = precision or default_precision()
    nr, na = mesh.grid
    poles = list(_all_poles(F, precision))
    zc = _ring_params(nr, na, "z")
    uc = _ring_params(nr, na, "1/z")[:-1]  # the unit circle is shared with the z-chart
    rings, coords = [], []
    for chart, ring_list in (("z", zc), ("1/z", uc[::-1])):
        for ring in ring_list:
            rings.append((chart, ring))
    # evaluate and exclude
    pts, zs, keep_all = [], [], []
    for chart, w in rings:
        cp = _chart_poles(poles, chart) if chart == "z" else _chart_poles(poles, "1/z")
        if chart == "z":
            cp += [complex(p) for p in poles if p is not None and abs(p) > 1]
        else:
            cp += [1 / complex(p) for p in poles if p is not None and 0 < abs(p) <= 1]
        keep = np.ones(w.size, dtype=bool)
        for p in cp:
            keep &= np.abs(w - p) >= mesh.exclusion_radius
        pts.append(_eval_numpy(F, w, chart))
        with np.errstate(divide="ignore"):
            zs.append(w if chart == "z" else np.where(w == 0, np.inf, 1 / np.where(w == 0, 1, w)))
        keep_all.append(keep)
        coords.append(chart)
    # index bookkeeping: ring r holds 1 or na vertices
    sizes = [w.size for _, w in rings]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    xyz = np.concatenate(pts)
    keep = np.concatenate(keep_all)
    zall = np.concatenate(zs)
    faces = []
    for r in range(len(rings) - 1):
        a, b = sizes[r], sizes[r + 1]
        oa, ob = offsets[r], offsets[r + 1]
        for l in range(na):
            l2 = (l + 1) % na
            if a == 1:
                faces.append((oa, ob + l, ob + l2))
            elif b == 1:
                faces.append((oa + l, ob, oa + l2))
            else:
                faces.append((oa + l, ob + l, ob + l2))
                faces.append((oa + l, ob + l2, oa + l2))
    faces = np.array(faces, dtype=np.int64)
    faces = faces[np.all(keep[faces], axis=1)]
    if not np.all(np.isfinite(xyz[keep])):
        raise ExclusionError("non-finite vertex: exclusion radius too small for these poles")
    # reindex
    new_index = -np.ones(keep.size, dtype=np.int64)
    new_index[keep] = np.arange(int(keep.sum()))
    faces = new_index[faces]
    verts = xyz[keep]
    # degeneracy
    e1 = verts[faces[:, 1]] - verts[faces[:, 0]]
    e2 = verts[faces[:, 2]] - verts[faces[:, 0]]
    area = 0.5 * np.linalg.norm(np.cross(e1, e2), axis=1)
    scale = np.sum(e1 * e1, axis=1) + np.sum(e2 * e2, axis=1)
    bad = area <= 1e-12 * np.maximum(scale, np.finfo(float).tiny)
    if faces.size == 0 or bad.mean() > degenerate_fraction:
        raise DegenerateMetricError(
            f"{bad.mean():.1%} of triangles are degenerate: the map is not an immersion"
        )
    return Mesh(
        vertices=verts,
        s3=inverse_stereographic(verts),
        faces=faces,
        z=zall[keep],
        excluded=int((~keep).sum()),
        boundary_loops=_boundary_loops(faces),
    )


def _boundary_loops(faces: np.ndarray) -> int:
    """Connected components of the boundary edges (edges used by exactly one triangle)."""
    edges = np.sort(np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]]), axis=1)
    uniq, counts = np.unique(edges, axis=0, return_counts=True)
    boundary = uniq[counts == 1]
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in boundary:
        ra, rb = find(int(a)), find(int(b))
        if ra != rb:
            parent[ra] = rb
    return len({find(int(v)) for v in boundary.ravel()})


def write_obj(mesh: Mesh, path, view: str = "r3") -> None:
    """Wavefront OBJ with 1-based faces.  ``view="s3"`` writes the S^3 points projected from :data:`VIEW_POLE`."""
    verts = mesh.vertices if view == "r3" else stereographic(mesh.s3, pole=VIEW_POLE)
    if not np.all(np.isfinite(verts)):
        raise ExclusionError("view pole lies on the surface: choose another projection")
    lines = [f"v {x + 0.0:.12g} {y + 0.0:.12g} {z + 0.0:.12g}" for x, y, z in verts]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.faces]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_s3_sidecar(mesh: Mesh, path) -> None:
    """JSON sidecar with the 4D coordinates of the S^3 mesh (same vertex order as the OBJ)."""
    payload = {"projection_pole": list(VIEW_POLE),
               "vertices_s3": [[round(float(c), 15) for c in v] for v in mesh.s3]}
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
