import math

import mpmath
import numpy as np
import pytest

from planarends.algebra import RationalFunction, context
from planarends.geometry import (
    DegenerateMetricError,
    ExclusionError,
    MeshSpec,
    QuadratureError,
    conformality_residual,
    curvature_estimates,
    eval_surface,
    gauss_degree,
    inverse_stereographic,
    make_mesh,
    mean_curvature_convergence,
    metric_defect,
    random_interior_points,
    stereographic,
    total_curvature,
    write_obj,
    write_s3_sidecar,
)
from planarends.klein import MeroMap3, paper_F, pipeline

from _builders import enneper, non_null_line, null_line

P = 60


@pytest.fixture(scope="module")
def pengxiao():
    return paper_F(4, "pengxiao", P)


# --- evaluation -------------------------------------------------------------------

def test_eval_null_line():
    assert tuple(float(x) for x in eval_surface(null_line(), 1, P).xyz) == (1.0, 0.0, 0.0)
    assert tuple(float(x) for x in eval_surface(null_line(), 1j, P).xyz) == (0.0, -1.0, 0.0)


def test_eval_reproducible_across_precisions():
    a = eval_surface(paper_F(4, "pengxiao", 60), 0.5, 60).xyz
    b = eval_surface(paper_F(4, "pengxiao", 80), 0.5, 80).xyz
    assert all(math.isfinite(float(x)) for x in a)
    assert max(abs(x - y) for x, y in zip(a, b)) < mpmath.mpf(10) ** -30


def test_eval_excludes_poles(pengxiao):
    with pytest.raises(ExclusionError):
        eval_surface(pengxiao, 0, P)
    with pytest.raises(ExclusionError):
        eval_surface(pengxiao, 1.001, P, exclusion_radius=0.01)


def test_eval_s3_is_unit(pengxiao):
    s = eval_surface(pengxiao, 0.3 + 0.2j, P)
    assert abs(np.linalg.norm(s.s3) - 1) < 1e-12


# --- conformality -------------------------------------------------------------------

def test_conformality_examples():
    assert conformality_residual(null_line(), [0.3, 1 + 1j], P) == 0
    assert abs(conformality_residual(non_null_line(), [0.3], P) - 1) < 1e-12


@pytest.mark.parametrize("k", range(4, 9))
def test_conformality_paper_F(k):
    F = paper_F(k)
    pts = random_interior_points(F, 100, seed=k, precision=P)
    assert conformality_residual(F, pts, P) < mpmath.mpf(10) ** -30


def test_conformality_pengxiao(pengxiao):
    pts = random_interior_points(pengxiao, 100, seed=1, precision=P)
    assert conformality_residual(pengxiao, pts, P) < mpmath.mpf(10) ** -(P - 25)


def test_first_fundamental_form_is_conformal(pengxiao):
    d = metric_defect(pengxiao, [0.3 + 0.2j, -0.4 + 0.7j], precision=P)
    assert d["orthogonality"] < 1e-12 and d["length_mismatch"] < 1e-12


# --- stereographic projection ---------------------------------------------------------------

def test_inverse_stereographic_examples():
    assert np.allclose(inverse_stereographic([0, 0, 0]), [0, 0, 0, -1])
    assert np.allclose(inverse_stereographic([1, 0, 0]), [1, 0, 0, 0])
    assert np.allclose(inverse_stereographic([np.inf, 0, 0]), [0, 0, 0, 1])
    far = inverse_stereographic([1e200, -3e199, 7e199])
    assert np.allclose(far, [0, 0, 0, 1])


def test_inverse_stereographic_unit_norm():
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(500, 3)) * 10.0 ** rng.uniform(-5, 5, size=(500, 1))
    assert np.max(np.abs(np.linalg.norm(inverse_stereographic(pts), axis=1) - 1)) < 1e-12


def test_stereographic_inverts():
    rng = np.random.default_rng(1)
    pts = rng.normal(size=(50, 3))
    assert np.allclose(stereographic(inverse_stereographic(pts)), pts)


# --- curvature -----------------------------------------------------------------------

def test_enneper_curvature():
    z = mpmath.mpc(0.4, -0.3)
    K, H = curvature_estimates(enneper(), z, precision=P)
    expected = -4 / (1 + abs(z) ** 2) ** 4
    assert abs(K - expected) < 1e-10
    assert abs(H) < 1e-10


def test_plane_is_flat():
    K, H = curvature_estimates(null_line(), 0.2 + 0.1j, precision=P)
    assert abs(K) < 1e-20 and abs(H) < 1e-20


def test_degenerate_metric_raises():
    with pytest.raises(DegenerateMetricError):
        curvature_estimates(non_null_line(), 0.5, precision=P)
    const = MeroMap3((RationalFunction(1), RationalFunction(2), RationalFunction(3)))
    with pytest.raises(DegenerateMetricError):
        curvature_estimates(const, 0.5, precision=P)


def test_minimality_at_half(pengxiao):
    K, H = curvature_estimates(pengxiao, 0.5, h=1e-4, precision=P)
    assert abs(H) < 1e-6 and K < 0


def test_minimality_at_random_points(pengxiao):
    for z in random_interior_points(pengxiao, 20, seed=3, precision=P):
        assert abs(curvature_estimates(pengxiao, z, precision=P)[1]) < 1e-6


def test_second_order_stencil_converges_quadratically(pengxiao):
    conv = mean_curvature_convergence(pengxiao, 0.5 + 0.3j, h=1e-3, precision=P, order=2)
    assert conv["slope"] >= 1.8


# --- Gauss map and total curvature ------------------------------------------------------------

def test_gauss_degree():
    assert gauss_degree(enneper()) == 1
    assert gauss_degree(paper_F(4)) == 8
    assert gauss_degree(pipeline(5)) == 10


def test_enneper_total_curvature_oracle():
    # Enneper has one (non-planar) end; check the density integral directly against 4 pi
    from planarends.geometry import _quadrature, gauss_map_polys

    N, D = gauss_map_polys(enneper())
    est = _quadrature(N, D, [None], (256, 512), 0.02, ("z", "1/z"))
    assert abs(est - 4 * math.pi) / (4 * math.pi) < 1e-3


def test_total_curvature_paper_F_k4():
    rep = total_curvature(paper_F(4))
    assert rep.n == 9
    assert rep.willmore == pytest.approx(32 * math.pi) and round(rep.willmore, 5) == 100.53096
    assert rep.total_curvature == pytest.approx(4 * math.pi * 8)
    assert rep.relative_error < 0.0025 and rep.converged
    assert "chi = 2" in rep.derivation


def test_total_curvature_pipeline_k5():
    rep = total_curvature(pipeline(5))
    assert rep.n == 11 and rep.willmore == pytest.approx(40 * math.pi)
    assert abs(rep.quadrature_estimate - 40 * math.pi) / (40 * math.pi) < 0.01


def test_quadrature_ladder_tightens(pengxiao):
    rep = total_curvature(pengxiao)
    errs = [s["relative_error"] for s in rep.ladder]
    assert errs[-1] < errs[0]
    assert rep.converged


def test_quadrature_error_on_coarse_grid():
    with pytest.raises(QuadratureError):
        total_curvature(paper_F(8), MeshSpec(grid=(16, 32), exclusion_radius=0.3), levels=1)


# --- meshes ---------------------------------------------------------------------------------

def test_mesh_spec_validation():
    with pytest.raises(ValueError):
        MeshSpec(exclusion_radius=0)
    with pytest.raises(ValueError):
        MeshSpec(grid=(4, 64))


def test_mesh_k4(pengxiao):
    m = make_mesh(pengxiao, MeshSpec(grid=(32, 64), exclusion_radius=0.02), P)
    assert np.all(np.isfinite(m.vertices)) and np.all(np.isfinite(m.s3))
    full = 2 + (2 * 32 - 1) * 64
    assert len(m.vertices) == full - m.excluded
    assert m.boundary_loops == 9


def test_mesh_is_deterministic(pengxiao):
    spec = MeshSpec(grid=(16, 32), exclusion_radius=0.05)
    a, b = make_mesh(pengxiao, spec, P), make_mesh(pengxiao, spec, P)
    assert np.array_equal(a.vertices, b.vertices) and np.array_equal(a.faces, b.faces)


def test_constant_map_mesh_rejected():
    const = MeroMap3((RationalFunction(1), RationalFunction(2), RationalFunction(3)))
    with pytest.raises(DegenerateMetricError):
        make_mesh(const, MeshSpec(grid=(16, 32)), P)


def test_obj_format(tmp_path, pengxiao):
    m = make_mesh(pengxiao, MeshSpec(grid=(16, 32), exclusion_radius=0.05), P)
    path = tmp_path / "m.obj"
    write_obj(m, path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    verts = [l for l in lines if l.startswith("v ")]
    faces = [l for l in lines if l.startswith("f ")]
    assert len(verts) == len(m.vertices) and len(faces) == len(m.faces)
    idx = [int(t) for l in faces for t in l.split()[1:]]
    assert min(idx) == 1 and max(idx) <= len(verts)
    write_obj(m, tmp_path / "s.obj", view="s3")
    write_s3_sidecar(m, tmp_path / "s.json")
    import json

    data = json.loads((tmp_path / "s.json").read_text())
    assert len(data["vertices_s3"]) == len(m.vertices)
