import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from planarends.algebra import I, Polynomial, RationalFunction, context, poly_lcm, poly_roots
from planarends.contact import DegenerateCurveError, ProjectiveCurve4, branch_divisor, contact_curve
from planarends.klein import (
    ISOMETRY,
    CertificationError,
    MeroMap3,
    NullCurve5,
    Pluecker6,
    certify_pipeline,
    identify_W_with_C5,
    inner,
    isometry_self_test,
    omega_of,
    paper_F,
    pipeline,
    pole_structure,
    psi_embed,
    psi_invert,
    quadric_form,
    second_associated,
    verify_null_C3,
)

from _builders import Z, branched_rnc, null_line, non_null_line, rand_gauss_rational, random_contact_curve

ONE = Polynomial([1])
NIL = Polynomial([])
RNC = ProjectiveCurve4((ONE, Z, Z * Z, Z ** 3))


def _biv(**kw):
    names = ("p12", "p13", "p14", "p23", "p24", "p34")
    return Pluecker6.from_coords([kw.get(n, 0) for n in names])


# --- bivectors ------------------------------------------------------------------

def test_isometry_gram_self_test():
    ok, gram_w, gram_c5 = isometry_self_test()
    assert ok and gram_w == gram_c5


def test_isometry_entries_are_gaussian_rational():
    from planarends.algebra import ExactComplex

    assert all(isinstance(ExactComplex(c), ExactComplex) for row in ISOMETRY for c in row)


def test_quadric_form_examples():
    assert quadric_form(_biv(p13=1)).is_zero()
    assert quadric_form(_biv(p12=1, p34=-1)) == -ONE
    assert quadric_form(_biv(p12=1, p34=1)) == ONE


def test_omega_examples():
    assert omega_of(_biv(p12=1)) == ONE
    assert omega_of(_biv(p12=1, p34=-1)).is_zero()


@pytest.mark.parametrize("k", range(4, 13))
def test_second_associated_lies_in_w(k):
    eta = second_associated(contact_curve(k))
    assert omega_of(eta).is_zero()
    assert eta.plucker_relation().is_zero()
    assert eta.degree == 2 * k + 1


def test_second_associated_examples():
    assert second_associated(contact_curve(4)).degree == 9
    assert second_associated(RNC).degree == 4


def test_second_associated_of_constant_curve():
    with pytest.raises(DegenerateCurveError):
        second_associated(ProjectiveCurve4((ONE, ONE, NIL, NIL)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_identification_is_isometric_off_the_quadric(seed):
    rng = random.Random(seed)
    vals = [rand_gauss_rational(rng) for _ in range(5)]
    eta = _biv(p12=vals[0], p13=vals[1], p14=vals[2], p23=vals[3], p24=vals[4], p34=-vals[0])
    w = identify_W_with_C5(eta)
    assert inner(w.w, w.w) == quadric_form(eta)


def test_identification_requires_w():
    with pytest.raises(ValueError):
        identify_W_with_C5(_biv(p12=1))


def test_zero_bivector_maps_to_zero():
    w = identify_W_with_C5(_biv())
    assert all(p.is_zero() for p in w.w)


def test_k4_null_curve_in_c5():
    w = identify_W_with_C5(second_associated(contact_curve(4)))
    assert w.degree == 9
    assert w.norm().is_zero() and w.derivative_norm().is_zero()
    assert w.coefficient_rank() == 5


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_degree_law_on_branched_curves(seed, e):
    c = branched_rnc(random.Random(seed), e)
    beta = branch_divisor(c).total
    assert second_associated(c).degree == 2 * c.degree - 2 - beta


@pytest.mark.parametrize("k", [1, 2, 4, 5, 7])
def test_degree_law_on_family(k):
    c = contact_curve(k)
    assert second_associated(c).degree == 2 * c.degree - 2 - branch_divisor(c).total


# --- C^3 <-> quadric ---------------------------------------------------------------

def test_psi_embed_null_line():
    w = psi_embed(null_line())
    assert w.w == (NIL, Z, Z * I, NIL, ONE)
    assert w.degree == 1


def test_psi_embed_constants():
    F = MeroMap3((RationalFunction(1), RationalFunction(2), RationalFunction(I)))
    assert psi_embed(F).degree == 0


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_embed_invert_roundtrip(seed):
    c = random_contact_curve(random.Random(seed))
    eta = second_associated(c)
    w = identify_W_with_C5(eta)
    assume(not w.w[4].is_zero())
    F = psi_invert(w)
    assert verify_null_C3(F)[0]
    assert psi_invert(psi_embed(F)).F == F.F


def test_unreduced_lift_gives_simple_pole():
    half = Fraction(1, 2)
    w = NullCurve5((Z ** 4 * half, Z, Z * I, Z ** 3, Z * Z))
    assert w.norm().is_zero()
    F = psi_invert(w)
    assert F.F == (RationalFunction(1, Z), RationalFunction(I, Z), RationalFunction(Z))
    orders = {("inf" if p.point is None else complex(p.point)): p.order for p in pole_structure(F)}
    assert orders == {0j: 1, "inf": 1}


def test_invert_rejects_hyperplane_at_infinity():
    with pytest.raises(ValueError):
        psi_invert(NullCurve5((ONE, Z, Z * I, NIL, NIL)))


def test_invert_rejects_off_quadric():
    with pytest.raises(CertificationError):
        psi_invert(NullCurve5((ONE, Z, Z, NIL, ONE)))


# --- null curves ---------------------------------------------------------------------

def test_verify_null_examples():
    assert verify_null_C3(null_line())[0]
    ok, cert = verify_null_C3(non_null_line())
    assert not ok and cert == RationalFunction(2)


@pytest.mark.parametrize("k", range(4, 13))
def test_paper_F_null_with_simple_ends(k):
    F = paper_F(k)
    assert F.exact and verify_null_C3(F)[0]
    poles = pole_structure(F)
    assert len(poles) == 2 * k + 1 and all(p.order == 1 for p in poles)
    assert psi_embed(F).degree == 2 * k + 1


def test_paper_F_k4_denominator():
    F = paper_F(4)
    expected = Z * (Polynomial([45]) - Z ** 4 * 90 - Z ** 8 * 3) * 4
    common = ONE
    for f in F.F:
        common = poly_lcm(common, f.den)
    assert common == expected / expected.lc


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_paper_F_small_k(k):
    with pytest.raises(ValueError):
        paper_F(k)


def test_paper_F_unknown_variant():
    with pytest.raises(ValueError):
        paper_F(4, "other")


def test_pengxiao_variant_pole_set():
    P = 60
    F = paper_F(4, "pengxiao", P)
    ok, residual = verify_null_C3(F)
    assert ok and residual < mpmath.mpf(10) ** -(P - 20)
    ctx = context(P)
    m = -31 - 8 * ctx.sqrt(15)
    expected = [ctx.mpc(0)] + [r for r, _ in poly_roots(Polynomial([-1, 0, 0, 0, 1], ctx), P)]
    expected += [r for r, _ in poly_roots(Polynomial([-m, 0, 0, 0, 1], ctx), P)]
    poles = pole_structure(F, P)
    assert len(poles) == 9 and all(p.order == 1 and p.point is not None for p in poles)
    for x in expected:
        assert min(abs(p.point - x) for p in poles) < mpmath.mpf(10) ** -40


def test_pengxiao_variant_only_for_k4():
    with pytest.raises(ValueError):
        paper_F(5, "pengxiao")


# --- pipeline ---------------------------------------------------------------------------

@pytest.mark.parametrize("k", range(4, 13))
def test_pipeline_certificate(k):
    F, rec = certify_pipeline(k)
    assert rec["certified"], rec
    assert rec["pole_count"] == 2 * k + 1 and rec["simple_poles"]
    assert rec["degree"] == 2 * k and rec["branch_total"] == 2 * k - 3
    assert rec["embedded_degree"] == 2 * k + 1 and rec["embedded_rank"] == 5
    assert not rec["rotated"]
    assert F.planar_ends


def test_pipeline_agrees_with_paper_F_on_invariants():
    for k in (4, 5):
        a, b = pipeline(k), paper_F(k)
        assert len(pole_structure(a)) == len(pole_structure(b)) == 2 * k + 1
        assert psi_embed(a).degree == psi_embed(b).degree


@pytest.mark.parametrize("k", [3, 0])
def test_pipeline_excluded(k):
    with pytest.raises(DegenerateCurveError):
        pipeline(k)


def test_pipeline_small_k():
    with pytest.raises(ValueError):
        pipeline(2)
