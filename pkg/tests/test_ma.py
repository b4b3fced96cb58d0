from fractions import Fraction
from math import factorial

import pytest

from cfx.boundary import TangentFrame, frak_d
from cfx.exterior import ExtForm, from_hat_components
from cfx.groups import GroupSpec
from cfx.ma import (Region, beta_form, bump_for_region, cln_experiment,
                    convergence_experiment, elementary_positive_form,
                    integrate_top, key_identity_check, ma_power,
                    positivity_check, stokes_check, sup_norm_on_grid,
                    top_coefficient, triangle, volume_form)
from cfx.poly import Poly
from cfx.randgen import SectionGenerator


@pytest.fixture(scope="module")
def right2():
    return TangentFrame(GroupSpec.right_qh(2))


@pytest.fixture(scope="module")
def left2():
    return TangentFrame(GroupSpec.left_qh(2))


def squared_norm(frame):
    p = Poly.zero(frame.vars)
    for i in range(4 * frame.n):
        expo = tuple(2 if t == i else 0 for t in range(len(frame.vars)))
        p = p + Poly.monomial(frame.vars, expo, 1)
    return p


def test_triangle_of_constant_vanishes(right2):
    assert triangle(Poly.const(right2.vars, 9), right2).is_zero()


def test_triangle_of_squared_norm(right2):
    got = triangle(squared_norm(right2), right2)
    assert (got - beta_form(right2).scale(8)).is_zero()


def test_triangle_by_independent_second_order_expansion(right2):
    # oracle: coefficient of w^a ^ w^b is the alternating pair of lowered rows
    gen = SectionGenerator(12)
    u = gen.poly(right2.vars, degree=3)
    got = triangle(u, right2)
    for a in range(4):
        for b in range(a + 1, 4):
            za = right2.Z_lower
            direct = (za[a][0].apply(za[b][1].apply(u))
                      - za[b][0].apply(za[a][1].apply(u)))
            assert (got.component((a, b)) - direct).is_zero()


def test_triangle_linear(right2):
    gen = SectionGenerator(4)
    u, v = gen.poly(right2.vars), gen.spawn(1).poly(right2.vars)
    lhs = triangle(u + v, right2)
    rhs = triangle(u, right2) + triangle(v, right2)
    assert (lhs - rhs).is_zero()


def test_triangle_requires_right_type(left2):
    with pytest.raises(ValueError, match="right-type"):
        triangle(Poly.var(left2.vars, "x1"), left2)


def test_triangle_closed(right2):
    gen = SectionGenerator(18)
    u = gen.poly(right2.vars, degree=3)
    t = triangle(u, right2)
    for a in (0, 1):
        assert frak_d(a, t, right2, raised=False).is_zero()


def test_ma_power_symmetric(right2):
    gen = SectionGenerator(25)
    us = [gen.spawn(i).psh_quadratic(right2.vars, 8) for i in range(2)]
    a = ma_power(us, right2)
    b = ma_power(list(reversed(us)), right2)
    assert (a - b).is_zero()


def test_ma_power_top_is_multiple_of_volume(right2):
    us = [squared_norm(right2)] * 2
    top = ma_power(us, right2)
    # (8 beta)^2 = 64 * 2! * volume form
    assert (top - volume_form(right2).scale(128)).is_zero()


def test_ma_power_constant_input_vanishes(right2):
    us = [Poly.const(right2.vars, 1), squared_norm(right2)]
    assert ma_power(us, right2).is_zero()


def test_ma_power_beyond_top_degree_notice(right2, caplog):
    import logging
    with caplog.at_level(logging.WARNING, logger="cfx.ma"):
        out = ma_power([squared_norm(right2)] * 3, right2)
    assert out.is_zero()
    assert "zero form" in caplog.text


def test_key_identity_on_psh_quadratics(right2):
    gen = SectionGenerator(33)
    for t in range(3):
        us = [gen.spawn(10 * t + i).psh_quadratic(right2.vars, 8) for i in range(2)]
        assert key_identity_check(us, right2)["pass"]


def test_key_identity_linear_first_input(right2):
    us = [Poly.var(right2.vars, "x1"), squared_norm(right2)]
    result = key_identity_check(us, right2)
    assert result["pass"]
    assert ma_power(us, right2).is_zero()


def test_key_identity_matches_power(right2):
    us = [squared_norm(right2)] * 2
    assert key_identity_check(us, right2)["pass"]


# -- integration ------------------------------------------------------------------------------


def test_integrate_constant_is_volume(right2):
    region = Region.cube(11, Fraction(1, 2))
    val = integrate_top(volume_form(right2), region)
    assert val.real == pytest.approx(1.0, rel=1e-12)


def test_integrate_separable_monomial(right2):
    region = Region(( (0,) * 11 ), ((1,) * 11), 3)
    form = volume_form(right2).scale_poly(Poly.var(right2.vars, "x1") ** 2)
    assert integrate_top(form, region).real == pytest.approx(1 / 3, rel=1e-12)


def test_beta_power_is_factorial_volume(right2):
    region = Region.cube(11, Fraction(1, 2))
    beta2 = beta_form(right2).wedge(beta_form(right2))
    assert (beta2 - volume_form(right2).scale(factorial(2))).is_zero()
    val = integrate_top(beta2, region)
    assert val.real == pytest.approx(factorial(2) * 1.0, rel=1e-12)


def test_integrate_top_rejects_lower_degree(right2):
    with pytest.raises(ValueError, match="top-degree"):
        integrate_top(beta_form(right2), Region.cube(11, 1))


def test_region_validation():
    with pytest.raises(ValueError, match="positive volume"):
        Region((0, 0), (0, 1))
    with pytest.raises(ValueError, match="resolution"):
        Region((0, 0), (1, 1), resolution=1)
    assert Region.cube(3, Fraction(1, 2)).volume() == 1


def test_top_coefficient_extraction(right2):
    form = volume_form(right2).scale(3)
    assert top_coefficient(form) == Poly.const(right2.vars, 3)


# -- boundary formula --------------------------------------------------------------------------


def test_stokes_zero_form(right2):
    region = Region.cube(11, Fraction(1, 2))
    T = ExtForm.zero(4, 3, right2.vars)
    report = stokes_check(Poly.var(right2.vars, "x1"), T, region, right2)
    assert report["pass"]
    assert report["lhs"] == [0.0, 0.0]


def test_stokes_bump_has_no_boundary_term():
    # h vanishing on every face kills the face integrals
    frame = TangentFrame(GroupSpec.right_qh(1))
    region = Region.cube(7, Fraction(1, 2))
    h = Poly.const(frame.vars, 1)
    for i in range(7):
        expo = tuple(2 if t == i else 0 for t in range(7))
        h = h * (Poly.monomial(frame.vars, expo, 4) - 1).scale(-1)
    gen = SectionGenerator(3)
    T = from_hat_components(2, frame.vars,
                            [gen.spawn(i).poly(frame.vars, degree=2) for i in range(2)])
    report = stokes_check(h, T, region, frame)
    assert report["pass"]
    assert abs(complex(*report["boundary"])) < 1e-12
    # interior terms cancel each other once the boundary term is gone
    assert complex(*report["lhs"]) == pytest.approx(-complex(*report["interior"]), abs=1e-9)


@pytest.mark.parametrize("aprime", [0, 1])
def test_stokes_random_data(aprime, right2):
    region = Region.cube(11, Fraction(1, 2))
    gen = SectionGenerator(6, degree=4)
    h = gen.poly(right2.vars)
    T = from_hat_components(4, right2.vars,
                            [gen.spawn(i).poly(right2.vars) for i in range(4)])
    report = stokes_check(h, T, region, right2, aprime)
    assert report["pass"], report


def test_stokes_abelian_reduces_to_classical():
    frame = TangentFrame(GroupSpec.abelian(1))
    region = Region.cube(7, Fraction(1, 2))
    # T = f * (w^0 -| top): the formula collapses to 1-D integration by parts
    f = Poly.var(frame.vars, "x1") ** 2
    T = from_hat_components(2, frame.vars, [f, Poly.zero(frame.vars)])
    h = Poly.var(frame.vars, "x2")
    report = stokes_check(h, T, region, frame, 0)
    assert report["pass"]
    # row 1 raised slot 0 is X1 - i X2 = d/dx1 - i d/dx2 in the abelian case;
    # classical parts: int h Z(f) = -int Z(h) f + boundary
    lhs = complex(*report["lhs"])
    assert lhs == pytest.approx(complex(*report["boundary"]) - complex(*report["interior"]),
                                abs=1e-12)


# -- positivity --------------------------------------------------------------------------------


def test_positive_examples(right2):
    assert positivity_check(beta_form(right2), 6)["verdict"] == "positive-on-samples"
    tri = triangle(squared_norm(right2), right2)
    assert positivity_check(tri, 6)["verdict"] == "positive-on-samples"


def test_negative_volume_witness(right2):
    result = positivity_check(volume_form(right2).scale(-1), 4)
    assert result["verdict"] == "not-positive"
    assert result["witnesses"]


def test_elementary_form_projections(right2):
    # coordinate projections generate the standard pair forms
    one = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    zero = [Fraction(0)] * 4
    eta = elementary_positive_form([[one, zero]], 4, right2.vars)
    assert (eta - ExtForm.basis(4, (0, 1), right2.vars)).is_zero()
    eta2 = elementary_positive_form([[zero, one]], 4, right2.vars)
    assert (eta2 - ExtForm.basis(4, (2, 3), right2.vars)).is_zero()


def test_cone_contains_pair_sum_and_volume(right2):
    # the pair-sum 2-form is the sum of the projection generators, and the
    # volume form is itself a single elementary generator at top degree
    one = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    zero = [Fraction(0)] * 4
    generators = [elementary_positive_form([[one, zero]], 4, right2.vars),
                  elementary_positive_form([[zero, one]], 4, right2.vars)]
    assert (generators[0] + generators[1] - beta_form(right2)).is_zero()
    top = elementary_positive_form([[one, zero], [zero, one]], 4, right2.vars)
    assert (top - volume_form(right2)).is_zero()


def test_positivity_requires_constant_coefficients(right2):
    bad = beta_form(right2).scale_poly(Poly.var(right2.vars, "x1"))
    with pytest.raises(ValueError, match="constant"):
        positivity_check(bad, 2)


# -- cutoff estimate experiments -----------------------------------------------------------------


def test_bump_vanishes_on_faces():
    region = Region.cube(3, Fraction(1, 2))
    bump = bump_for_region(region)
    assert bump.eval_float([0.5, 0.0, 0.0]) == pytest.approx(0.0, abs=1e-15)
    assert bump.eval_float([0.0, 0.0, 0.0]) == pytest.approx(1.0, rel=1e-15)


def test_cln_two_evaluations_agree(right2):
    K = Region.cube(11, Fraction(1, 2))
    L = Region.cube(11, Fraction(1, 4))
    gen = SectionGenerator(21)
    us = [gen.spawn(i).psh_quadratic(right2.vars, 8) for i in range(2)]
    for p in (1, 2):
        report = cln_experiment(us[:p], K, L, right2)
        assert report["pass"], report
        assert report["agreement"] <= 1e-6


def test_cln_scaling_invariance(right2):
    K = Region.cube(11, Fraction(1, 2))
    L = Region.cube(11, Fraction(1, 4))
    gen = SectionGenerator(29)
    u = gen.psh_quadratic(right2.vars, 8)
    base = cln_experiment([u], K, L, right2)
    scaled = cln_experiment([u.scale(3)], K, L, right2)
    assert complex(*scaled["mass_direct"]) == pytest.approx(
        3 * complex(*base["mass_direct"]), rel=1e-12)
    assert scaled["empirical_C"] == pytest.approx(base["empirical_C"], rel=1e-6)


def test_cln_region_nesting_enforced(right2):
    K = Region.cube(11, Fraction(1, 4))
    L = Region.cube(11, Fraction(1, 2))
    with pytest.raises(ValueError, match="inside"):
        cln_experiment([squared_norm(right2)], K, L, right2)


def test_sup_norm_sampling(right2):
    region = Region.cube(11, Fraction(1, 2))
    sup = sup_norm_on_grid(squared_norm(right2), region)
    # max of sum x^2 over the x-part of the box is 8 * (1/2)^2 = 2
    assert sup == pytest.approx(2.0, rel=1e-12)


def test_convergence_experiment_quick(right2):
    gen = SectionGenerator(31)
    q = gen.psh_quadratic(right2.vars, 8)
    L = Region.cube(11, Fraction(1, 4))
    report = convergence_experiment(q, right2, L, steps=16)
    assert report["monotone"]
    masses = report["masses"]
    assert all(masses[i] >= masses[i + 1] for i in range(min(len(masses), 8) - 1))
