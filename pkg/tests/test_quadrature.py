from fractions import Fraction

import pytest

from cfx.operators import FirstOrderOp
from cfx.poly import Poly, x_vars
from cfx.quadrature import (SeparableSum, gauss_points_for_degree, gauss_rule,
                            integrate_poly_box, integrate_poly_face,
                            substitute_axis, uni_diff, uni_integral)
from cfx.rational import cq

V = x_vars(3)


def test_gauss_rule_exact_on_monomials():
    nodes, weights = gauss_rule(3)
    for e in range(6):  # exact through degree 5
        approx = sum(w * x ** e for x, w in zip(nodes, weights))
        exact = 0.0 if e % 2 else 2.0 / (e + 1)
        assert approx == pytest.approx(exact, abs=1e-14)


def test_points_for_degree():
    assert gauss_points_for_degree(0) == 2
    assert gauss_points_for_degree(4) == 3
    assert gauss_points_for_degree(5) == 3
    assert gauss_points_for_degree(6) == 4


def test_box_integration_separable():
    p = Poly.var(V, "x1") * Poly.var(V, "x1")
    val = integrate_poly_box(p, [0, 0, 0], [1, 1, 1])
    assert val.real == pytest.approx(1 / 3, rel=1e-14)
    assert val.imag == 0


def test_doubling_resolution_stable():
    p = Poly.var(V, "x1") ** 3 * Poly.var(V, "x2")
    a = integrate_poly_box(p, [-1, 0, 0], [1, 2, 1], min_points=2)
    b = integrate_poly_box(p, [-1, 0, 0], [1, 2, 1], min_points=4)
    assert a.real == pytest.approx(b.real, abs=1e-13)


def test_substitute_axis_exact():
    p = Poly.var(V, "x1") * Poly.var(V, "x2") + Poly.var(V, "x1") ** 2
    q = substitute_axis(p, 0, Fraction(1, 2))
    assert q == Poly.var(V, "x2").scale(Fraction(1, 2)) + Poly.const(V, Fraction(1, 4))


def test_face_integration_matches_divergence():
    # volume integral of d/dx1 equals the difference of the two face integrals
    p = Poly.var(V, "x1") ** 2 * Poly.var(V, "x2")
    dp = p.diff("x1")
    volume = integrate_poly_box(dp, [0, 0, 0], [1, 1, 1])
    hi = integrate_poly_face(p, [0, 0, 0], [1, 1, 1], 0, Fraction(1))
    lo = integrate_poly_face(p, [0, 0, 0], [1, 1, 1], 0, Fraction(0))
    assert volume.real == pytest.approx((hi - lo).real, abs=1e-13)


def test_uni_helpers():
    assert uni_diff((Fraction(1), Fraction(2), Fraction(3))) == (2, 6)
    assert uni_integral((Fraction(0), Fraction(1)), 0, 2) == 2


def test_separable_sum_against_expanded():
    factors = {0: (Fraction(1), Fraction(1)), 1: (Fraction(2), Fraction(0), Fraction(1))}
    s = SeparableSum.product(3, factors)
    # expanded polynomial (1 + x1)(2 + x2^2)
    p = (Poly.const(V, 1) + Poly.var(V, "x1")) * \
        (Poly.const(V, 2) + Poly.var(V, "x2") ** 2)
    lows, highs = [0, 0, 0], [1, 1, 1]
    exact = s.integrate_box(lows, highs)
    via_poly = integrate_poly_box(p, lows, highs)
    assert complex(exact) == pytest.approx(via_poly, rel=1e-14)


def test_separable_apply_first_order_op():
    factors = {0: (Fraction(0), Fraction(0), Fraction(1))}  # x1^2
    s = SeparableSum.product(3, factors)
    op = FirstOrderOp(V, {"x1": Poly.var(V, "x2")})  # x2 d/dx1
    out = s.apply_op(op, {name: i for i, name in enumerate(V)})
    # x2 * 2 x1
    expected = Poly.var(V, "x1") * Poly.var(V, "x2") * 2
    val = out.integrate_box([0, 0, 0], [1, 1, 1])
    want = integrate_poly_box(expected, [0, 0, 0], [1, 1, 1])
    assert complex(val) == pytest.approx(want, rel=1e-14)


def test_separable_integrate_against_poly():
    s = SeparableSum.product(3, {0: (Fraction(1), Fraction(1))})  # 1 + x1
    p = Poly.var(V, "x1")
    got = s.integrate_against_poly(p, [0, 0, 0], [1, 1, 1])
    # int_0^1 x(1+x) dx = 5/6
    assert got == cq(Fraction(5, 6))
