"""Tensor-grid integration of polynomials over axis-aligned boxes.

Every integrand in this package is polynomial, so a Gauss rule of
sufficient order per axis is exact up to float roundoff; the separable
helpers below additionally provide exact rational moments for the factored
cutoff functions used in the estimate experiments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .poly import Poly
from .rational import ComplexRational, cq


@lru_cache(maxsize=None)
def gauss_rule(points: int) -> Tuple[tuple, tuple]:
    """Gauss-Legendre nodes/weights on [-1, 1]; exact for degree 2*points-1."""
    if points < 1:
        raise ValueError("need at least one quadrature point")
    nodes, weights = np.polynomial.legendre.leggauss(points)
    return tuple(nodes), tuple(weights)


def gauss_points_for_degree(degree: int, minimum: int = 2) -> int:
    return max(minimum, (max(degree, 0) + 2) // 2)


def axis_power_sums(a: float, b: float, points: int, max_exp: int) -> List[float]:
    """float integrals of x^e over [a, b] from the mapped Gauss rule."""
    nodes, weights = gauss_rule(points)
    half = (b - a) / 2.0
    mid = (b + a) / 2.0
    xs = [mid + half * t for t in nodes]
    sums = []
    powers = [1.0] * points
    for _ in range(max_exp + 1):
        sums.append(half * sum(w * p for w, p in zip(weights, powers)))
        powers = [p * x for p, x in zip(powers, xs)]
    return sums


def integrate_poly_box(p: Poly, lows: Sequence, highs: Sequence,
                       min_points: int = 2) -> complex:
    """Integral of a polynomial over a box, term-separable Gauss per axis."""
    naxes = len(p.vars)
    if len(lows) != naxes or len(highs) != naxes:
        raise ValueError("box does not match the variable table")
    if not p.terms:
        return 0j
    max_exp = [0] * naxes
    for expo in p.terms:
        for i, e in enumerate(expo):
            max_exp[i] = max(max_exp[i], e)
    tables = []
    for i in range(naxes):
        pts = gauss_points_for_degree(max_exp[i], min_points)
        tables.append(axis_power_sums(float(lows[i]), float(highs[i]), pts, max_exp[i]))
    total = 0j
    for expo, coeff in p.terms.items():
        prod = complex(coeff)
        for i, e in enumerate(expo):
            prod *= tables[i][e]
        total += prod
    return total


def substitute_axis(p: Poly, axis: int, value: Fraction) -> Poly:
    """Freeze one variable at a rational value (exact)."""
    value = Fraction(value)
    out: Dict[tuple, ComplexRational] = {}
    for expo, coeff in p.terms.items():
        e = expo[axis]
        scaled = coeff * cq(value ** e) if e else coeff
        new = list(expo)
        new[axis] = 0
        key = tuple(new)
        acc = out.get(key)
        acc = scaled if acc is None else acc + scaled
        out[key] = acc
    return Poly(p.vars, out)


def integrate_poly_face(p: Poly, lows: Sequence, highs: Sequence, axis: int,
                        value: Fraction, min_points: int = 2) -> complex:
    """Integral over one box face (variable ``axis`` frozen at ``value``)."""
    frozen = substitute_axis(p, axis, value)
    sub_lows = list(lows)
    sub_highs = list(highs)
    sub_lows[axis] = 0
    sub_highs[axis] = 1  # frozen axis contributes factor 1 via exponent 0
    # zero-width trick would lose the e=0 moment; instead integrate with the
    # frozen axis spanning [0,1] where x^0 integrates to 1.
    return integrate_poly_box(frozen, sub_lows, sub_highs, min_points)


# -- exact univariate machinery for factored cutoffs ----------------------------------------


def uni_mul_x(coeffs: tuple, power: int) -> tuple:
    return (Fraction(0),) * power + tuple(coeffs)


def uni_diff(coeffs: tuple) -> tuple:
    return tuple(c * i for i, c in enumerate(coeffs))[1:] or (Fraction(0),)


def uni_integral(coeffs: tuple, a: Fraction, b: Fraction) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    total = Fraction(0)
    for i, c in enumerate(coeffs):
        if c:
            total += c * (b ** (i + 1) - a ** (i + 1)) / (i + 1)
    return total


def uni_eval(coeffs: tuple, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + float(c)
    return acc


class SeparableSum:
    """Sum of terms  coeff * prod_axis f_axis(x_axis)  with exact coefficients.

    Closed under first-order operators whose coefficients are polynomials
    (each monomial folds into the per-axis factors), which is what the
    horizontal fields look like.  Keeps the factored cutoff functions from
    ever being expanded.
    """

    def __init__(self, naxes: int, terms=None):
        self.naxes = naxes
        # term: (ComplexRational, dict axis -> tuple of Fraction coefficients)
        self.terms: List[tuple] = list(terms or [])

    @classmethod
    def product(cls, naxes: int, factors: Dict[int, tuple]) -> "SeparableSum":
        return cls(naxes, [(cq(1), dict(factors))])

    @classmethod
    def zero(cls, naxes: int) -> "SeparableSum":
        return cls(naxes, [])

    def __add__(self, other: "SeparableSum") -> "SeparableSum":
        return SeparableSum(self.naxes, self.terms + other.terms)

    def scale(self, value) -> "SeparableSum":
        value = cq(value)
        return SeparableSum(self.naxes,
                            [(c * value, f) for c, f in self.terms])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def mul_monomial(self, expo: Sequence[int], coeff) -> "SeparableSum":
        coeff = cq(coeff)
        out = []
        for c, factors in self.terms:
            new = dict(factors)
            for axis, e in enumerate(expo):
                if e:
                    base = new.get(axis, (Fraction(1),))
                    new[axis] = uni_mul_x(base, e)
            out.append((c * coeff, new))
        return SeparableSum(self.naxes, out)

    def diff_axis(self, axis: int) -> "SeparableSum":
        out = []
        for c, factors in self.terms:
            base = factors.get(axis)
            if base is None:
                continue
            d = uni_diff(base)
            if all(x == 0 for x in d):
                continue
            new = dict(factors)
            new[axis] = d
            out.append((c, new))
        return SeparableSum(self.naxes, out)

    def apply_op(self, op, axis_of) -> "SeparableSum":
        """Apply a FirstOrderOp; ``axis_of`` maps variable names to axes."""
        out = SeparableSum.zero(self.naxes)
        for var, coeff_poly in op.coeffs.items():
            d = self.diff_axis(axis_of[var])
            if not d.terms:
                continue
            for expo, c in coeff_poly.terms.items():
                out = out + d.mul_monomial(expo, c)
        return out

    def integrate_box(self, lows: Sequence[Fraction], highs: Sequence[Fraction],
                      extra_expo: Sequence[int] | None = None) -> ComplexRational:
        """Exact integral, optionally against an extra monomial x^extra_expo."""
        total = cq(0)
        for c, factors in self.terms:
            prod = c
            for axis in range(self.naxes):
                base = factors.get(axis, (Fraction(1),))
                if extra_expo is not None and extra_expo[axis]:
                    base = uni_mul_x(base, extra_expo[axis])
                prod = prod * cq(uni_integral(base, lows[axis], highs[axis]))
                if prod.is_zero():
                    break
            total = total + prod
        return total

    def integrate_against_poly(self, p: Poly, lows, highs) -> ComplexRational:
        total = cq(0)
        for expo, coeff in p.terms.items():
            total = total + self.integrate_box(lows, highs, expo) * coeff
        return total

    def eval_float(self, point: Sequence[float]) -> complex:
        total = 0j
        for c, factors in self.terms:
            prod = complex(c)
            for axis, coeffs in factors.items():
                prod *= uni_eval(coeffs, point[axis])
            total += prod
        return total
