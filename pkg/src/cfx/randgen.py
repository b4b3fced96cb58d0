"""Seeded generators for random test data.

Every verification run records its master seed; per-trial generators are
derived deterministically so that identical configurations reproduce
byte-identical reports.  Coefficients are small integers (optionally with a
small imaginary part) so all downstream algebra stays exact.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from itertools import combinations
from math import comb

from .exterior import ExtForm
from .poly import Poly
from .rational import ComplexRational
from .spinor import SpinorField

DEFAULT_MAX_DEGREE = 6


def configured_max_degree() -> int:
    """Degree cap for generated data; settable via CFX_MAX_DEGREE."""
    value = os.environ.get("CFX_MAX_DEGREE")
    return int(value) if value else DEFAULT_MAX_DEGREE


class SectionGenerator:
    """Deterministic sparse random polynomials, forms and slot fields."""

    def __init__(self, seed: int, degree: int = 3, terms: int = 3,
                 coeff_bound: int = 3, complex_coeffs: bool = True):
        self.seed = seed
        self.degree = min(degree, configured_max_degree())
        self.terms = terms
        self.coeff_bound = coeff_bound
        self.complex_coeffs = complex_coeffs
        self.rng = random.Random(seed)

    def spawn(self, tag: int) -> "SectionGenerator":
        """Child generator with a derived seed (stable across runs)."""
        return SectionGenerator(self.seed * 1_000_003 + tag, self.degree,
                                self.terms, self.coeff_bound, self.complex_coeffs)

    def coefficient(self) -> ComplexRational:
        b = self.coeff_bound
        re = self.rng.randint(-b, b)
        while re == 0:
            re = self.rng.randint(-b, b)
        im = self.rng.randint(-b, b) if self.complex_coeffs else 0
        return ComplexRational(re, im)

    def exponents(self, nvars: int, degree=None) -> tuple:
        degree = self.degree if degree is None else degree
        total = self.rng.randint(0, degree)
        expo = [0] * nvars
        for _ in range(total):
            expo[self.rng.randrange(nvars)] += 1
        return tuple(expo)

    def poly(self, variables, degree=None) -> Poly:
        variables = tuple(variables)
        p = Poly.zero(variables)
        for _ in range(self.rng.randint(1, self.terms)):
            p = p + Poly.monomial(variables, self.exponents(len(variables), degree),
                                  self.coefficient())
        return p

    def form(self, dim: int, degree_form: int, variables, poly_degree=None) -> ExtForm:
        idxs = list(combinations(range(dim), degree_form))
        chosen = self.rng.sample(idxs, k=min(len(idxs), self.rng.randint(1, 3)))
        comps = {idx: self.poly(variables, poly_degree) for idx in chosen}
        return ExtForm(dim, degree_form, variables, comps)

    def slot_field(self, sigma: int, basis: str, dim: int, degree_form: int,
                   variables, poly_degree=None) -> SpinorField:
        slots = [self.form(dim, degree_form, variables, poly_degree)
                 for _ in range(sigma + 1)]
        return SpinorField(sigma, basis, slots)

    def tuple_field(self, sigma: int, dim: int, degree_form: int, variables,
                    poly_degree=None) -> SpinorField:
        """Random symmetric tuple field (components depend only on the 1-count)."""
        reps = {a: self.form(dim, degree_form, variables, poly_degree)
                for a in range(sigma + 1)}
        from itertools import product
        comps = {idx: reps[sum(idx)] for idx in product((0, 1), repeat=sigma)}
        return SpinorField(sigma, "tuple", comps,
                           dim=dim, degree=degree_form, variables=variables)

    def rational_vector(self, size: int, bound: int = 4) -> list:
        while True:
            vec = [Fraction(self.rng.randint(-bound, bound),
                            self.rng.randint(1, 3)) for _ in range(size)]
            if any(vec):
                return vec

    def symmetric_matrix(self, size: int, bound: int = 3) -> list:
        m = [[Fraction(0)] * size for _ in range(size)]
        for i in range(size):
            for j in range(i, size):
                val = Fraction(self.rng.randint(-bound, bound))
                m[i][j] = val
                m[j][i] = val
        return m

    def psh_quadratic(self, variables, nx: int, scale: Fraction = Fraction(1)) -> Poly:
        """Random convex-type quadratic sum_a c_a x_a^2 (c_a > 0) plus linear terms.

        Each x-squared coefficient is positive, which makes the associated
        degree-2 form a nonnegative combination of the standard positive
        pair forms on any of our groups.
        """
        variables = tuple(variables)
        p = Poly.zero(variables)
        for a in range(nx):
            c = Fraction(self.rng.randint(1, 4)) * scale
            p = p + Poly.monomial(variables,
                                  tuple(2 if i == a else 0 for i in range(len(variables))),
                                  ComplexRational(c))
        for _ in range(self.rng.randint(0, 2)):
            a = self.rng.randrange(nx)
            c = Fraction(self.rng.randint(-3, 3)) * scale
            if c:
                p = p + Poly.monomial(variables,
                                      tuple(1 if i == a else 0 for i in range(len(variables))),
                                      ComplexRational(c))
        return p

    def quaternion(self, bound: int = 3) -> tuple:
        while True:
            q = tuple(Fraction(self.rng.randint(-bound, bound)) for _ in range(4))
            if any(q):
                return q

    def right_type_matrix(self, n: int, bound: int = 3) -> list:
        """Random symmetric matrix projected onto the curvature-free locus.

        Each 4x4 block is adjusted to satisfy the four linear conditions
        (trace and the three skew combinations); the mirror block keeps the
        matrix symmetric.
        """
        S = self.symmetric_matrix(4 * n, bound)
        for l in range(n):
            for m in range(l, n):
                i, j = 4 * l, 4 * m
                S[i + 3][j + 3] = -(S[i][j] + S[i + 1][j + 1] + S[i + 2][j + 2])
                if l != m:
                    S[i + 3][j + 2] = S[i][j + 1] - S[i + 1][j] + S[i + 2][j + 3]
                    S[i + 3][j + 1] = S[i + 2][j] - S[i][j + 2] + S[i + 1][j + 3]
                    S[i + 3][j] = S[i][j + 3] + S[i + 1][j + 2] - S[i + 2][j + 1]
                for a in range(4):
                    for b in range(4):
                        S[j + b][i + a] = S[i + a][j + b]
        return S
