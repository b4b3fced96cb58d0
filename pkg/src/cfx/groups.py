"""Step-two nilpotent groups attached to quadratic hypersurfaces.

A group is determined by a symmetric 4n x 4n rational matrix S; its bracket
structure lives in the three skew matrices B^beta = S Ibeta + Ibeta S where
Ibeta is the block-diagonal quaternion action.  Classification predicates
(right-type, stratified, nondegenerate central pairing) are exact except
where a grid sampling is explicitly reported as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .operators import FirstOrderOp
from .poly import Poly, group_vars
from .rational import ComplexRational

# Two commuting quaternion representations on R^4; each triple satisfies
# (E^1)^2 = (E^2)^2 = (E^3)^2 = -Id and E^1 E^2 = E^3.
I_MATS = (
    ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0)),
    ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0)),
    ((0, 0, 0, 1), (0, 0, -1, 0), (0, 1, 0, 0), (-1, 0, 0, 0)),
)
J_MATS = (
    ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0)),
    ((0, 0, 1, 0), (0, 0, 0, -1), (-1, 0, 0, 0), (0, 1, 0, 0)),
    ((0, 0, 0, 1), (0, 0, 1, 0), (0, -1, 0, 0), (-1, 0, 0, 0)),
)
ID4 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def mat(rows) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def mat_mul(a, b) -> tuple:
    size_i, size_k, size_j = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(size_k)) for j in range(size_j))
        for i in range(size_i)
    )


def mat_add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, s) -> tuple:
    s = Fraction(s)
    return tuple(tuple(x * s for x in row) for row in a)


def mat_neg(a) -> tuple:
    return mat_scale(a, -1)


def mat_transpose(a) -> tuple:
    return tuple(tuple(a[j][i] for j in range(len(a))) for i in range(len(a[0])))


def mat_is_zero(a) -> bool:
    return all(x == 0 for row in a for x in row)


def mat_eq(a, b) -> bool:
    return mat_is_zero(mat_add(a, mat_neg(b)))


def block_diag(block, count: int) -> tuple:
    size = len(block)
    total = size * count
    out = [[Fraction(0)] * total for _ in range(total)]
    for c in range(count):
        for i in range(size):
            for j in range(size):
                out[c * size + i][c * size + j] = Fraction(block[i][j])
    return tuple(tuple(row) for row in out)


def quaternion_relations_ok(triple, orientation: int = 1) -> bool:
    """Squares are -Id and the cyclic products close with the given orientation.

    orientation +1: E1 E2 = E3 (and cyclic); orientation -1: the mirrored
    table E2 E1 = E3.  The two block factors of so(4) realize one of each.
    """
    e1, e2, e3 = (mat(m) for m in triple)
    neg_id = mat_scale(mat(ID4), -1)
    if orientation == 1:
        products = [(e1, e2, e3), (e2, e3, e1), (e3, e1, e2)]
    elif orientation == -1:
        products = [(e2, e1, e3), (e3, e2, e1), (e1, e3, e2)]
    else:
        raise ValueError("orientation must be +1 or -1")
    checks = [
        mat_eq(mat_mul(e1, e1), neg_id),
        mat_eq(mat_mul(e2, e2), neg_id),
        mat_eq(mat_mul(e3, e3), neg_id),
    ]
    checks += [mat_eq(mat_mul(a, b), c) for a, b, c in products]
    # anticommutation of distinct elements
    checks += [
        mat_eq(mat_mul(e1, e2), mat_neg(mat_mul(e2, e1))),
        mat_eq(mat_mul(e2, e3), mat_neg(mat_mul(e3, e2))),
        mat_eq(mat_mul(e3, e1), mat_neg(mat_mul(e1, e3))),
    ]
    return all(checks)


def representations_commute() -> bool:
    return all(
        mat_eq(mat_mul(mat(i_m), mat(j_m)), mat_mul(mat(j_m), mat(i_m)))
        for i_m in I_MATS for j_m in J_MATS
    )


@dataclass(frozen=True)
class GroupSpec:
    """Symmetric matrix S with derived bracket matrices B^1, B^2, B^3."""

    n: int
    S: tuple
    B: tuple = field(init=False)

    def __post_init__(self):
        size = 4 * self.n
        S = mat(self.S)
        if len(S) != size or any(len(row) != size for row in S):
            raise ValueError(f"S must be {size}x{size}")
        if not mat_eq(S, mat_transpose(S)):
            raise ValueError("S must be symmetric")
        object.__setattr__(self, "S", S)
        bmats = []
        for beta in range(3):
            ib = block_diag(I_MATS[beta], self.n)
            b = mat_add(mat_mul(S, ib), mat_mul(ib, S))
            bmats.append(b)
        object.__setattr__(self, "B", tuple(bmats))

    # -- canonical examples ------------------------------------------------------

    @classmethod
    def abelian(cls, n: int) -> "GroupSpec":
        return cls(n, tuple(tuple(Fraction(0) for _ in range(4 * n)) for _ in range(4 * n)))

    @classmethod
    def right_qh(cls, n: int) -> "GroupSpec":
        """Blockwise diag(-3,1,1,1): the right quaternionic Heisenberg structure."""
        block = ((-3, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        return cls(n, block_diag(block, n))

    @classmethod
    def left_qh(cls, n: int) -> "GroupSpec":
        """S = Id (squared-norm potential): the left quaternionic Heisenberg structure."""
        return cls(n, block_diag(ID4, n))

    @classmethod
    def named(cls, name: str, n: int) -> "GroupSpec":
        table = {"rightQH": cls.right_qh, "leftQH": cls.left_qh, "abelian": cls.abelian}
        if name not in table:
            raise KeyError(f"unknown group name {name!r}")
        return table[name](n)

    # -- structure ----------------------------------------------------------------

    @property
    def vars(self):
        return group_vars(self.n)

    def s_block(self, l: int, m: int) -> tuple:
        return tuple(tuple(self.S[4 * l + i][4 * m + j] for j in range(4))
                     for i in range(4))

    def b_block(self, beta: int, l: int, m: int) -> tuple:
        return tuple(tuple(self.B[beta][4 * l + i][4 * m + j] for j in range(4))
                     for i in range(4))

    def multiply(self, p, q):
        """Group product: (x, t) . (y, s) = (x + y, t + s + 2 x^T B^beta y)."""
        size = 4 * self.n
        x, t = p[:size], p[size:]
        y, s = q[:size], q[size:]
        if len(t) != 3 or len(s) != 3:
            raise ValueError(f"points must have {size}+3 coordinates")
        out_x = tuple(Fraction(a) + Fraction(b) for a, b in zip(x, y))
        out_t = []
        for beta in range(3):
            twist = sum(Fraction(x[a]) * self.B[beta][a][b] * Fraction(y[b])
                        for a in range(size) for b in range(size))
            out_t.append(Fraction(t[beta]) + Fraction(s[beta]) + 2 * twist)
        return out_x + tuple(out_t)

    def inverse(self, p):
        """Group inverse: skew bracket matrices make it plain negation."""
        return tuple(-Fraction(a) for a in p)

    def to_json(self) -> dict:
        return {"n": self.n, "S": [[str(x) for x in row] for row in self.S]}

    @classmethod
    def from_json(cls, data: dict) -> "GroupSpec":
        if "phi" in data:
            return group_from_phi(Poly.from_json(data["phi"]))
        S = [[Fraction(x) for x in row] for row in data["S"]]
        return cls(int(data["n"]), tuple(tuple(row) for row in S))


def group_from_phi(phi: Poly) -> GroupSpec:
    """Group from a homogeneous quadratic potential in x1..x_{4n}."""
    xnames = [v for v in phi.vars if v.startswith("x")]
    if len(xnames) % 4:
        raise ValueError("potential needs 4n x-variables")
    n = len(xnames) // 4
    if not phi.is_zero():
        if phi.total_degree() != 2 or not phi.is_homogeneous(2):
            raise ValueError("potential must be homogeneous quadratic")
    for expo, coeff in phi.terms.items():
        if not coeff.is_real():
            raise ValueError("potential must have rational coefficients")
        for v, e in zip(phi.vars, expo):
            if e and not v.startswith("x"):
                raise ValueError("potential must not involve center variables")
    size = 4 * n
    half = Fraction(1, 2)
    S = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            d2 = phi.diff(f"x{i+1}").diff(f"x{j+1}")
            S[i][j] = d2.constant_term().re * half
    return GroupSpec(n, tuple(tuple(row) for row in S))


# -- right-type classification ---------------------------------------------------------


def _span_decompose(block) -> Tuple[tuple, tuple]:
    """Coefficients of block on {J1, J2, J3, Id} plus the exact residual.

    The four basis matrices are trace-orthogonal with squared norm 4, so the
    coefficients come from exact trace pairings.
    """
    basis = [mat(J_MATS[0]), mat(J_MATS[1]), mat(J_MATS[2]), mat(ID4)]
    coeffs = []
    for e in basis:
        tr = sum(block[i][j] * e[i][j] for i in range(4) for j in range(4))
        coeffs.append(tr / 4)
    recon = mat(((0,) * 4,) * 4)
    for c, e in zip(coeffs, basis):
        recon = mat_add(recon, mat_scale(e, c))
    residual = mat_add(mat(block), mat_neg(recon))
    return tuple(coeffs), residual


def is_right_type(g: GroupSpec):
    """True iff every bracket block lies in span{J1,J2,J3,Id}; with certificate.

    The certificate lists each offending (l, m, beta) with the residual after
    projecting onto the span.
    """
    offending = []
    for beta in range(3):
        for l in range(g.n):
            for m in range(g.n):
                block = g.b_block(beta, l, m)
                _, residual = _span_decompose(block)
                if not mat_is_zero(residual):
                    offending.append({
                        "l": l, "m": m, "beta": beta + 1,
                        "residual": [[str(x) for x in row] for row in residual],
                    })
    return (not offending), offending


def is_right_type_via_E(g: GroupSpec) -> bool:
    """Independent route: four linear conditions on every 4x4 block of S."""
    for l in range(g.n):
        for m in range(g.n):
            s = g.s_block(l, m)
            conditions = (
                s[0][0] + s[1][1] + s[2][2] + s[3][3],
                s[0][1] - s[1][0] + s[2][3] - s[3][2],
                s[0][2] - s[2][0] - s[1][3] + s[3][1],
                s[0][3] - s[3][0] + s[1][2] - s[2][1],
            )
            if any(c != 0 for c in conditions):
                return False
    return True


# -- horizontal fields -------------------------------------------------------------------


def horizontal_fields(g: GroupSpec) -> List[FirstOrderOp]:
    """The 4n generating fields X_b = d_{x_b} + 2 sum (S Ibeta)_{ab} x_a d_{t_beta}."""
    variables = g.vars
    size = 4 * g.n
    si = [mat_mul(g.S, block_diag(I_MATS[beta], g.n)) for beta in range(3)]
    fields = []
    for b in range(size):
        coeffs = {f"x{b+1}": Poly.const(variables, 1)}
        for beta in range(3):
            p = Poly.zero(variables)
            for a in range(size):
                c = si[beta][a][b]
                if c:
                    p = p + Poly.var(variables, f"x{a+1}", ComplexRational(2 * c))
            if not p.is_zero():
                coeffs[f"t{beta+1}"] = p
        fields.append(FirstOrderOp(variables, coeffs))
    return fields


def bracket_table_matches(g: GroupSpec) -> bool:
    """[X_a, X_b] must equal 2 sum_beta B^beta_{ab} d_{t_beta}, exactly."""
    fields = horizontal_fields(g)
    variables = g.vars
    size = 4 * g.n
    for a in range(size):
        for b in range(size):
            lhs = fields[a].commutator(fields[b])
            expected = {}
            for beta in range(3):
                c = 2 * g.B[beta][a][b]
                if c:
                    expected[f"t{beta+1}"] = Poly.const(variables, ComplexRational(c))
            rhs = FirstOrderOp(variables, expected)
            if not (lhs - rhs).is_zero():
                return False
    return True


# -- stratified / central nondegeneracy -----------------------------------------------------


def is_stratified(g: GroupSpec) -> bool:
    """Brackets span the full 3-dimensional center."""
    rows = []
    size = 4 * g.n
    for a in range(size):
        for b in range(a + 1, size):
            rows.append((g.B[0][a][b], g.B[1][a][b], g.B[2][a][b]))
    return _rational_rank(rows) == 3


def _rational_rank(rows) -> int:
    m = [list(r) for r in rows if any(r)]
    rank = 0
    cols = 3
    for col in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        piv = m[rank][col]
        m[rank] = [x / piv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def central_pairing_det(g: GroupSpec, lam) -> Fraction:
    """det( sum_beta lam_beta B^beta ) for a rational covector lam, exact."""
    size = 4 * g.n
    m = [[sum(Fraction(lam[beta]) * g.B[beta][i][j] for beta in range(3))
          for j in range(size)] for i in range(size)]
    return _fraction_det(m)


def _fraction_det(m) -> Fraction:
    size = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def central_pairing_det_poly(g: GroupSpec) -> Poly:
    """Symbolic det( sum lam_beta B^beta ) as a polynomial in lam1..lam3.

    Fraction-free Bareiss elimination over the polynomial ring keeps every
    intermediate step exact.
    """
    lam_vars = ("lam1", "lam2", "lam3")
    size = 4 * g.n
    m = [[Poly.zero(lam_vars) for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for j in range(size):
            for beta in range(3):
                c = g.B[beta][i][j]
                if c:
                    m[i][j] = m[i][j] + Poly.var(lam_vars, lam_vars[beta], ComplexRational(c))
    return _bareiss_det(m, lam_vars)


def _bareiss_det(m, variables) -> Poly:
    size = len(m)
    if size == 0:
        return Poly.const(variables, 1)
    sign = 1
    prev = Poly.const(variables, 1)
    for col in range(size - 1):
        if m[col][col].is_zero():
            pivot = next((r for r in range(col + 1, size) if not m[r][col].is_zero()), None)
            if pivot is None:
                return Poly.zero(variables)
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, size):
            for c in range(col + 1, size):
                num = m[r][c] * m[col][col] - m[r][col] * m[col][c]
                m[r][c] = _exact_poly_div(num, prev)
            m[r][col] = Poly.zero(variables)
        prev = m[col][col]
    det = m[size - 1][size - 1]
    return det.scale(sign)


def _exact_poly_div(num: Poly, den: Poly) -> Poly:
    """Exact division num/den (den is known to divide num in Bareiss)."""
    if den.total_degree() == 0:
        c = den.constant_term()
        return Poly(num.vars, {e: co / c for e, co in num.terms.items()})
    # multivariate long division by a single divisor with exact quotient
    remainder = num
    quotient = Poly.zero(num.vars)
    den_terms = sorted(den.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    lead_e, lead_c = den_terms[0]
    while not remainder.is_zero():
        r_terms = sorted(remainder.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
        r_e, r_c = r_terms[0]
        diff = tuple(a - b for a, b in zip(r_e, lead_e))
        if any(d < 0 for d in diff):
            raise ArithmeticError("inexact polynomial division in fraction-free elimination")
        mono = Poly.monomial(num.vars, diff, r_c / lead_c)
        quotient = quotient + mono
        remainder = remainder - mono * den
    return quotient


def sphere_grid(resolution: int = 6):
    """Deterministic rational covectors covering all directions (cube faces)."""
    vals = [Fraction(i, resolution) for i in range(-resolution, resolution + 1)]
    seen = set()
    out = []
    for axis in range(3):
        for sign in (1, -1):
            for u in vals:
                for w in vals:
                    lam = [u, w]
                    lam.insert(axis, Fraction(sign))
                    key = tuple(lam)
                    if key not in seen:
                        seen.add(key)
                        out.append(key)
    return out


def check_condition_H(g: GroupSpec, mode: str = "exact", resolution: int = 4) -> dict:
    """Nondegeneracy of the central pairing for every nonzero covector.

    ``exact`` builds the symbolic determinant and then samples it on a
    rational direction grid; ``sampled`` evaluates determinants directly at
    the grid points.  A vanishing sample is an exact witness of failure; a
    clean grid yields the verdict "sampled-true" (a grid check, not a proof).
    """
    if mode not in ("exact", "sampled"):
        raise ValueError("mode must be 'exact' or 'sampled'")
    grid = sphere_grid(resolution)
    det_poly = None
    if mode == "exact":
        det_poly = central_pairing_det_poly(g)
        if det_poly.is_zero():
            return {"verdict": "false", "witness": ["1", "0", "0"],
                    "reason": "determinant vanishes identically"}

        def sample(lam):
            return det_poly.eval_exact([lam[0], lam[1], lam[2]]).re
    else:
        def sample(lam):
            return central_pairing_det(g, lam)

    signs = set()
    for lam in grid:
        val = sample(lam)
        if val == 0:
            return {"verdict": "false", "witness": [str(x) for x in lam],
                    "reason": "determinant vanishes at a rational covector"}
        signs.add(val > 0)
    if len(signs) > 1:
        return {"verdict": "false", "witness": None,
                "reason": "determinant changes sign on the grid"}
    result = {"verdict": "sampled-true", "grid_points": len(grid),
              "resolution": resolution,
              "note": "no zero on the sampled direction grid; not a positivity proof"}
    if det_poly is not None:
        result["det_degree"] = det_poly.total_degree()
    return result


def classify(g: GroupSpec, condition_h_mode: str = "sampled") -> dict:
    """Full classification record for one group."""
    right, certificate = is_right_type(g)
    via_e = is_right_type_via_E(g)
    result = {
        "n": g.n,
        "right_type": right,
        "right_type_via_E": via_e,
        "routes_agree": right == via_e,
        "stratified": is_stratified(g),
        "condition_H": check_condition_H(g, mode=condition_h_mode),
        "block_certificates": certificate,
    }
    return result
