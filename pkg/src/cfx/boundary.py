"""Tangential complex on the boundary group of a rigid quadratic hypersurface.

The boundary levels are pairs: a leading slot field plus a companion slot
field one form-degree lower.  The operator has four branches (below the
middle, the two middle steps, above the middle); all of them couple the
companion through the constant curvature 2-form of the group, which
vanishes exactly on right-type groups.

Only rigid (group) frames are assembled here; for a general polynomial
defining function we expose the ambient curvature and boundary 1-forms but
not the full operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional

from .exterior import ExtForm
from .flat import ConstCoeffOp, d_upper as flat_d_upper, nabla_lowered
from .groups import GroupSpec, horizontal_fields, is_right_type_via_E
from .operators import FirstOrderOp, SecondOrderOp
from .poly import Poly, x_vars
from .rational import ComplexRational, I, cq
from .spinor import SpinorField


# -- frame -----------------------------------------------------------------------------


class TangentFrame:
    """Tangential operator data for the group of a rigid quadratic hypersurface."""

    def __init__(self, group: GroupSpec):
        self.group = group
        self.n = group.n
        self.vars = group.vars
        self.dim = 2 * group.n
        self.X = horizontal_fields(group)
        self.Z_lower = self._z_rows_lower()
        self.Z_upper = [[row[1], row[0].scale(-1)] for row in self.Z_lower]
        self.T_lower = self._t_matrix()
        self.T_upper = {
            (0, 0): self.T_lower[1][0],
            (0, 1): self.T_lower[0][0].scale(-1),
            (1, 0): self.T_lower[1][1],
            (1, 1): self.T_lower[0][1].scale(-1),
        }
        self.E0 = curvature_form(group)
        self.right_type = is_right_type_via_E(group)
        rho = ambient_rho(group)
        # ambient boundary 1-forms d^a rho, kept for the general-defining-
        # function surface and oracle tests
        self.Omega = (ambient_omega(0, rho, group.n),
                      ambient_omega(1, rho, group.n))

    def _z_rows_lower(self) -> List[List[FirstOrderOp]]:
        rows = []
        for l in range(self.n):
            x1, x2, x3, x4 = self.X[4 * l:4 * l + 4]
            rows.append([x1 + x2.scale(I), (x3 + x4.scale(I)).scale(-1)])
            rows.append([x3 - x4.scale(I), x1 - x2.scale(I)])
        return rows

    def _t_matrix(self) -> List[List[FirstOrderOp]]:
        v = self.vars
        d = FirstOrderOp.partial
        return [
            [d(v, "t1", -I), d(v, "t2", -1) + d(v, "t3", I)],
            [d(v, "t2", 1) + d(v, "t3", I), d(v, "t1", I)],
        ]

    def t_symmetric_upper(self, a: int, b: int) -> FirstOrderOp:
        return (self.T_upper[(a, b)] + self.T_upper[(b, a)]).scale(Fraction(1, 2))

    def t_skew_upper(self) -> FirstOrderOp:
        return (self.T_upper[(0, 1)] - self.T_upper[(1, 0)]).scale(Fraction(1, 2))

    def require_right_type(self):
        if not self.right_type:
            raise ValueError("operation requires a right-type group (vanishing curvature)")

    def zero_form(self, degree: int) -> ExtForm:
        return ExtForm.zero(self.dim, degree, self.vars)


def frak_d(aprime: int, f: ExtForm, frame: TangentFrame, raised: bool = True) -> ExtForm:
    """Tangential exterior-type operator; raised index by default."""
    if aprime not in (0, 1):
        raise ValueError("primed index must be 0 or 1")
    if f.dim != frame.dim:
        raise ValueError(f"form dimension {f.dim} does not match frame dimension {frame.dim}")
    if f.vars != frame.vars:
        raise ValueError("variable table mismatch with frame")
    rows = frame.Z_upper if raised else frame.Z_lower
    out = ExtForm.zero(f.dim, f.degree + 1, f.vars)
    if f.degree + 1 > f.dim:
        return out
    for a, row in enumerate(rows):
        applied = f.map_coeffs(row[aprime].apply)
        if applied.is_zero():
            continue
        out = out + ExtForm.basis(f.dim, (a,), f.vars).wedge(applied)
    return out


def frak_d_lower(aprime: int, f: ExtForm, frame: TangentFrame) -> ExtForm:
    return frak_d(aprime, f, frame, raised=False)


# -- curvature --------------------------------------------------------------------------


def ambient_vars(n: int) -> tuple:
    return x_vars(4 * (n + 1))


def ambient_rho(group: GroupSpec) -> Poly:
    """Defining function x_{4n+1} - phi(x) in ambient coordinates."""
    n = group.n
    variables = ambient_vars(n)
    rho = Poly.var(variables, f"x{4 * n + 1}")
    for i in range(4 * n):
        for j in range(4 * n):
            c = group.S[i][j]
            if c:
                rho = rho - (Poly.var(variables, f"x{i+1}") *
                             Poly.var(variables, f"x{j+1}")).scale(ComplexRational(c))
    return rho


def ambient_omega(aprime: int, rho: Poly, n: int) -> ExtForm:
    """Boundary 1-form: the raised ambient operator applied to the defining function."""
    form = ExtForm.from_scalar(2 * n + 2, rho)
    return flat_d_upper(aprime, form, n)


def ambient_curvature(rho: Poly, n: int) -> ExtForm:
    """-d^0 d^1 rho over the full ambient exterior algebra."""
    form = ExtForm.from_scalar(2 * n + 2, rho)
    return -flat_d_upper(0, flat_d_upper(1, form, n), n)


def curvature_form(group: GroupSpec) -> ExtForm:
    """Constant tangential curvature 2-form of the group.

    Computed in ambient coordinates as -d^0 d^1 rho and restricted to the
    tangential index range; the coefficients are constants, re-homed to the
    group variable table.
    """
    n = group.n
    amb = ambient_curvature(ambient_rho(group), n)
    gvars = group.vars
    comps = {}
    for idx, coeff in amb.comps.items():
        if max(idx) < 2 * n:
            comps[idx] = Poly.const(gvars, coeff.constant_term())
    return ExtForm(2 * n, 2, gvars, comps)


class CurvatureForm:
    """Tangential curvature with antisymmetric component access."""

    def __init__(self, frame_or_group):
        group = getattr(frame_or_group, "group", frame_or_group)
        self.group = group
        self.form = curvature_form(group)

    def component(self, a: int, b: int) -> ComplexRational:
        """Antisymmetric coefficient E_{ab} with E = sum_{a,b} E_{ab} w^a w^b."""
        if a == b:
            return cq(0)
        if a < b:
            return self.form.component((a, b)).constant_term() / cq(2)
        return -self.component(b, a)

    def is_zero(self) -> bool:
        return self.form.is_zero()


def curvature(frame: TangentFrame) -> CurvatureForm:
    return CurvatureForm(frame)


def expected_curvature_component(group: GroupSpec, a: int, b: int) -> ComplexRational:
    """Closed-form block expression for the curvature component E_{ab}.

    Derived by expanding the second-order operator pair on the quadratic
    potential; used as an independent oracle against :func:`curvature_form`.
    """
    l, m = a // 2, b // 2
    s = group.s_block(l, m)
    if a % 2 == 0 and b % 2 == 0:
        re = s[2][0] - s[0][2] - s[3][1] + s[1][3]
        im = -(s[0][3] - s[3][0] + s[1][2] - s[2][1])
        return ComplexRational(re, im)
    if a % 2 == 1 and b % 2 == 1:
        return expected_curvature_component(group, a - 1, b - 1).conjugate()
    if a % 2 == 0 and b % 2 == 1:
        re = s[0][0] + s[1][1] + s[2][2] + s[3][3]
        im = s[3][2] - s[2][3] - s[0][1] + s[1][0]
        return ComplexRational(re, im)
    # odd-even: antisymmetry plus the even-odd case with blocks swapped
    return -expected_curvature_component(group, b, a)


# -- ambient tangential fields (zero-Cauchy-data route, used as an oracle) -----------------


def ambient_tangential_fields(group: GroupSpec):
    """Ambient vector fields annihilating the rigid defining function.

    Z_{AC'} = nabla_{AC'} - sum_B' (nabla_{AB'} rho) N_{B'C'} for tangential
    rows A; the normal block N is the last two rows of the lowered matrix.
    """
    n = group.n
    variables = ambient_vars(n)
    rho = ambient_rho(group)
    lowered = nabla_lowered(n)

    def as_polyop(const_op: ConstCoeffOp) -> FirstOrderOp:
        return FirstOrderOp(variables,
                            {v: Poly.const(variables, c) for v, c in const_op.coeffs.items()})

    normal = [[as_polyop(lowered[2 * n + o][c]) for c in (0, 1)] for o in (0, 1)]
    rows = []
    for a in range(2 * n):
        row = []
        for cprime in (0, 1):
            op = as_polyop(lowered[a][cprime])
            for bprime in (0, 1):
                grad = as_polyop(lowered[a][bprime]).apply(rho)
                correction = FirstOrderOp(
                    variables,
                    {v: grad * c for v, c in normal[bprime][cprime].coeffs.items()})
                op = op - correction
            row.append(op)
        rows.append(row)
    return rows, rho


# -- boundary levels and fields ----------------------------------------------------------


@dataclass(frozen=True)
class BoundarySpec:
    """Level bookkeeping for the boundary pair complex at fixed (n, k)."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 0:
            raise ValueError("need n >= 1 and k >= 0")

    @property
    def levels(self) -> int:
        return 2 * self.n

    @property
    def top_level(self) -> int:
        return 2 * self.n - 1

    @property
    def form_dim(self) -> int:
        return 2 * self.n

    def _check_level(self, j: int):
        if not 0 <= j <= self.top_level:
            raise ValueError(f"level {j} out of range 0..{self.top_level}")

    def _check_operator_level(self, j: int):
        if not 0 <= j <= self.top_level - 1:
            raise ValueError(f"operator level {j} out of range 0..{self.top_level - 1}")

    def sigma(self, j: int) -> int:
        return self.k - j if j <= self.k else j - self.k - 1

    def lead_shape(self, j: int):
        """(sigma, form degree, basis) of the leading component."""
        self._check_level(j)
        if j == self.k:
            return (0, self.k, "S")
        if j < self.k:
            return (self.k - j, j, "S")
        return (j - self.k - 1, j + 1, "tilde")

    def companion_shape(self, j: int):
        """Shape of the companion component, or None when it is empty."""
        self._check_level(j)
        if j == 0:
            return None
        if j == self.k:
            return (0, self.k, "S")
        if j < self.k:
            degree = j - 1
            if degree < 0:
                return None
            return (self.k - j - 1, degree, "S")
        return (j - self.k, j, "tilde")

    def lead_dim(self, j: int) -> int:
        s, d, _ = self.lead_shape(j)
        return (s + 1) * comb(self.form_dim, d)

    def companion_dim(self, j: int) -> int:
        shape = self.companion_shape(j)
        if shape is None:
            return 0
        s, d, _ = shape
        return (s + 1) * comb(self.form_dim, d)


@dataclass
class BoundaryField:
    """Level-j element of the boundary pair complex."""

    spec: BoundarySpec
    level: int
    lead: SpinorField
    companion: Optional[SpinorField]

    def __post_init__(self):
        spec, j = self.spec, self.level
        s, d, basis = spec.lead_shape(j)
        if (self.lead.sigma, self.lead.degree) != (s, d):
            raise ValueError(
                f"lead shape {(self.lead.sigma, self.lead.degree)} does not match level {j}: {(s, d)}")
        if self.lead.sigma > 0 and self.lead.basis != basis:
            raise ValueError(f"lead basis must be {basis} at level {j}")
        cshape = spec.companion_shape(j)
        if cshape is None:
            if self.companion is not None and not self.companion.is_zero():
                raise ValueError(f"level {j} has no companion slot")
            self.companion = None
        elif self.companion is not None:
            s2, d2, basis2 = cshape
            if (self.companion.sigma, self.companion.degree) != (s2, d2):
                raise ValueError(
                    f"companion shape {(self.companion.sigma, self.companion.degree)}"
                    f" does not match level {j}: {(s2, d2)}")
            if self.companion.sigma > 0 and self.companion.basis != basis2:
                raise ValueError(f"companion basis must be {basis2} at level {j}")

    @classmethod
    def zero(cls, spec: BoundarySpec, j: int, frame: TangentFrame) -> "BoundaryField":
        s, d, basis = spec.lead_shape(j)
        lead = SpinorField.zero(s, basis, spec.form_dim, d, frame.vars)
        cshape = spec.companion_shape(j)
        comp = None
        if cshape is not None:
            s2, d2, basis2 = cshape
            comp = SpinorField.zero(s2, basis2, spec.form_dim, d2, frame.vars)
        return cls(spec, j, lead, comp)

    def has_companion(self) -> bool:
        return self.spec.companion_shape(self.level) is not None

    def companion_slot(self, a: int, frame: TangentFrame) -> ExtForm:
        spec, j = self.spec, self.level
        cshape = spec.companion_shape(j)
        if cshape is None:
            degree = max(spec.lead_shape(j)[1] - 1, 0)
            return ExtForm.zero(spec.form_dim, degree, frame.vars)
        if self.companion is None:
            return ExtForm.zero(spec.form_dim, cshape[1], frame.vars)
        return self.companion.slot(a)

    def is_zero(self) -> bool:
        lead_zero = self.lead.is_zero()
        comp_zero = self.companion is None or self.companion.is_zero()
        return lead_zero and comp_zero

    def to_json(self) -> dict:
        return {
            "n": self.spec.n,
            "k": self.spec.k,
            "level": self.level,
            "lead": self.lead.to_json(),
            "companion": self.companion.to_json() if self.companion else None,
        }


# -- the boundary operator ----------------------------------------------------------------


def boundary_D(frame: TangentFrame, fld: BoundaryField) -> BoundaryField:
    """Level-j boundary operator; branch chosen by the position of j relative to k."""
    spec, j, k = fld.spec, fld.level, fld.spec.k
    spec._check_operator_level(j)
    if j <= k - 2:
        return _branch_below(frame, fld)
    if j == k - 1:
        return _branch_middle_in(frame, fld)
    if j == k:
        return _branch_middle_out(frame, fld)
    return _branch_above(frame, fld)


def make_boundary_Dj(frame: TangentFrame, spec: BoundarySpec, j: int):
    spec._check_operator_level(j)
    return lambda fld: boundary_D(frame, fld)


def _dd(frame, f, a, b):
    return frak_d(a, frak_d(b, f, frame), frame)


def _apply_T(frame, key, form: ExtForm) -> ExtForm:
    return form.map_coeffs(frame.T_upper[key].apply)


def _branch_below(frame: TangentFrame, fld: BoundaryField) -> BoundaryField:
    spec, j = fld.spec, fld.level
    E0 = frame.E0
    f = fld.lead.slot
    has_comp = fld.has_companion()
    G = lambda a: fld.companion_slot(a, frame)
    out_lead = []
    for b in range(spec.sigma(j + 1) + 1):
        term = frak_d(0, f(b), frame) + frak_d(1, f(b + 1), frame)
        if has_comp:
            term = term + E0.wedge(G(b))
        out_lead.append(term)
    out_comp = []
    for c in range(spec.sigma(j + 2) + 1):
        term = -_apply_T(frame, (0, 0), f(c))
        term = term - (_apply_T(frame, (0, 1), f(c + 1)) + _apply_T(frame, (1, 0), f(c + 1)))
        term = term - _apply_T(frame, (1, 1), f(c + 2))
        if has_comp:
            term = term - (frak_d(0, G(c), frame) + frak_d(1, G(c + 1), frame))
        out_comp.append(term)
    lead = SpinorField(spec.sigma(j + 1), "S", out_lead)
    comp = SpinorField(spec.sigma(j + 2), "S", out_comp)
    return BoundaryField(spec, j + 1, lead, comp)


def _branch_middle_in(frame: TangentFrame, fld: BoundaryField) -> BoundaryField:
    """j = k-1: both output components are plain middle-degree forms."""
    spec, j = fld.spec, fld.level
    E0 = frame.E0
    f0, f1 = fld.lead.slot(0), fld.lead.slot(1)
    has_comp = fld.has_companion()
    out_lead = frak_d(0, f0, frame) + frak_d(1, f1, frame)
    out_comp = frame.zero_form(spec.k)
    if has_comp:
        G = fld.companion_slot(0, frame)
        out_lead = out_lead + E0.wedge(G)
        half = Fraction(1, 2)
        skew_dd = (_dd(frame, G, 0, 1) - _dd(frame, G, 1, 0)).scale(half)
        t_skew = G.map_coeffs(frame.t_skew_upper().apply)
        out_comp = out_comp + skew_dd + E0.wedge(t_skew)
    for ap in (0, 1):
        for bp in (0, 1):
            lowered = fld.lead.slot(ap).map_coeffs(frame.T_lower[bp][ap].apply)
            out_comp = out_comp - frak_d(bp, lowered, frame)
    lead = SpinorField(0, "S", [out_lead])
    comp = SpinorField(0, "S", [out_comp])
    return BoundaryField(spec, j + 1, lead, comp)


def _branch_middle_out(frame: TangentFrame, fld: BoundaryField) -> BoundaryField:
    """j = k: output lead is the double operator; companion is an ascending pair."""
    spec, j = fld.spec, fld.level
    E0 = frame.E0
    F1 = fld.lead.slot(0)
    F2 = fld.companion_slot(0, frame)
    coupled = F1.map_coeffs(frame.T_upper[(1, 0)].apply) + F2
    out_lead = _dd(frame, F1, 0, 1) - E0.wedge(coupled)

    def h(ap: int) -> ExtForm:
        term = frak_d(1, F1.map_coeffs(frame.T_lower[ap][0].apply), frame)
        term = term - frak_d(0, F1.map_coeffs(frame.T_lower[ap][1].apply), frame)
        # lowered-index operators: first slot is -d^1, second slot is d^0
        dn = -frak_d(1, F2, frame) if ap == 0 else frak_d(0, F2, frame)
        return term - dn

    # pair (h_0, h_1) with a lowered free index corresponds to ascending
    # slots (-h_1, +h_0)
    out_comp = SpinorField(1, "tilde", [-h(1), h(0)])
    lead = SpinorField(0, "tilde", [out_lead])
    return BoundaryField(spec, j + 1, lead, out_comp)


def _branch_above(frame: TangentFrame, fld: BoundaryField) -> BoundaryField:
    spec, j = fld.spec, fld.level
    E0 = frame.E0
    f = fld.lead.slot
    G = lambda a: fld.companion_slot(a, frame)
    out_lead = []
    for b in range(spec.sigma(j + 1) + 1):
        out_lead.append(frak_d(0, f(b), frame) + frak_d(1, f(b - 1), frame)
                        + E0.wedge(G(b)))
    out_comp = []
    for c in range(spec.sigma(j + 2) + 1):
        term = -(frak_d(0, G(c), frame) + frak_d(1, G(c - 1), frame))
        term = term - _apply_T(frame, (0, 0), f(c))
        term = term - (_apply_T(frame, (0, 1), f(c - 1)) + _apply_T(frame, (1, 0), f(c - 1)))
        term = term - _apply_T(frame, (1, 1), f(c - 2))
        out_comp.append(term)
    lead = SpinorField(spec.sigma(j + 1), "tilde", out_lead)
    comp = SpinorField(spec.sigma(j + 2), "tilde", out_comp)
    return BoundaryField(spec, j + 1, lead, comp)


def subcomplex_D(frame: TangentFrame, spec: BoundarySpec, j: int,
                 lead: SpinorField) -> SpinorField:
    """Projected operator acting on leading components only (right-type case)."""
    spec._check_operator_level(j)
    k = spec.k
    if j < k:
        slots = [frak_d(0, lead.slot(b), frame) + frak_d(1, lead.slot(b + 1), frame)
                 for b in range(spec.sigma(j + 1) + 1)]
        return SpinorField(spec.sigma(j + 1), "S", slots)
    if j == k:
        return SpinorField(0, "tilde", [_dd(frame, lead.slot(0), 0, 1)])
    slots = [frak_d(0, lead.slot(b), frame) + frak_d(1, lead.slot(b - 1), frame)
             for b in range(spec.sigma(j + 1) + 1)]
    return SpinorField(spec.sigma(j + 1), "tilde", slots)


# -- identity checks ------------------------------------------------------------------------


def anticommutation_defect(frame: TangentFrame, f: ExtForm, ap: int, bp: int):
    """(defect, curvature term) for one symmetrized pair of indices.

    The defect is the symmetrized double operator; it must equal the
    curvature wedge with the symmetrized raised translation operator.
    """
    half = Fraction(1, 2)
    defect = (_dd(frame, f, ap, bp) + _dd(frame, f, bp, ap)).scale(half)
    t_sym = frame.t_symmetric_upper(ap, bp)
    rhs = frame.E0.wedge(f.map_coeffs(t_sym.apply))
    return defect, rhs


def verify_anticommute(frame: TangentFrame, trials: int, seed: int,
                       degree: int = 2) -> dict:
    """Check the curvature-coupled anticommutation law on random forms.

    On right-type groups all plain anticommutation defects vanish; in
    general the defect equals the curvature term, exactly.
    """
    from .randgen import SectionGenerator
    gen = SectionGenerator(seed, degree=degree)
    identity_ok = True
    plain_zero = True
    residual = "0"
    for t in range(trials):
        g = gen.spawn(t)
        f = g.form(frame.dim, g.rng.randint(0, max(0, frame.dim - 2)), frame.vars)
        for ap in (0, 1):
            for bp in (0, 1):
                defect, rhs = anticommutation_defect(frame, f, ap, bp)
                diff = defect - rhs
                if not diff.is_zero():
                    identity_ok = False
                    residual = str(diff)
                if not defect.is_zero():
                    plain_zero = False
    return {
        "identity": "anticommutation-curvature",
        "params": {"trials": trials, "degree": degree},
        "seed": seed,
        "pass": identity_ok,
        "plain_anticommutation": plain_zero,
        "right_type": frame.right_type,
        "residual": residual,
    }


def bracket_identity(frame: TangentFrame) -> dict:
    """Symbolic check of the antisymmetrized double-field identity.

    For every pair of form indices and symmetrized primed pair, the
    alternating second-order combination of tangential fields equals the
    curvature component times the symmetrized translation operator.
    """
    quarter = Fraction(1, 4)
    curv = CurvatureForm(frame.group)
    ok = True
    worst = "0"
    for a in range(frame.dim):
        for b in range(a + 1, frame.dim):
            for ap in (0, 1):
                for bp in (0, 1):
                    lhs = (SecondOrderOp.compose(frame.Z_upper[a][ap], frame.Z_upper[b][bp])
                           + SecondOrderOp.compose(frame.Z_upper[a][bp], frame.Z_upper[b][ap])
                           - SecondOrderOp.compose(frame.Z_upper[b][ap], frame.Z_upper[a][bp])
                           - SecondOrderOp.compose(frame.Z_upper[b][bp], frame.Z_upper[a][ap]))
                    lhs = lhs.scale(quarter)
                    coeff = curv.component(a, b)
                    t_sym = frame.t_symmetric_upper(ap, bp)
                    rhs = SecondOrderOp(frame.vars, {},
                                        {v: c.scale(coeff) for v, c in t_sym.coeffs.items()})
                    diff = lhs - rhs
                    if not diff.is_zero():
                        ok = False
                        worst = str(diff)
    return {"identity": "bracket-curvature", "params": {"n": frame.n},
            "seed": None, "pass": ok, "residual": worst}


def horizontal_pair_identity(frame: TangentFrame) -> bool:
    """On right-type groups the mixed brackets of paired rows cancel."""
    for l in range(frame.n):
        lhs = (frame.Z_upper[2 * l][0].commutator(frame.Z_upper[2 * l + 1][1])
               + frame.Z_upper[2 * l][1].commutator(frame.Z_upper[2 * l + 1][0]))
        if not lhs.is_zero():
            return False
    return True


# -- the diagonal second-order identity ------------------------------------------------------


def lead_first_operator(frame: TangentFrame, k: int, slots: List[Poly]):
    """Leading first operator on scalar slot sections: (A, b) component table."""
    if len(slots) != k + 1:
        raise ValueError(f"need {k + 1} slot functions")
    out = {}
    for a in range(frame.dim):
        for b in range(k):
            out[(a, b)] = (frame.Z_upper[a][0].apply(slots[b])
                           + frame.Z_upper[a][1].apply(slots[b + 1]))
    return out


def lead_first_adjoint_compose(frame: TangentFrame, k: int, slots: List[Poly]):
    """Formal adjoint applied to the leading first operator, slot by slot."""
    image = lead_first_operator(frame, k, slots)
    zero = Poly.zero(frame.vars)
    out = []
    for a in range(k + 1):
        acc = zero
        for row in range(frame.dim):
            for bp in (0, 1):
                b = a - bp
                if 0 <= b <= k - 1:
                    op = frame.Z_upper[row][bp].conjugate()
                    acc = acc - op.apply(image[(row, b)])
        out.append(acc)
    return out


def sub_laplacian(frame: TangentFrame, p: Poly) -> Poly:
    """Negative sum of squares of the horizontal fields."""
    out = Poly.zero(frame.vars)
    for x in frame.X:
        out = out - x.apply(x.apply(p))
    return out


def hodge_diag(spec: BoundarySpec, frame: TangentFrame, trials: int = 10,
               seed: int = 7, degree: int = 3) -> dict:
    """Second-order diagonal identity for the leading operator at the bottom level.

    The adjoint composition must equal diag(L, 2L, ..., 2L, L) applied
    slotwise, where L is the horizontal sub-Laplacian.  Exact; requires a
    right-type group.
    """
    frame.require_right_type()
    k = spec.k
    if k < 1:
        raise ValueError("the diagonal identity needs k >= 1")
    from .randgen import SectionGenerator
    gen = SectionGenerator(seed, degree=degree)
    ok = True
    residual = "0"
    for t in range(trials):
        g = gen.spawn(t)
        slots = [g.poly(frame.vars) for _ in range(k + 1)]
        lhs = lead_first_adjoint_compose(frame, k, slots)
        for a in range(k + 1):
            weight = 1 if a in (0, k) else 2
            rhs = sub_laplacian(frame, slots[a]).scale(weight)
            diff = lhs[a] - rhs
            if not diff.is_zero():
                ok = False
                residual = str(diff)
    return {"identity": "second-order-diagonal", "params": {"n": spec.n, "k": k,
            "trials": trials, "degree": degree}, "seed": seed,
            "pass": ok, "residual": residual}
