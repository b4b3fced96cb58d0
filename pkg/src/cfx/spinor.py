"""Symmetric-power spinor bookkeeping: the two-element index calculus.

Primed indices live in {0, 1} (conventionally written 0', 1').  They are
raised and lowered by the symplectic pairing ``eps``; degree-s symmetric
powers are handled either as slot arrays over two distinguished monomial
bases or as symmetric tuples.

Slot conventions:

* descending basis ("S"): slot a of degree s, with the two derivations
  acting as  d_0: (a, s) -> (a, s-1)  and  d_1: (a, s) -> (a-1, s-1);
* ascending basis ("tilde"): slot a of degree s, with multiplications
  m_0: (a, s) -> (a, s+1)  and  m_1: (a, s) -> (a+1, s+1).

Out-of-range slots are zero by convention.
"""

from __future__ import annotations

from itertools import permutations, product
from math import comb, factorial
from fractions import Fraction
from typing import Dict, List, Sequence

from .exterior import ExtForm
from .rational import cq

# Lower/raise tables: eps_lower[a][b] and its inverse eps_upper[a][b].
EPS_LOWER = ((Fraction(0), Fraction(1)), (Fraction(-1), Fraction(0)))
EPS_UPPER = ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))


class EpsilonTable:
    """The 2x2 symplectic pairing used to raise and lower primed indices."""

    lower = EPS_LOWER
    upper = EPS_UPPER

    @staticmethod
    def check_inverse() -> bool:
        prod_ = [
            [
                sum(EPS_LOWER[i][k] * EPS_UPPER[k][j] for k in range(2))
                for j in range(2)
            ]
            for i in range(2)
        ]
        return prod_ == [[1, 0], [0, 1]]


def raise_primed(pair):
    """(f_0, f_1) -> (f^0, f^1) with f^a = sum_b f_b eps^{ba}."""
    f0, f1 = pair
    # eps^{10} = 1, eps^{01} = -1
    return (f1, -f0)


def lower_primed(pair):
    """(f^0, f^1) -> (f_0, f_1) with f_c = sum_a f^a eps_{ac}."""
    g0, g1 = pair
    # eps_{10} = -1, eps_{01} = 1
    return (-g1, g0)


def sym_basis_derivative(a: int, sigma: int, aprime: int):
    """Action of the derivation d_{aprime} on descending-basis element (a, sigma).

    Returns (a', sigma-1) or None when the result is zero by convention.
    """
    if not 0 <= a <= sigma:
        raise ValueError(f"slot {a} out of range for degree {sigma}")
    if aprime not in (0, 1):
        raise ValueError("primed index must be 0 or 1")
    new_a = a - aprime
    if not 0 <= new_a <= sigma - 1:
        return None
    return (new_a, sigma - 1)


def tilde_basis_multiply(a: int, sigma: int, aprime: int):
    """Action of multiplication m_{aprime} on ascending-basis element (a, sigma)."""
    if not 0 <= a <= sigma:
        raise ValueError(f"slot {a} out of range for degree {sigma}")
    if aprime not in (0, 1):
        raise ValueError("primed index must be 0 or 1")
    return (a + aprime, sigma + 1)


def ones_count(idx: Sequence[int]) -> int:
    """Number of 1 entries in a primed multi-index."""
    return sum(idx)


class SpinorField:
    """Section of a symmetric-power bundle tensor exterior forms.

    ``basis`` is one of "S", "tilde", "tuple".  For the slot bases the data
    is a list of sigma+1 ExtForms (all of one degree/dimension); the tuple
    basis stores one ExtForm per primed multi-index with full permutation
    symmetry.
    """

    __slots__ = ("sigma", "basis", "slots", "tuples", "dim", "degree", "vars")

    def __init__(self, sigma: int, basis: str, components, dim=None,
                 degree=None, variables=None):
        if basis not in ("S", "tilde", "tuple"):
            raise ValueError(f"unknown basis tag {basis!r}")
        object.__setattr__(self, "sigma", int(sigma))
        object.__setattr__(self, "basis", basis)
        if basis == "tuple":
            tuples: Dict[tuple, ExtForm] = {}
            sample = None
            for idx, form in components.items():
                idx = tuple(int(i) for i in idx)
                if len(idx) != sigma or any(i not in (0, 1) for i in idx):
                    raise ValueError(f"bad primed multi-index {idx}")
                tuples[idx] = form
                sample = form
            if sample is None:
                if dim is None or degree is None or variables is None:
                    raise ValueError("empty tuple field needs dim/degree/vars")
                sample = ExtForm.zero(dim, degree, variables)
            full = {}
            for idx in product((0, 1), repeat=sigma):
                full[idx] = tuples.get(
                    idx, ExtForm.zero(sample.dim, sample.degree, sample.vars))
            object.__setattr__(self, "tuples", full)
            object.__setattr__(self, "slots", None)
            object.__setattr__(self, "dim", sample.dim)
            object.__setattr__(self, "degree", sample.degree)
            object.__setattr__(self, "vars", sample.vars)
        else:
            slots: List[ExtForm] = list(components)
            if len(slots) != sigma + 1:
                raise ValueError(f"need {sigma + 1} slots, got {len(slots)}")
            sample = slots[0]
            for f in slots:
                if (f.dim, f.degree, f.vars) != (sample.dim, sample.degree, sample.vars):
                    raise ValueError("slot forms must share dimension/degree/vars")
            object.__setattr__(self, "slots", slots)
            object.__setattr__(self, "tuples", None)
            object.__setattr__(self, "dim", sample.dim)
            object.__setattr__(self, "degree", sample.degree)
            object.__setattr__(self, "vars", sample.vars)

    def __setattr__(self, name, value):
        raise AttributeError("SpinorField is immutable")

    @classmethod
    def zero(cls, sigma, basis, dim, degree, variables) -> "SpinorField":
        if basis == "tuple":
            return cls(sigma, basis, {}, dim=dim, degree=degree, variables=variables)
        z = ExtForm.zero(dim, degree, variables)
        return cls(sigma, basis, [z] * (sigma + 1))

    def slot(self, a: int) -> ExtForm:
        """Slot a, with out-of-range slots equal to zero."""
        if self.basis == "tuple":
            raise ValueError("tuple basis has no slots")
        if 0 <= a <= self.sigma:
            return self.slots[a]
        return ExtForm.zero(self.dim, self.degree, self.vars)

    def is_zero(self) -> bool:
        forms = self.slots if self.slots is not None else self.tuples.values()
        return all(f.is_zero() for f in forms)

    def __add__(self, other: "SpinorField") -> "SpinorField":
        if (self.sigma, self.basis) != (other.sigma, other.basis):
            raise ValueError("spinor shape mismatch")
        if self.basis == "tuple":
            return SpinorField(self.sigma, "tuple",
                               {i: f + other.tuples[i] for i, f in self.tuples.items()})
        return SpinorField(self.sigma, self.basis,
                           [a + b for a, b in zip(self.slots, other.slots)])

    def __neg__(self):
        if self.basis == "tuple":
            return SpinorField(self.sigma, "tuple",
                               {i: -f for i, f in self.tuples.items()})
        return SpinorField(self.sigma, self.basis, [-f for f in self.slots])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, SpinorField):
            return NotImplemented
        return (self - other).is_zero() if (self.sigma, self.basis) == (other.sigma, other.basis) else False

    def to_json(self) -> dict:
        if self.basis == "tuple":
            comps = [{"idx": list(i), "form": f.to_json()}
                     for i, f in sorted(self.tuples.items())]
        else:
            comps = [f.to_json() for f in self.slots]
        return {"sigma": self.sigma, "basis": self.basis, "dim": self.dim,
                "degree": self.degree, "components": comps}


def symmetrize(field: SpinorField) -> SpinorField:
    """Average a tuple-basis field over all permutations of its primed indices."""
    if field.basis != "tuple":
        raise ValueError("symmetrize acts on the tuple basis")
    s = field.sigma
    if s <= 1:
        return field
    inv = cq(Fraction(1, factorial(s)))
    out = {}
    for idx in product((0, 1), repeat=s):
        acc = ExtForm.zero(field.dim, field.degree, field.vars)
        for perm in permutations(range(s)):
            acc = acc + field.tuples[tuple(idx[p] for p in perm)]
        out[idx] = acc.scale(inv)
    return SpinorField(s, "tuple", out)


def is_symmetric(field: SpinorField) -> bool:
    return (symmetrize(field) - field).is_zero()


def tuple_to_slots(field: SpinorField, basis: str) -> SpinorField:
    """Convert a symmetric tuple field to slot form.

    Descending basis: slot a is the component with a ones.  Ascending basis:
    slot a additionally carries the multiplicity binom(sigma, a) coming from
    expanding the symmetric monomials.
    """
    if field.basis != "tuple":
        raise ValueError("expected tuple basis")
    if not is_symmetric(field):
        raise ValueError("tuple field is not symmetric")
    s = field.sigma
    slots = []
    for a in range(s + 1):
        idx = (0,) * (s - a) + (1,) * a
        form = field.tuples[idx]
        if basis == "tilde":
            form = form.scale(comb(s, a))
        slots.append(form)
    return SpinorField(s, basis, slots)


def slots_to_tuple(field: SpinorField) -> SpinorField:
    """Inverse of :func:`tuple_to_slots`."""
    if field.basis == "tuple":
        raise ValueError("field already in tuple basis")
    s = field.sigma
    comps = {}
    for idx in product((0, 1), repeat=s):
        a = ones_count(idx)
        form = field.slots[a]
        if field.basis == "tilde":
            form = form.scale(Fraction(1, comb(s, a)))
        comps[idx] = form
    return SpinorField(s, "tuple", comps)
