"""Batch verification suites over seeded random data.

Each suite returns a Report whose payload is fully determined by its
configuration (including the master seed), so repeated runs are
byte-identical.
"""

from __future__ import annotations

from typing import List, Optional

from .boundary import (BoundaryField, BoundarySpec, TangentFrame, boundary_D,
                       bracket_identity, hodge_diag, horizontal_pair_identity,
                       subcomplex_D, verify_anticommute)
from .flat import ComplexSpec, check_exactness, dot_pi, flat_D, flat_D_tuple
from .groups import GroupSpec
from .randgen import SectionGenerator
from .reports import Report


def flat_composition_suite(n: int, k: int, trials: int, seed: int,
                           degree: int = 3) -> Report:
    """Consecutive operators compose to zero on random sections, exactly."""
    spec = ComplexSpec(n, k)
    gen = SectionGenerator(seed, degree=degree)
    failures = []
    for j in range(2 * n):
        for t in range(trials):
            g = gen.spawn(j * 1000 + t)
            fld = g.slot_field(spec.sigma(j), spec.basis_tag(j), spec.form_dim,
                               spec.tau(j), spec.vars, poly_degree=degree)
            out = flat_D(spec, j + 1, flat_D(spec, j, fld))
            if not out.is_zero():
                failures.append({"j": j, "trial": t})
    return Report("flat-composition", {"n": n, "k": k, "trials": trials,
                                       "degree": degree},
                  seed, not failures, residual="0" if not failures else "nonzero",
                  extra={"failures": failures})


def flat_tuple_equivalence_suite(n: int, k: int, trials: int, seed: int,
                                 degree: int = 3) -> Report:
    """Slot and tuple realizations agree through the basis isomorphisms."""
    spec = ComplexSpec(n, k)
    gen = SectionGenerator(seed, degree=degree)
    failures = []
    for j in range(2 * n + 1):
        for t in range(trials):
            g = gen.spawn(j * 1000 + t)
            tup = g.tuple_field(spec.sigma(j), spec.form_dim, spec.tau(j),
                                spec.vars, poly_degree=degree)
            via_tuple = flat_D_tuple(spec, j, tup)
            via_slots = flat_D(spec, j, dot_pi(spec, j, tup))
            diff = dot_pi(spec, j + 1, via_tuple) - via_slots
            if not diff.is_zero():
                failures.append({"j": j, "trial": t})
    return Report("flat-tuple-equivalence", {"n": n, "k": k, "trials": trials,
                                             "degree": degree},
                  seed, not failures, residual="0" if not failures else "nonzero",
                  extra={"failures": failures})


def random_boundary_field(gen: SectionGenerator, spec: BoundarySpec,
                          frame: TangentFrame, j: int,
                          degree: int = 2) -> BoundaryField:
    s, d, basis = spec.lead_shape(j)
    lead = gen.slot_field(s, basis, spec.form_dim, d, frame.vars, poly_degree=degree)
    cshape = spec.companion_shape(j)
    comp = None
    if cshape is not None:
        s2, d2, b2 = cshape
        comp = gen.slot_field(s2, b2, spec.form_dim, d2, frame.vars, poly_degree=degree)
    return BoundaryField(spec, j, lead, comp)


def boundary_composition_suite(group: GroupSpec, k: int, trials: int, seed: int,
                               degree: int = 2,
                               frame: Optional[TangentFrame] = None) -> Report:
    """Boundary operator composition law on random pair fields, exactly."""
    frame = frame or TangentFrame(group)
    spec = BoundarySpec(group.n, k)
    gen = SectionGenerator(seed, degree=degree)
    failures = []
    for j in range(spec.top_level - 1):
        for t in range(trials):
            g = gen.spawn(j * 1000 + t)
            fld = random_boundary_field(g, spec, frame, j, degree)
            out = boundary_D(frame, boundary_D(frame, fld))
            if not out.is_zero():
                failures.append({"j": j, "trial": t})
    return Report("boundary-composition",
                  {"n": group.n, "k": k, "trials": trials, "degree": degree,
                   "right_type": frame.right_type},
                  seed, not failures, residual="0" if not failures else "nonzero",
                  extra={"failures": failures})


def subcomplex_suite(group: GroupSpec, k: int, trials: int, seed: int,
                     degree: int = 2,
                     frame: Optional[TangentFrame] = None) -> Report:
    """On right-type groups the projected leading operators compose to zero."""
    frame = frame or TangentFrame(group)
    frame.require_right_type()
    spec = BoundarySpec(group.n, k)
    gen = SectionGenerator(seed, degree=degree)
    failures = []
    for j in range(spec.top_level - 1):
        for t in range(trials):
            g = gen.spawn(j * 1000 + t)
            s, d, basis = spec.lead_shape(j)
            lead = g.slot_field(s, basis, spec.form_dim, d, frame.vars,
                                poly_degree=degree)
            out = subcomplex_D(frame, spec, j + 1, subcomplex_D(frame, spec, j, lead))
            if not out.is_zero():
                failures.append({"j": j, "trial": t})
    return Report("subcomplex-composition",
                  {"n": group.n, "k": k, "trials": trials, "degree": degree},
                  seed, not failures, residual="0" if not failures else "nonzero",
                  extra={"failures": failures})


def anticommute_suite(group: GroupSpec, trials: int, seed: int,
                      frame: Optional[TangentFrame] = None) -> Report:
    frame = frame or TangentFrame(group)
    data = verify_anticommute(frame, trials, seed)
    return Report("anticommutation-curvature", data["params"], seed,
                  data["pass"], data["residual"],
                  extra={"plain_anticommutation": data["plain_anticommutation"],
                         "right_type": data["right_type"]})


def bracket_suite(group: GroupSpec,
                  frame: Optional[TangentFrame] = None) -> Report:
    frame = frame or TangentFrame(group)
    data = bracket_identity(frame)
    report = Report(data["identity"], data["params"], None, data["pass"],
                    data["residual"])
    if frame.right_type:
        report.extra["paired_rows_cancel"] = horizontal_pair_identity(frame)
    return report


def hodge_suite(group: GroupSpec, k: int, trials: int, seed: int,
                frame: Optional[TangentFrame] = None) -> Report:
    frame = frame or TangentFrame(group)
    data = hodge_diag(BoundarySpec(group.n, k), frame, trials=trials, seed=seed)
    return Report(data["identity"], data["params"], seed, data["pass"],
                  data["residual"])


def symbol_suite(n: int, k: int, vectors: List, seed: Optional[int]) -> Report:
    spec = ComplexSpec(n, k)
    results = [check_exactness(spec, v) for v in vectors]
    ok = all(r["exact"] for r in results)
    return Report("symbol-exactness", {"n": n, "k": k, "count": len(vectors)},
                  seed, ok, "0" if ok else "rank defect",
                  extra={"results": results})
