"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with  pytest tests/test_acceptance.py -v -s  to see the per-criterion
lines; every tolerance is pinned here.
"""

import time
from fractions import Fraction

import pytest

from cfx.boundary import (BoundarySpec, TangentFrame, anticommutation_defect,
                          hodge_diag)
from cfx.exterior import from_hat_components
from cfx.flat import ComplexSpec, check_exactness
from cfx.groups import (GroupSpec, I_MATS, J_MATS, is_right_type,
                        is_right_type_via_E, quaternion_relations_ok)
from cfx.ma import (Region, cln_experiment, convergence_experiment,
                    key_identity_check, stokes_check)
from cfx.randgen import SectionGenerator
from cfx.verify import (boundary_composition_suite, flat_composition_suite,
                        flat_tuple_equivalence_suite)

FLAT_SPECS = [(1, 0), (1, 1), (1, 2), (2, 1), (2, 2)]


def _report(number: int, name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number:02d} {name}: {status}{suffix}")
    assert ok, f"criterion {number} failed: {name} {detail}"


@pytest.fixture(scope="module")
def frames():
    return {
        "rightQH1": TangentFrame(GroupSpec.right_qh(1)),
        "rightQH2": TangentFrame(GroupSpec.right_qh(2)),
        "leftQH2": TangentFrame(GroupSpec.left_qh(2)),
    }


def test_criterion_01_flat_composition():
    start = time.monotonic()
    ok = True
    for n, k in FLAT_SPECS:
        report = flat_composition_suite(n, k, trials=20, seed=100 + 10 * n + k,
                                        degree=3)
        ok = ok and report.passed
    elapsed = time.monotonic() - start
    _report(1, "flat-composition-law", ok and elapsed < 60.0,
            f"5 specs x 20 trials, exact zero, {elapsed:.1f}s")


def test_criterion_02_tuple_equivalence():
    ok = True
    for n, k in FLAT_SPECS:
        report = flat_tuple_equivalence_suite(n, k, trials=20,
                                              seed=200 + 10 * n + k, degree=3)
        ok = ok and report.passed
    _report(2, "tuple-slot-equivalence", ok, "both branches, exact")


def test_criterion_03_symbol_exactness():
    spec = ComplexSpec(1, 1)
    e1 = [Fraction(1)] + [Fraction(0)] * 7
    reference = check_exactness(spec, e1)
    ok = (reference["dims"] == [2, 4, 4, 2]
          and reference["ranks"] == [2, 2, 2]
          and reference["exact"])
    for n, k in [(1, 0), (1, 1), (2, 1)]:
        gen = SectionGenerator(300 + 10 * n + k)
        for t in range(10):
            v = gen.spawn(t).rational_vector(4 * (n + 1))
            ok = ok and check_exactness(ComplexSpec(n, k), v)["exact"]
    _report(3, "symbol-sequence-exactness", ok,
            "reference dims/ranks + 30 random covectors")


def test_criterion_04_right_type_classification():
    ok = quaternion_relations_ok(I_MATS, orientation=1)
    ok = ok and quaternion_relations_ok(J_MATS, orientation=-1)
    ok = ok and is_right_type(GroupSpec.right_qh(2))[0]
    ok = ok and not is_right_type(GroupSpec.left_qh(2))[0]
    ok = ok and is_right_type_via_E(GroupSpec.right_qh(2))
    ok = ok and not is_right_type_via_E(GroupSpec.left_qh(2))
    gen = SectionGenerator(404)
    disagreements = 0
    for t in range(200):
        g2 = gen.spawn(t)
        n = g2.rng.choice([1, 2, 3])
        sample = g2.right_type_matrix(n) if t % 4 == 0 else g2.symmetric_matrix(4 * n)
        group = GroupSpec(n, tuple(tuple(r) for r in sample))
        if is_right_type(group)[0] != is_right_type_via_E(group):
            disagreements += 1
    _report(4, "right-type-two-routes", ok and disagreements == 0,
            f"200 random matrices, {disagreements} disagreements")


def test_criterion_05_boundary_composition(frames):
    ok = True
    for name in ("rightQH2", "leftQH2"):
        frame = frames[name]
        for k in (1, 2):
            report = boundary_composition_suite(frame.group, k, trials=10,
                                                seed=500 + k, degree=2,
                                                frame=frame)
            ok = ok and report.passed
    _report(5, "boundary-composition-law", ok,
            "both groups, k in {1,2}, all four branches, exact zero")


def test_criterion_06_anticommutation_curvature(frames):
    # identity orientation fixed by the operator-consistent curvature form;
    # see the decisions ledger for the sign analysis
    left = frames["leftQH2"]
    right = frames["rightQH2"]
    gen = SectionGenerator(606, degree=2)
    ok = True
    saw_nonzero_defect = False
    for t in range(10):
        g = gen.spawn(t)
        f = g.form(4, g.rng.randint(0, 2), left.vars)
        for ap in (0, 1):
            for bp in (0, 1):
                defect, curv_term = anticommutation_defect(left, f, ap, bp)
                ok = ok and (defect - curv_term).is_zero()
                saw_nonzero_defect = saw_nonzero_defect or not defect.is_zero()
    for t in range(10):
        g = gen.spawn(1000 + t)
        f = g.form(4, g.rng.randint(0, 2), right.vars)
        for ap in (0, 1):
            for bp in (0, 1):
                defect, _ = anticommutation_defect(right, f, ap, bp)
                ok = ok and defect.is_zero()
    _report(6, "anticommutation-curvature-identity", ok and saw_nonzero_defect,
            "left group: defect equals curvature term; right group: defect zero")


def test_criterion_07_second_order_diagonal(frames):
    ok = True
    for n in (1, 2):
        frame = frames[f"rightQH{n}"]
        for k in (1, 2):
            report = hodge_diag(BoundarySpec(n, k), frame, trials=10, seed=707)
            ok = ok and report["pass"]
    _report(7, "second-order-diagonal", ok, "k in {1,2}, n in {1,2}, exact")


def test_criterion_08_key_identity(frames):
    frame = frames["rightQH2"]
    gen = SectionGenerator(808)
    ok = True
    for t in range(5):
        us = [gen.spawn(10 * t + i).psh_quadratic(frame.vars, 8) for i in range(2)]
        ok = ok and key_identity_check(us, frame)["pass"]
    _report(8, "wedge-power-key-identity", ok, "n=2, 5 trials, exact")


def test_criterion_09_quadrature_checks(frames):
    start = time.monotonic()
    frame = frames["rightQH2"]
    box = Region.cube(11, Fraction(1, 2))
    inner = Region.cube(11, Fraction(1, 4))
    gen = SectionGenerator(909, degree=4)
    ok = True
    worst_stokes = 0.0
    for t in range(3):
        g = gen.spawn(t)
        h = g.poly(frame.vars)
        T = from_hat_components(4, frame.vars,
                                [g.spawn(i).poly(frame.vars) for i in range(4)])
        for aprime in (0, 1):
            report = stokes_check(h, T, box, frame, aprime)
            worst_stokes = max(worst_stokes, report["relative_residual"])
            ok = ok and report["relative_residual"] <= 1e-9
    worst_cln = 0.0
    us = [gen.spawn(100 + i).psh_quadratic(frame.vars, 8) for i in range(2)]
    for p in (1, 2):
        report = cln_experiment(us[:p], box, inner, frame)
        worst_cln = max(worst_cln, report["agreement"])
        ok = ok and report["agreement"] <= 1e-6
    elapsed = time.monotonic() - start
    _report(9, "boundary-formula-and-estimate-quadrature",
            ok and elapsed < 120.0,
            f"stokes<= {worst_stokes:.1e}, estimate<= {worst_cln:.1e}, {elapsed:.1f}s")


def test_criterion_10_mass_convergence(frames):
    frame = frames["rightQH2"]
    gen = SectionGenerator(1010)
    q = gen.psh_quadratic(frame.vars, 8)
    inner = Region.cube(11, Fraction(1, 4))
    report = convergence_experiment(q, frame, inner, steps=64)
    ok = report["monotone"] and report["final_difference"] < 1e-4
    _report(10, "approximation-mass-convergence", ok,
            f"final successive difference {report['final_difference']:.2e}")
