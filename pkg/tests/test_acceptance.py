"""Acceptance suite: one test per criterion, one printed line each.

Every criterion runs at its stated tolerance (exact unless a float
fallback is explicitly allowed) and the two timed criteria assert their
wall-clock budgets.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import random
import time
from fractions import Fraction

from dqkin.dyads import (DyadKind, DyadSpec, Verdict, build_variety, classify,
                         example2_checks, null_quadrilateral)
from dqkin.errors import GeometryError
from dqkin.motions import (MotionPoly, c_space_from_line, darboux,
                           darboux_invariants, mannheim, trajectory)
from dqkin.projgeom import (Line, ProjPoint, chi_subspace, fiber_projectivity,
                            meet, span)
from dqkin.quadrics import (Handedness, common_lines, null_cone, restrict,
                            study_quadric)
from dqkin.quadrecon import reconstruct_quadrilateral, run_cycle
from dqkin.quaternions import DualQuaternion, Quaternion
from dqkin.scalars import ComplexFloat
from dqkin.transforms import (build_transform, conjugation_matrix,
                              factor_transform, verify_admissible)

from helpers import (I, dq, quat, random_dyad_spec, random_rational_quaternion,
                     random_study_dq)
from test_motions import exact_random_line
from test_quadrecon import combo, forward_instance, random_cycle

from dqkin.linalg import vec_add, vec_scale


def report(number, text):
    print("criterion %d: PASS - %s" % (number, text))


def rand_fraction(rng, nonzero=False):
    while True:
        value = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if value != 0 or not nonzero:
            return value


def test_criterion_01_trajectory_degrees():
    start = time.monotonic()
    rng = random.Random(1001)
    for _ in range(10):
        a = rand_fraction(rng, nonzero=True)
        b, c = rand_fraction(rng), rand_fraction(rng)
        dar, man = darboux(a, b, c), mannheim(a, b, c)
        for _ in range(5):
            x = ProjPoint([1] + [rand_fraction(rng) for _ in range(3)])
            assert trajectory(dar, x).degree == 2
            assert trajectory(man, x).degree == 4
    elapsed = time.monotonic() - start
    assert elapsed < 5.0, "criterion 1 exceeded 5 s: %.2f s" % elapsed
    report(1, "50 Darboux trajectories exact degree 2, 50 Mannheim degree 4"
              " (%.2f s)" % elapsed)


def test_criterion_02_classifier_soundness():
    start = time.monotonic()
    rng = random.Random(1002)
    expected = {DyadKind.RR: Verdict.TwoR, DyadKind.RP: Verdict.RP,
                DyadKind.PR: Verdict.PR, DyadKind.C: Verdict.C}
    for kind in (DyadKind.RR, DyadKind.RP, DyadKind.PR, DyadKind.C):
        for _ in range(100):
            spec = random_dyad_spec(rng, kind)
            space = build_variety(spec).space
            assert classify(space).verdict is expected[kind]
            if kind is DyadKind.RP:
                assert classify(chi_subspace(space)).verdict is Verdict.PR
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, "criterion 2 exceeded 60 s: %.2f s" % elapsed
    report(2, "400 random dyads classified by construction kind, chi swaps"
              " RP to PR on all 100 RP instances (%.2f s)" % elapsed)


def test_criterion_03_two_r_null_quadrilateral():
    h1 = dq(quat(0, 0, 0, 1))
    h2 = dq(quat(0, 1, 0, 0), quat(0, 0, 0, 1))
    variety = build_variety(DyadSpec(DyadKind.RR, h1, h2))
    u = variety.space
    chart_lines = common_lines(restrict(study_quadric(), u),
                               restrict(null_cone(), u))
    assert len(chart_lines) == 4
    assert not any(l.approx for l in chart_lines)
    lifted = []
    for line in chart_lines:
        pts = [u.lift(ProjPoint(row)) for row in line.basis.rows]
        lifted.append(Line.through(pts[0], pts[1]))

    param = variety.parametrization
    expected = []
    for t_fixed in (I, -I):
        expected.append(Line.through(ProjPoint(param(t_fixed, 0)),
                                     ProjPoint(param(t_fixed, 1))))
        expected.append(Line.through(ProjPoint(param(0, t_fixed)),
                                     ProjPoint(param(1, t_fixed))))

    def key(line):
        return tuple(str(c) for row in line.basis.rows for c in row)

    assert sorted(lifted, key=key) == sorted(expected, key=key)
    assert null_quadrilateral(lifted) is not None
    report(3, "common_lines yields exactly the 4 parametric lines at"
              " t = +/- i, closing a null quadrilateral")


def test_criterion_04_transform_round_trip():
    rng = random.Random(1004)
    for _ in range(100):
        left, right = random_study_dq(rng), random_study_dq(rng)
        t = build_transform(left, right)
        rep = verify_admissible(t.matrix)
        assert rep.pencil_fixed and rep.shape_ok and rep.rulings_preserved
        got_l, got_r = factor_transform(t.matrix)
        assert ProjPoint(got_l) == ProjPoint(left)
        assert ProjPoint(got_r) == ProjPoint(right)
    chi_rep = verify_admissible(conjugation_matrix())
    assert chi_rep.pencil_fixed and chi_rep.shape_ok
    assert not chi_rep.rulings_preserved
    report(4, "100 Study pairs rebuild and refactor projectively, chi matrix"
              " fails exactly the ruling check")


def test_criterion_05_c_space_from_lines():
    rng = random.Random(1005)
    s_form, n_form = study_quadric(), null_cone()

    def line_on(form, line):
        x = ProjPoint(line.basis.rows[0])
        y = ProjPoint(line.basis.rows[1])
        return (form.value(x).is_zero() and form.value(y).is_zero()
                and form.polar(x, y).is_zero())

    def line_checks(rep):
        # five structural assertions: e1, l1, l2 are null lines, the
        # fourth ruling stays on the Study quadric, and it misses e1
        w = rep.witnesses
        for name in ("e1", "l1", "l2"):
            assert line_on(s_form, w[name]) and line_on(n_form, w[name])
        assert line_on(s_form, w["n"])
        assert meet(w["n"], w["e1"]).dim == -1

    exact_count = float_count = 0
    lines = [exact_random_line(rng) for _ in range(25)]
    while len(lines) < 50:
        base = random_study_dq(rng)
        other = DualQuaternion(random_rational_quaternion(rng),
                               random_rational_quaternion(rng))
        try:
            lines.append(Line.through(ProjPoint(base), ProjPoint(other)))
        except GeometryError:
            continue

    for line in lines:
        try:
            rep = c_space_from_line(line)
            exact_count += 1
        except GeometryError as err:
            assert "not rational" in str(err)
            rows = [[ComplexFloat(c.to_complex().real, c.to_complex().imag,
                                  1e-9) for c in row]
                    for row in line.basis.rows]
            rep = c_space_from_line(Line.through(ProjPoint(rows[0]),
                                                 ProjPoint(rows[1])))
            float_count += 1
        assert rep.classification.verdict is Verdict.C
        line_checks(rep)
        # degree bound for 3 points on the pencil of the (exact) line
        motion = MotionPoly([DualQuaternion.from_coords(line.basis.rows[1]),
                             DualQuaternion.from_coords(line.basis.rows[0])])
        for k in range(3):
            x = ProjPoint([1] + [rand_fraction(rng) for _ in range(3)])
            assert trajectory(motion, x).degree <= 2
    assert exact_count >= 10
    report(5, "50 lines certify C spaces (%d exact, %d float at 1e-9), all"
              " trajectories degree <= 2" % (exact_count, float_count))


def test_criterion_06_example_two():
    checks = example2_checks()
    assert checks["null_line_in_exceptional"]
    assert checks["conjugate_pair_off_exceptional"]
    assert checks["quadric_not_contained"]
    assert all(checks.values())
    report(6, "complex three-space fixture: null line in [eps H], conjugate"
              " pair, quadric not contained")


def test_criterion_07_projection_cycle_identity():
    rng = random.Random(1007)
    total = 0
    for _ in range(50):
        cycle, rows = random_cycle(rng)
        starts = 0
        while starts < 20:
            # a start must lie in the first projection space but not in
            # the fixed space: nonzero weight on the first image point
            weights = [Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                       for _ in range(4)]
            head = [Fraction(rng.randint(1, 6), rng.randint(1, 3))]
            coords = vec_add(vec_scale(head[0], rows[0]),
                             combo(rows[4:], tuple(weights)))
            try:
                start = ProjPoint(coords)
                images = run_cycle(cycle, start)
            except GeometryError:
                continue
            assert images[-1] == start
            starts += 1
            total += 1
    assert total == 1000
    report(7, "50 random cycles x 20 starts return the start point exactly")


def test_criterion_08_reconstruction_uniqueness():
    rng = random.Random(1008)
    for _ in range(20):
        problem, expected = forward_instance(rng)
        got = reconstruct_quadrilateral(problem)
        assert got == expected

        omega, cycle = problem.omega, problem.cycle
        sides = [(0, 1), (1, 2), (2, 3), (3, 0)]
        for i, j in sides:
            assert omega.value(got[i]).is_zero()
            assert omega.polar(got[i], got[j]).is_zero()
        for (i, j), center in zip(sides, cycle.centers):
            line = Line.through(got[i], got[j])
            assert line.contains(center)

        e_pts = cycle.e.points()
        mixed = [e_pts[0], e_pts[1],
                 ProjPoint([a + b for a, b in zip(e_pts[1].coords,
                                                  e_pts[2].coords)]),
                 ProjPoint([a + 2 * b for a, b in zip(e_pts[0].coords,
                                                      e_pts[3].coords)])]
        assert span(mixed).dim == 3 and span(mixed) == cycle.e
        again = reconstruct_quadrilateral(problem, e_basis=mixed)
        assert again == got
    report(8, "20 forward-generated problems reconstruct their quadrilateral,"
              " postconditions and basis-change agreement hold")


def test_criterion_09_darboux_invariants():
    rng = random.Random(1009)
    for _ in range(10):
        a = rand_fraction(rng, nonzero=True)
        b, c = rand_fraction(rng), rand_fraction(rng)
        rep = darboux_invariants(a, b, c)
        assert not rep.vertical
        assert rep.handedness is Handedness.LeftRuling
        p = Quaternion(-b, a, 0, c)
        assert p == rep.p
        for d_pt, f_pt in zip(rep.d, rep.f):
            f_dual = Quaternion(*f_pt.coords[4:])
            assert d_pt == ProjPoint(DualQuaternion(Quaternion(), p * f_dual))
    for _ in range(10):
        b, c = rand_fraction(rng), rand_fraction(rng)
        if b == 0 and c == 0:
            b = Fraction(1)
        rep = darboux_invariants(0, b, c)
        assert rep.vertical and rep.handedness is None
        assert rep.d[0] == rep.f[0] and rep.d[1] == rep.f[1]
    report(9, "d = p f with p = -b + a i + c k and left rulings for a != 0,"
              " d = f for a = 0")


def test_criterion_10_fiber_equivariance():
    rng = random.Random(1010)
    count = 0
    while count < 100:
        t = build_transform(random_study_dq(rng), random_study_dq(rng))
        primal = random_rational_quaternion(rng)
        if primal.is_zero():
            continue
        x = ProjPoint(DualQuaternion(primal, random_rational_quaternion(rng)))
        assert t.apply(fiber_projectivity(x)) == fiber_projectivity(t.apply(x))
        count += 1
    report(10, "100 random transforms commute with the fiber projectivity"
               " exactly")