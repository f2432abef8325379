"""Shared construction helpers for the test suite."""

from fractions import Fraction

from dqkin.projgeom import ProjPoint, Subspace, span
from dqkin.quaternions import DualQuaternion, Quaternion
from dqkin.scalars import GaussianRational, rational

I = GaussianRational(0, 1)  # the complex unit, not the quaternion one


def quat(w=0, x=0, y=0, z=0) -> Quaternion:
    return Quaternion(w, x, y, z)


def dq(primal=None, dual=None) -> DualQuaternion:
    return DualQuaternion(primal or Quaternion(), dual or Quaternion())


def point(primal=None, dual=None) -> ProjPoint:
    return ProjPoint(dq(primal, dual))


def pt8(*coords) -> ProjPoint:
    assert len(coords) == 8
    return ProjPoint(coords)


def lift_via(frame, chart_coords) -> ProjPoint:
    """Ambient point with the given coordinates in an explicit dq frame."""
    assert len(frame) == len(chart_coords)
    out = None
    for c, f in zip(chart_coords, frame):
        term = f * c
        out = term if out is None else out + term
    return ProjPoint(out)


def rational_unit_pure(rng) -> Quaternion:
    """Random rational pure quaternion of unit norm, via q k conj(q)."""
    while True:
        q = Quaternion(*[Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                         for _ in range(4)])
        n = q.norm()
        if not n.is_zero():
            break
    u = q * Quaternion(0, 0, 0, 1) * q.conjugate()
    u = u * (1 / n)
    assert u.scalar_part().is_zero() and u.norm() == rational(1)
    return u


def random_rational_quaternion(rng, lo=-5, hi=5) -> Quaternion:
    return Quaternion(*[Fraction(rng.randint(lo, hi), rng.randint(1, 3))
                        for _ in range(4)])


def random_study_dq(rng, invertible=True) -> DualQuaternion:
    """Random rational dual quaternion on the Study quadric."""
    while True:
        p = random_rational_quaternion(rng)
        if invertible and p.norm().is_zero():
            continue
        if p.is_zero():
            continue
        d0 = random_rational_quaternion(rng)
        # remove the component violating the Study condition
        lam = p.dot(d0) * (1 / p.norm())
        d = d0 - p * lam
        out = DualQuaternion(p, d)
        assert out.study_condition()
        return out


def half_turn_about(rng, axis_dir=None) -> DualQuaternion:
    """Dual quaternion of a half turn about a random rational line."""
    u = axis_dir if axis_dir is not None else rational_unit_pure(rng)
    w = random_rational_quaternion(rng)
    moment = (u * w - w * u) * Fraction(1, 2)  # u x w as pure quaternion
    h = DualQuaternion(u, moment.vector_part())
    assert h.study_condition()
    assert h.primal.scalar_part().is_zero()
    return h


def random_pure_vector(rng, lo=-5, hi=5) -> Quaternion:
    while True:
        p = Quaternion(0, *[Fraction(rng.randint(lo, hi), rng.randint(1, 3))
                            for _ in range(3)])
        if not p.is_zero():
            return p


def random_dyad_spec(rng, kind):
    """Random rational joint data for the requested dyad kind."""
    from dqkin.dyads import DyadKind, DyadSpec

    if kind is DyadKind.RR:
        while True:
            h1 = half_turn_about(rng)
            h2 = half_turn_about(rng)
            prod = h1 * h2
            skew = not prod.dual.scalar_part().is_zero()
            if skew and not _parallel(h1.primal, h2.primal):
                return DyadSpec(kind, h1, h2)
    if kind is DyadKind.C:
        u = rational_unit_pure(rng)
        h = half_turn_about(rng, axis_dir=u)
        lam = Fraction(0)
        while lam == 0:
            lam = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        return DyadSpec(kind, h, DualQuaternion(Quaternion(), u * lam))
    # RP and PR need a translation neither along nor orthogonal to the axis
    while True:
        h = half_turn_about(rng)
        p = random_pure_vector(rng)
        if _parallel(h.primal, p):
            continue
        if h.primal.dot(p).is_zero():
            continue
        return DyadSpec(kind, h, DualQuaternion(Quaternion(), p))


def _parallel(a: Quaternion, b: Quaternion) -> bool:
    prod = a * b - b * a
    return prod.is_zero()
