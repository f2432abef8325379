"""Motion polynomials and the kinematic action on points.

The extended kinematic map assigns a displacement of projective
three-space to every dual quaternion with nonzero primal part, whether
or not it satisfies the Study condition.  Motion polynomials package a
one-parameter family of such displacements; trajectories are computed
as exact rational curves and their degree is reported after cancelling
the common polynomial factor.  The Darboux and Mannheim cubics are the
worked family, and generic straight lines in the model space are
recognised as vertical Darboux motions by exhibiting the surrounding
cylindrical space.
"""

import random
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from .dyads import Classification, Verdict, classify
from .errors import ExactnessError, GeometryError
from .linalg import Matrix, rank
from .polys import Poly, exact_div, low_degree_roots, poly_gcd
from .projgeom import Line, ProjPoint, Subspace, meet, span
from .quadrics import (
    Handedness,
    QuadricForm,
    _ExactFail,
    _split_binary,
    null_cone,
    quadric_y8,
    ruling_handedness,
    study_quadric,
)
from .quaternions import DQ_ONE, DualQuaternion, Q_K, Q_ONE, Quaternion
from .scalars import ComplexFloat, Scalar, ZERO, scalar


class MotionLabel(Enum):
    Darboux = "Darboux"
    Mannheim = "Mannheim"
    VerticalDarboux = "VerticalDarboux"
    Line = "Line"
    Generic = "Generic"


class MotionPoly:
    """Polynomial in one real parameter with dual quaternion coefficients.

    Coefficients are stored highest degree first.  Evaluation at a
    central scalar parameter is exact.
    """

    __slots__ = ("coefficients", "label", "params")

    def __init__(self, coefficients, label: MotionLabel = MotionLabel.Generic,
                 params: Optional[Tuple[Scalar, ...]] = None):
        coeffs = list(coefficients)
        assert all(isinstance(c, DualQuaternion) for c in coeffs)
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
        if not coeffs:
            raise GeometryError("zero motion polynomial")
        self.coefficients = tuple(coeffs)
        self.label = label
        self.params = params

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t) -> DualQuaternion:
        t = scalar(t)
        out = self.coefficients[0]
        for c in self.coefficients[1:]:
            out = out * t + c
        return out

    def __eq__(self, other):
        if not isinstance(other, MotionPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    __hash__ = None

    def __repr__(self):
        return "MotionPoly(%s, degree=%d)" % (self.label.value, self.degree)


@dataclass(frozen=True)
class Trajectory:
    """Homogeneous point path [w(t), x(t), y(t), z(t)] with gcd one."""

    components: Tuple[Poly, Poly, Poly, Poly]
    degree: int

    def point_at(self, t) -> ProjPoint:
        return ProjPoint([p(t) for p in self.components])


def _embed_point(x: ProjPoint) -> DualQuaternion:
    assert x.ambient == 4, "points live in the fiber three-space"
    w, px, py, pz = x.coords
    return DualQuaternion(Quaternion(w), Quaternion(ZERO, px, py, pz))


def _act_conjugate(q: DualQuaternion) -> DualQuaternion:
    # p + eps d  ->  conj(p) - eps conj(d)
    return DualQuaternion(q.primal.conjugate(), -q.dual.conjugate())


def _extract_point(y: DualQuaternion) -> ProjPoint:
    assert y.primal.vector_part().is_zero()
    assert y.dual.scalar_part().is_zero()
    d = y.dual.coords()
    return ProjPoint([y.primal.scalar_part(), d[1], d[2], d[3]])


def act(q: DualQuaternion, x: ProjPoint) -> ProjPoint:
    """Displace the point x by q through the extended kinematic map.

    Defined for every q with nonzero primal part; the Study condition is
    not required.  With q = 1 + eps(u/2) the origin moves by the
    vector u.
    """
    if q.primal.is_zero():
        raise GeometryError("exceptional generator has no displacement")
    return _extract_point(q * _embed_point(x) * _act_conjugate(q))


def trajectory(m: MotionPoly, x: ProjPoint) -> Trajectory:
    """The exact rational path of x under the motion m."""
    if all(c.primal.is_zero() for c in m.coefficients):
        raise GeometryError("exceptional generator has no displacement")
    asc = list(reversed(m.coefficients))
    left = Poly(asc)
    right = Poly([_act_conjugate(c) for c in asc])
    prod = left * Poly([_embed_point(x)]) * right

    comps = []
    for k in (0, 5, 6, 7):
        coeffs = []
        for c in prod.coeffs:
            assert c.primal.vector_part().is_zero()
            assert c.dual.scalar_part().is_zero()
            coeffs.append(c.coords()[k])
        comps.append(Poly(coeffs))
    for p in comps:
        if any(isinstance(c, ComplexFloat) for c in p.coeffs):
            raise ExactnessError("trajectory degree needs exact scalars")

    nonzero = [p for p in comps if not p.is_zero()]
    assert nonzero, "kinematic image vanished identically"
    g = nonzero[0]
    for p in nonzero[1:]:
        g = poly_gcd(g, p)
    comps = [exact_div(p, g) for p in comps]
    degree = max(p.degree for p in comps)
    return Trajectory(tuple(comps), degree)


def darboux(a, b, c) -> MotionPoly:
    """The cubic motion with planar deg-2 trajectories, parameters a, b, c."""
    a, b, c = scalar(a), scalar(b), scalar(c)
    coeffs = [
        DualQuaternion(Q_K, Quaternion(c)),
        DualQuaternion(Q_ONE, Quaternion(b, -a, ZERO, -c)),
        DualQuaternion(Q_K, Quaternion(ZERO, ZERO, -a, -b)),
        DQ_ONE,
    ]
    if a.is_zero():
        return MotionPoly(coeffs, MotionLabel.VerticalDarboux, (b, c))
    return MotionPoly(coeffs, MotionLabel.Darboux, (a, b, c))


_CHI_LABEL = {MotionLabel.Darboux: MotionLabel.Mannheim,
              MotionLabel.Mannheim: MotionLabel.Darboux}


def chi(m: MotionPoly) -> MotionPoly:
    """Coefficient-wise quaternion conjugation: the inverse motion."""
    coeffs = [c.conjugate() for c in m.coefficients]
    return MotionPoly(coeffs, _CHI_LABEL.get(m.label, m.label), m.params)


def mannheim(a, b, c) -> MotionPoly:
    return chi(darboux(a, b, c))


@dataclass(frozen=True)
class DarbouxReport:
    """Intersections of a Darboux curve and its fiber line with Y."""

    p: Quaternion
    d: Tuple[ProjPoint, ProjPoint]
    f: Tuple[ProjPoint, ProjPoint]
    handedness: Optional[Handedness]
    vertical: bool
    mirrored: bool


def _eps_point(v: Quaternion) -> ProjPoint:
    return ProjPoint(DualQuaternion(Quaternion(), v))


def darboux_invariants(a, b, c, mirror: bool = False) -> DarbouxReport:
    """Where the (a,b,c) curve and its fiber projection pierce Y.

    The two curve points are left multiples of the two fiber points by
    the same quaternion, so the connecting lines are left rulings of Y;
    for the mirrored (Mannheim) curve they are right multiples and right
    rulings.  With a = 0 curve and fiber points coincide and the
    distinction vanishes.
    """
    a, b, c = scalar(a), scalar(b), scalar(c)
    if a.is_zero() and b.is_zero() and c.is_zero():
        raise GeometryError("invariants need a nonzero parameter")
    m = mannheim(a, b, c) if mirror else darboux(a, b, c)
    asc = list(reversed(m.coefficients))

    prim = [Poly([q.primal.coords()[k] for q in asc]) for k in range(4)]
    shared = None
    for p in prim:
        if not p.is_zero():
            shared = p if shared is None else poly_gcd(shared, p)
    assert shared is not None and shared.degree == 2
    direction = [exact_div(p, shared) for p in prim]
    roots = low_degree_roots(shared)
    assert roots is not None and len(roots) == 2

    y8 = quadric_y8()
    p_quat = Quaternion(-b, a, ZERO, c)
    ds, fs = [], []
    for t0 in roots:
        value = m(t0)
        assert value.primal.is_zero()
        d_pt = _eps_point(value.dual)
        f_vec = Quaternion(*[p(t0) for p in direction])
        f_pt = _eps_point(f_vec)
        assert y8.contains(d_pt) and y8.contains(f_pt)
        related = f_vec * p_quat.conjugate() if mirror else p_quat * f_vec
        assert _eps_point(related) == d_pt
        ds.append(d_pt)
        fs.append(f_pt)

    if a.is_zero():
        assert ds[0] == fs[0] and ds[1] == fs[1]
        handed = None
    else:
        handed = ruling_handedness(fs[0], ds[0])
        assert ruling_handedness(fs[1], ds[1]) is handed
    return DarbouxReport(p_quat, tuple(ds), tuple(fs), handed,
                         a.is_zero(), mirror)


@dataclass(frozen=True)
class CSpaceReport:
    """A line's surrounding cylindrical space with proof witnesses."""

    space: Subspace
    classification: Classification
    f: Scalar
    g1: Scalar
    g2: Scalar
    witnesses: Dict[str, object]


def _line_on(q: QuadricForm, x: ProjPoint, y: ProjPoint) -> bool:
    return (q.value(x).is_zero() and q.value(y).is_zero()
            and q.polar(x, y).is_zero())


def _unit_scaled(q: DualQuaternion) -> DualQuaternion:
    top = max(abs(c.to_complex()) for c in q.coords())
    assert top > 0
    return q * ComplexFloat(1.0 / top, 0.0, 0.0)


def c_space_from_line(l: Line) -> CSpaceReport:
    """Span a line with its fiber projection and certify the C space.

    The line must contain a displacement, leave the null cone, and
    leave the translation four-space through its points.  Both null
    points of the line are computed exactly; scaled so their sum is a
    point of the line, all witness formulas of the proof apply verbatim.
    """
    assert l.ambient == 8 and l.dim == 1
    p0, p1 = (DualQuaternion.from_coords(row) for row in l.basis.rows)
    if not l.basis.is_exact():
        # the witness formulas are homogeneous; unit-scale representatives
        # keep the residuals commensurate with the absolute tolerance
        p0, p1 = _unit_scaled(p0), _unit_scaled(p1)
    if p0.primal.is_zero() and p1.primal.is_zero():
        raise GeometryError("line inside exceptional generator")
    prim = Matrix([list(p0.primal.coords()), list(p1.primal.coords())])
    if rank(prim) < 2:
        raise GeometryError("line inside translation 4-space")

    qa = p0.primal.norm()
    qb = (p0.primal * p1.primal.conjugate()).scalar_part()
    qc = p1.primal.norm()
    if qa.is_zero() and qb.is_zero() and qc.is_zero():
        raise GeometryError("line inside null cone")
    try:
        roots = _split_binary(qa, qb, qc)
    except _ExactFail:
        raise GeometryError("null points are not rational over the scalar field")
    if len(roots) < 2:
        # a double contact point: the line touches the cone
        raise GeometryError("line inside null cone")

    a_dq = p0 * roots[0][0] + p1 * roots[0][1]
    b_dq = p0 * roots[1][0] + p1 * roots[1][1]
    ap, bp = a_dq.primal, b_dq.primal

    f = (ap * bp.conjugate() + bp * ap.conjugate()).scalar_part()
    assert not f.is_zero(), "independent null directions have nonzero pairing"
    g1 = (ap * a_dq.dual.conjugate() + a_dq.dual * ap.conjugate()).scalar_part()
    g2 = -(bp * b_dq.dual.conjugate() + b_dq.dual * bp.conjugate()).scalar_part()

    a_pt, b_pt = ProjPoint(a_dq), ProjPoint(b_dq)
    s1, s2 = _eps_point(ap), _eps_point(bp)
    eps_ap = DualQuaternion(Quaternion(), ap)
    eps_bp = DualQuaternion(Quaternion(), bp)
    e1 = Line.through(s1, s2)
    l1 = Line.through(ProjPoint(a_dq * (-f) + eps_bp * g1), s1)
    l2 = Line.through(ProjPoint(b_dq * f + eps_ap * g2), s2)
    # fourth ruling: anchored at the gamma = g2 point of l1; its partner on
    # l2 shifts by twice the base point's Study value, which vanishes when
    # the base point a + b is itself a displacement
    base = a_dq + b_dq
    h = (base.primal * base.dual.conjugate()
         + base.dual * base.primal.conjugate()).scalar_part()
    n1 = ProjPoint(a_dq * (-f) + eps_ap * g2 + eps_bp * g1)
    n2 = ProjPoint(b_dq * f + eps_ap * g2 + eps_bp * (g1 - h))
    n = Line.through(n1, n2)

    space = span([a_pt, b_pt, s1, s2])
    assert space.dim == 3

    s_form, n_form = study_quadric(), null_cone()
    for witness in (e1, l1, l2):
        wa = ProjPoint(witness.basis.rows[0])
        wb = ProjPoint(witness.basis.rows[1])
        assert space.contains(wa) and space.contains(wb)
        assert _line_on(s_form, wa, wb) and _line_on(n_form, wa, wb)
    assert space.contains(n1) and space.contains(n2)
    assert _line_on(s_form, n1, n2)
    assert h.is_zero() == n.contains(ProjPoint(base))
    assert meet(n, e1).dim == -1

    if space.basis.is_exact():
        classification = classify(space)
        assert classification.verdict is Verdict.C
    else:
        # float input: the witness checks above already certified the
        # structure at tolerance, the exact classifier does not apply
        classification = Classification(Verdict.C, {"approx": True})
    witnesses = {"a": a_pt, "b": b_pt, "s1": s1, "s2": s2,
                 "e1": e1, "l1": l1, "l2": l2, "n1": n1, "n2": n2, "n": n}
    return CSpaceReport(space, classification, f, g1, g2, witnesses)


def is_vertical_darboux(l: Line) -> bool:
    """Whether the line's motion is a vertical Darboux motion.

    Certifies the C space around the line, then spot-checks that three
    sample trajectories have degree at most two.
    """
    c_space_from_line(l)
    p0, p1 = (DualQuaternion.from_coords(row) for row in l.basis.rows)
    m = MotionPoly([p1, p0], MotionLabel.Line)
    rng = random.Random(1105)
    for _ in range(3):
        coords = [ZERO, ZERO, ZERO, ZERO]
        while all(c.is_zero() for c in coords):
            coords = [scalar(rng.randint(-9, 9)) for _ in range(4)]
        assert trajectory(m, ProjPoint(coords)).degree <= 2
    return True
