"""Quadric forms and the pencil geometry used throughout the package.

The absolute pencil on P^7 is spanned by the null cone N (primal norm)
and the Study quadric S (dual norm part).  Common lines of two quadric
surfaces in a 3-space chart are located through degenerate pencil
members: a pencil whose base locus contains a line has a determinant
form that is a perfect square, so every line sits inside a member at a
multiple root (or at infinity when the far member is degenerate enough).
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import GeometryError
from .linalg import (
    Matrix,
    nullspace,
    rank,
    rref,
    scalar_multiple_of,
    signature as matrix_signature,
    solve,
)
from .polys import Poly, durand_kerner, low_degree_roots, poly_gcd, squarefree_part
from .projgeom import Line, ProjPoint, Subspace
from .quaternions import Quaternion, left_mul_matrix, right_mul_matrix
from .scalars import (
    ComplexFloat,
    ExactRational,
    GaussianRational,
    Scalar,
    scalar,
    scalar_to_json,
    DEFAULT_TOLERANCE,
    ONE,
    ZERO,
)


class QuadricForm:
    __slots__ = ("gram", "label")

    def __init__(self, gram: Matrix, label: str = "restricted"):
        assert gram.nrows == gram.ncols and gram.is_symmetric()
        self.gram = gram
        self.label = label

    @property
    def n(self) -> int:
        return self.gram.nrows

    def value(self, p: ProjPoint) -> Scalar:
        return self.polar(p, p)

    def polar(self, p: ProjPoint, q: ProjPoint) -> Scalar:
        assert p.ambient == self.n and q.ambient == self.n
        out = ZERO
        row = self.gram.apply(q.coords)
        for a, b in zip(p.coords, row):
            out = out + a * b
        return out

    def contains(self, p: ProjPoint) -> bool:
        return self.value(p).is_zero()

    def rank(self) -> int:
        return rank(self.gram)

    def signature(self) -> Tuple[int, int, int]:
        return matrix_signature(self.gram)

    def __eq__(self, other):
        if not isinstance(other, QuadricForm):
            return NotImplemented
        return self.gram == other.gram

    __hash__ = None

    def __repr__(self):
        return "QuadricForm(%s, %r)" % (self.label, self.gram)


def pencil_member(nu, sigma) -> QuadricForm:
    """8x8 member [[nu I, sigma I], [sigma I, 0]] of the absolute pencil."""
    nu, sigma = scalar(nu), scalar(sigma)
    if nu.is_zero() and sigma.is_zero():
        raise GeometryError("degenerate pencil parameter")
    eye = Matrix.identity(4)
    gram = Matrix.block2x2(eye.scale(nu), eye.scale(sigma),
                           eye.scale(sigma), Matrix.zeros(4, 4))
    if sigma.is_zero():
        label = "N"
    elif nu.is_zero():
        label = "S"
    else:
        label = "pencil(%s,%s)" % (scalar_to_json(nu), scalar_to_json(sigma))
    return QuadricForm(gram, label)


def study_quadric() -> QuadricForm:
    return pencil_member(0, 1)


def null_cone() -> QuadricForm:
    return pencil_member(1, 0)


def quadric_e() -> QuadricForm:
    """The norm form on the primal chart [H]: p -> p conj(p)."""
    return QuadricForm(Matrix.identity(4), "E")


def quadric_y() -> QuadricForm:
    """The norm form on the exceptional chart [eps H]: eps d -> d conj(d)."""
    return QuadricForm(Matrix.identity(4), "Y")


def quadric_y8() -> QuadricForm:
    """Rank-4 extension of Y to all of P^7."""
    z = Matrix.zeros(4, 4)
    return QuadricForm(Matrix.block2x2(z, z, z, Matrix.identity(4)), "Y")


def restrict(form: QuadricForm, u: Subspace) -> QuadricForm:
    assert u.basis is not None and u.ambient == form.n
    gram = u.basis * form.gram * u.basis.transpose()
    return QuadricForm(gram, "restricted")


def quadric_signature(form: QuadricForm) -> Tuple[int, int, int]:
    return form.signature()


def is_null_line(x: ProjPoint, y: ProjPoint) -> bool:
    """Whether the whole line through x and y sits inside both S and N."""
    assert x.ambient == 8 and y.ambient == 8
    if x == y:
        raise GeometryError("coincident points do not span a line")
    a, b = x.dq(), y.dq()
    for q in (a, b):
        n = q.norm()
        if not (n.re.is_zero() and n.du.is_zero()):
            return False
    cross = a * b.conjugate() + b * a.conjugate()
    return cross.is_zero()


class Handedness(enum.Enum):
    RightRuling = "RightRuling"
    LeftRuling = "LeftRuling"
    NotARuling = "NotARuling"


def ruling_handedness(a: ProjPoint, b: ProjPoint) -> Handedness:
    """Which ruling family of Y the line [a] v [b] belongs to.

    Right rulings are the orbits b = a q of right multiplication, left
    rulings the orbits b = q a; both points must lie on Y inside the
    exceptional generator.
    """
    assert a.ambient == 8 and b.ambient == 8
    if a == b:
        raise GeometryError("coincident points do not span a line")
    for p in (a, b):
        if not all(c.is_zero() for c in p.coords[:4]):
            return Handedness.NotARuling
    da = Quaternion(*a.coords[4:])
    db = Quaternion(*b.coords[4:])
    if not (da.norm().is_zero() and db.norm().is_zero()):
        return Handedness.NotARuling
    right = solve(left_mul_matrix(da), db.coords()) is not None
    left = solve(right_mul_matrix(da), db.coords()) is not None
    if right and left:
        # a H intersects H a in the span of a only, so distinct points
        # never solve both systems
        raise AssertionError("ruling ambiguity for distinct points")
    if right:
        return Handedness.RightRuling
    if left:
        return Handedness.LeftRuling
    return Handedness.NotARuling


# --- common lines of two quadric surfaces in a 3-space chart -------------

class _ExactFail(Exception):
    """A needed square root does not exist in the exact tower."""


def _det_poly(rows: List[List[Poly]]) -> Poly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = Poly([])
    for j in range(n):
        e = rows[0][j]
        if e.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = e * _det_poly(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def _pencil_det(g1: Matrix, g2: Matrix) -> Poly:
    rows = [[Poly([g1[i, j], g2[i, j]]) for j in range(4)] for i in range(4)]
    return _det_poly(rows)


def _split_binary(a: Scalar, b: Scalar, c: Scalar) -> List[Tuple[Scalar, Scalar]]:
    """Root pairs (alpha, beta) of a alpha^2 + 2 b alpha beta + c beta^2."""
    if a.is_zero():
        if b.is_zero():
            assert not c.is_zero()
            return [(ONE, ZERO)]
        return [(ONE, ZERO), (-c, 2 * b)]
    disc = b * b - a * c
    if disc.is_zero():
        return [(-b, a)]
    s = disc.sqrt()
    if s is None:
        raise _ExactFail()
    return [(-b + s, a), (-b - s, a)]


def _complement_columns(kernel_rows: List) -> List[int]:
    red, pivots = rref(Matrix(kernel_rows))
    width = red.ncols
    return [j for j in range(width) if j not in pivots]


def _unit_point(n: int, j: int) -> ProjPoint:
    coords = [ZERO] * n
    coords[j] = ONE
    return ProjPoint(coords)


def _direction_point(n: int, j1: int, j2: int, alpha: Scalar, beta: Scalar) -> ProjPoint:
    coords = [ZERO] * n
    coords[j1] = alpha
    coords[j2] = beta
    return ProjPoint(coords)


def _conic_line_pairs(conic: Matrix) -> List[Tuple[ProjPoint, ProjPoint]]:
    """Lines of a degenerate conic in a plane chart, as point pairs."""
    assert conic.nrows == 3
    r = rank(conic)
    if r == 3:
        return []
    kern = nullspace(conic)
    if r == 2:
        vertex = ProjPoint(kern[0])
        j1, j2 = _complement_columns(kern)
        e1, e2 = _unit_point(3, j1), _unit_point(3, j2)
        form = QuadricForm(conic)
        a, b, c = form.value(e1), form.polar(e1, e2), form.value(e2)
        return [(vertex, _direction_point(3, j1, j2, al, be))
                for al, be in _split_binary(a, b, c)]
    if r == 1:
        return [(ProjPoint(kern[0]), ProjPoint(kern[1]))]
    raise GeometryError("degenerate conic extraction")


def _planes_of_member(member: Matrix) -> List[Subspace]:
    """Planes inside a pencil member of rank <= 2, as chart subspaces."""
    r = rank(member)
    assert r <= 2
    kern = nullspace(member)
    if r == 1:
        return [Subspace.from_rows(kern, 4)]
    j1, j2 = _complement_columns(kern)
    e1, e2 = _unit_point(4, j1), _unit_point(4, j2)
    form = QuadricForm(member)
    a, b, c = form.value(e1), form.polar(e1, e2), form.value(e2)
    planes = []
    for al, be in _split_binary(a, b, c):
        rows = list(kern) + [_direction_point(4, j1, j2, al, be).coords]
        planes.append(Subspace.from_rows(rows, 4))
    return planes


def _member_line_pairs(member: Matrix, anchor: QuadricForm):
    """Candidate common lines contributed by one degenerate member."""
    r = rank(member)
    pairs = []
    if r == 4:
        return pairs
    if r == 3:
        vertex = ProjPoint(nullspace(member)[0])
        if not anchor.value(vertex).is_zero():
            return pairs
        # lines on the anchor through the vertex live in its polar plane
        polar_row = anchor.gram.apply(vertex.coords)
        plane_rows = nullspace(Matrix([polar_row]))
        plane = Subspace.from_rows(plane_rows, 4)
        conic = restrict(anchor, plane)
        for pa, pb in _conic_line_pairs(conic.gram):
            pairs.append((plane.lift(pa), plane.lift(pb)))
        return pairs
    for plane in _planes_of_member(member):
        conic = restrict(anchor, plane)
        for pa, pb in _conic_line_pairs(conic.gram):
            pairs.append((plane.lift(pa), plane.lift(pb)))
    return pairs


def _line_verified(q1: QuadricForm, q2: QuadricForm, a: ProjPoint,
                   b: ProjPoint) -> bool:
    if a == b:
        return False
    for g in (q1, q2):
        checks = (g.value(a), g.value(b), g.polar(a, b))
        if any(not v.is_zero() for v in checks):
            return False
    return True


def _rationalized(p: ProjPoint, limit: int = 10 ** 6) -> Optional[ProjPoint]:
    coords = []
    for c in p.coords:
        z = c.to_complex()
        re = Fraction(z.real).limit_denominator(limit)
        im = Fraction(z.imag).limit_denominator(limit)
        coords.append(GaussianRational(re, im) if im else ExactRational(re))
    if all(c.is_zero() for c in coords):
        return None
    return ProjPoint(coords)


def _line_sort_key(line: Line) -> str:
    def fmt(c: Scalar) -> str:
        if isinstance(c, ComplexFloat):
            z = c.to_complex()
            return "%.9g%+.9gi" % (z.real, z.imag)
        return str(c)
    return ";".join(",".join(fmt(c) for c in row) for row in line.basis.rows)


def _exact_member_grams(det_poly: Poly, g1: Matrix, g2: Matrix) -> Optional[List[Matrix]]:
    members = []
    if det_poly.degree >= 1:
        g = poly_gcd(det_poly, det_poly.derivative())
        if g.degree >= 1:
            roots = low_degree_roots(squarefree_part(g))
            if roots is None:
                return None
            for s0 in roots:
                members.append(g1 + g2.scale(s0))
    if 4 - det_poly.degree >= 2:
        members.append(g2)
    return members


def _float_member_grams(det_poly: Poly, g1: Matrix, g2: Matrix,
                        tolerance: float) -> List[Matrix]:
    def to_cf(m: Matrix) -> Matrix:
        return Matrix([[ComplexFloat(e.to_complex(), tolerance=tolerance)
                        for e in row] for row in m.rows])

    f1, f2 = to_cf(g1), to_cf(g2)
    coeffs = [c.to_complex() for c in det_poly.coeffs]
    members = []
    if len(coeffs) >= 3:
        roots = durand_kerner(coeffs)
        scale = max(abs(c) for c in coeffs)
        residual_tol = max(tolerance, 1e-10) ** 0.5 * scale

        def val(z):
            out = 0j
            for c in reversed(coeffs):
                out = out * z + c
            return out

        bad = [z for z in roots if abs(val(z)) > residual_tol]
        if bad:
            raise GeometryError(
                "root isolation failed; residual %.3e" % max(abs(val(z)) for z in bad))
        cluster_tol = max(tolerance, 1e-12) ** 0.5 * 10
        used = [False] * len(roots)
        for i, z in enumerate(roots):
            if used[i]:
                continue
            cluster = [z]
            used[i] = True
            for j in range(i + 1, len(roots)):
                if not used[j] and abs(roots[j] - z) < cluster_tol:
                    cluster.append(roots[j])
                    used[j] = True
            if len(cluster) >= 2:
                mean = sum(cluster) / len(cluster)
                s0 = ComplexFloat(mean, tolerance=tolerance)
                members.append(f1 + f2.scale(s0))
    if 4 - det_poly.degree >= 2:
        members.append(f2)
    return members


def common_lines(q1: QuadricForm, q2: QuadricForm,
                 tolerance: float = DEFAULT_TOLERANCE) -> List[Line]:
    """All lines lying on both quadric surfaces of a 3-space chart.

    q1 anchors the pencil and must be regular.  Exact inputs take an
    exact path whenever the needed roots exist in the Gaussian
    rationals; otherwise candidates are found in floating point and
    re-verified, exactly when the coordinates rationalize, at tolerance
    (and flagged approximate) when not.
    """
    assert q1.n == 4 and q2.n == 4
    if rank(q1.gram) != 4:
        raise GeometryError("pencil anchor must be regular")
    if scalar_multiple_of(q2.gram, q1.gram) is not None:
        raise GeometryError("identical quadrics")
    det_poly = _pencil_det(q1.gram, q2.gram)
    assert not det_poly.is_zero()

    exact_input = q1.gram.is_exact() and q2.gram.is_exact()
    members: Optional[List[Matrix]] = None
    exact_mode = False
    if exact_input:
        members = _exact_member_grams(det_poly, q1.gram, q2.gram)
        exact_mode = members is not None

    lines: List[Line] = []

    def add_line(a: ProjPoint, b: ProjPoint, approx: bool):
        line = Line.through(a, b, approx=approx)
        if not any(line == seen for seen in lines):
            lines.append(line)

    if exact_mode:
        try:
            for member in members:
                for a, b in _member_line_pairs(member, q1):
                    if _line_verified(q1, q2, a, b):
                        add_line(a, b, approx=False)
            return sorted(lines, key=_line_sort_key)
        except _ExactFail:
            lines = []

    # floating point tier
    fq1 = QuadricForm(Matrix([[ComplexFloat(e.to_complex(), tolerance=tolerance)
                               for e in row] for row in q1.gram.rows]))
    fq2 = QuadricForm(Matrix([[ComplexFloat(e.to_complex(), tolerance=tolerance)
                               for e in row] for row in q2.gram.rows]))
    for member in _float_member_grams(det_poly, q1.gram, q2.gram, tolerance):
        try:
            pairs = _member_line_pairs(member, fq1)
        except _ExactFail:  # pragma: no cover - float sqrt always exists
            continue
        for a, b in pairs:
            if exact_input:
                ra, rb = _rationalized(a), _rationalized(b)
                if (ra is not None and rb is not None and
                        not (ra == rb) and _line_verified(q1, q2, ra, rb)):
                    add_line(ra, rb, approx=False)
                    continue
            if _line_verified(fq1, fq2, a, b):
                add_line(a, b, approx=True)
    return sorted(lines, key=_line_sort_key)
