"""Projective points, subspaces and lines of P^7 (and its charts).

Subspaces are canonicalized to reduced row echelon form, so equality of
subspaces is equality of representations.  The ambient dimension is 8
for dual quaternion space; restricted charts use smaller vectors.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import GeometryError
from .linalg import Matrix, as_vector, nullspace, rref, solve, vec_is_zero
from .quaternions import DualQuaternion, Quaternion
from .scalars import Scalar, ONE, ZERO


class ProjPoint:
    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        if isinstance(coords, DualQuaternion):
            coords = coords.coords()
        cs = as_vector(coords)
        assert len(cs) >= 2
        if vec_is_zero(cs):
            raise GeometryError("zero vector is not a projective point")
        self.coords = cs

    @property
    def ambient(self) -> int:
        return len(self.coords)

    def dq(self) -> DualQuaternion:
        assert len(self.coords) == 8
        return DualQuaternion.from_coords(self.coords)

    def normalized(self) -> "ProjPoint":
        """Representative scaled so the first nonzero coordinate is one."""
        pivot = next(c for c in self.coords if not c.is_zero())
        inv = ONE / pivot
        return ProjPoint([inv * c for c in self.coords])

    def scalar_conjugate(self) -> "ProjPoint":
        return ProjPoint([c.conjugate() for c in self.coords])

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.ambient != other.ambient:
            return False
        a = self.normalized().coords
        b = other.normalized().coords
        return all(x == y for x, y in zip(a, b))

    __hash__ = None

    def __repr__(self):
        return "ProjPoint[%s]" % ", ".join(str(c) for c in self.coords)


class Subspace:
    """Projective subspace given by an RREF matrix of spanning rows.

    The empty subspace (projective dimension -1) has basis None.
    """

    __slots__ = ("basis", "ambient")

    def __init__(self, basis: Optional[Matrix], ambient: int):
        if basis is not None:
            assert basis.ncols == ambient
        self.basis = basis
        self.ambient = ambient

    @staticmethod
    def from_rows(rows: Sequence[Sequence], ambient: int) -> "Subspace":
        mat = Matrix(rows) if len(rows) else None
        if mat is None:
            return Subspace(None, ambient)
        red, pivots = rref(mat)
        if not pivots:
            return Subspace(None, ambient)
        return Subspace(Matrix(red.rows[:len(pivots)]), ambient)

    @staticmethod
    def empty(ambient: int) -> "Subspace":
        return Subspace(None, ambient)

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(Matrix.identity(ambient), ambient)

    @property
    def dim(self) -> int:
        """Projective dimension."""
        return -1 if self.basis is None else self.basis.nrows - 1

    def points(self) -> List[ProjPoint]:
        if self.basis is None:
            return []
        return [ProjPoint(row) for row in self.basis.rows]

    def contains(self, p: ProjPoint) -> bool:
        if self.basis is None:
            return False
        assert p.ambient == self.ambient
        stacked = Subspace.from_rows(list(self.basis.rows) + [p.coords], self.ambient)
        return stacked.dim == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.basis is None:
            return True
        return all(self.contains(p) for p in other.points())

    def lift(self, chart_point: ProjPoint) -> ProjPoint:
        """Chart coordinates (relative to the basis rows) to ambient point."""
        assert self.basis is not None
        assert chart_point.ambient == self.basis.nrows
        out = [ZERO] * self.ambient
        for c, row in zip(chart_point.coords, self.basis.rows):
            out = [o + c * r for o, r in zip(out, row)]
        return ProjPoint(out)

    def chart_coords(self, p: ProjPoint) -> Optional[ProjPoint]:
        """Coordinates of p in this subspace's basis, or None if outside."""
        if self.basis is None:
            return None
        sol = solve(self.basis.transpose(), p.coords)
        if sol is None:
            return None
        residual = self.basis.transpose().apply(sol)
        if any(not (a - b).is_zero() for a, b in zip(residual, p.coords)):
            return None
        return ProjPoint(sol)

    def conjugation_closed(self) -> bool:
        if self.basis is None:
            return True
        conj = Subspace.from_rows(
            [[c.conjugate() for c in row] for row in self.basis.rows], self.ambient)
        return conj == self

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient != other.ambient:
            return False
        if (self.basis is None) != (other.basis is None):
            return False
        if self.basis is None:
            return True
        return self.basis == other.basis

    __hash__ = None

    def __repr__(self):
        if self.basis is None:
            return "Subspace(empty, ambient=%d)" % self.ambient
        rows = "; ".join(", ".join(str(c) for c in r) for r in self.basis.rows)
        return "Subspace[%s]" % rows


def span(points: Sequence[ProjPoint]) -> Subspace:
    assert points
    ambient = points[0].ambient
    assert all(p.ambient == ambient for p in points)
    return Subspace.from_rows([p.coords for p in points], ambient)


def join(a: Subspace, b: Subspace) -> Subspace:
    assert a.ambient == b.ambient
    rows = []
    if a.basis is not None:
        rows += list(a.basis.rows)
    if b.basis is not None:
        rows += list(b.basis.rows)
    return Subspace.from_rows(rows, a.ambient)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of row spaces; the empty subspace when disjoint."""
    assert a.ambient == b.ambient
    if a.basis is None or b.basis is None:
        return Subspace.empty(a.ambient)
    ra, rb = a.basis.nrows, b.basis.nrows
    # columns: basis vectors of a, then of b negated; kernel rows combine them
    cols = [a.basis.row(i) for i in range(ra)]
    cols += [tuple(-c for c in b.basis.row(i)) for i in range(rb)]
    system = Matrix.from_columns(cols)
    rows = []
    for combo in nullspace(system):
        vec = [ZERO] * a.ambient
        for c, brow in zip(combo[:ra], a.basis.rows):
            vec = [v + c * e for v, e in zip(vec, brow)]
        rows.append(vec)
    return Subspace.from_rows(rows, a.ambient)


class Line(Subspace):
    """Projective line; approx marks members verified only at tolerance."""

    __slots__ = ("approx",)

    def __init__(self, basis: Matrix, ambient: int, approx: bool = False):
        super().__init__(basis, ambient)
        assert self.dim == 1
        self.approx = approx

    @staticmethod
    def through(x: ProjPoint, y: ProjPoint, approx: bool = False) -> "Line":
        s = span([x, y])
        if s.dim != 1:
            raise GeometryError("coincident points do not span a line")
        return Line(s.basis, s.ambient, approx)

    @staticmethod
    def of(sub: Subspace, approx: bool = False) -> "Line":
        assert sub.dim == 1
        return Line(sub.basis, sub.ambient, approx)


# --- the exceptional generator and the fiber projectivity ---------------

def exceptional_generator() -> Subspace:
    """The 3-space [eps H] of vanishing primal part."""
    rows = []
    for k in range(4):
        row = [ZERO] * 8
        row[4 + k] = ONE
        rows.append(row)
    return Subspace.from_rows(rows, 8)


def primal_part(p: ProjPoint) -> Quaternion:
    assert p.ambient == 8
    return Quaternion(*p.coords[:4])


def dual_part(p: ProjPoint) -> Quaternion:
    assert p.ambient == 8
    return Quaternion(*p.coords[4:])


def fiber_projectivity(x: ProjPoint) -> ProjPoint:
    """phi([x' + eps x'']) = [eps x']."""
    assert x.ambient == 8
    if all(c.is_zero() for c in x.coords[:4]):
        raise GeometryError(
            "fiber projectivity undefined on the exceptional generator")
    return ProjPoint(tuple([ZERO] * 4) + tuple(x.coords[:4]))


def fiber_image(u: Subspace) -> Subspace:
    """Span of phi over all of u (equivalently over basis points off eps H)."""
    assert u.ambient == 8
    rows = []
    for p in u.points():
        if not all(c.is_zero() for c in p.coords[:4]):
            rows.append(fiber_projectivity(p).coords)
    if not rows:
        raise GeometryError(
            "fiber projectivity undefined on the exceptional generator")
    return Subspace.from_rows(rows, 8)


def fiber_line(x: ProjPoint) -> Line:
    return Line.through(x, fiber_projectivity(x))


def project_from_center(x: ProjPoint, center: Subspace, target: Subspace) -> ProjPoint:
    if center.contains(x):
        raise GeometryError("projection not well defined")
    image = meet(join(span([x]), center), target)
    if image.dim != 0:
        raise GeometryError("projection not well defined")
    return image.points()[0]


# --- the conjugation map chi --------------------------------------------

def chi_point(p: ProjPoint) -> ProjPoint:
    """Quaternion conjugation on both halves: [q] -> [conj(q)]."""
    assert p.ambient == 8
    q = p.dq().conjugate()
    return ProjPoint(q.coords())


def chi_subspace(u: Subspace) -> Subspace:
    assert u.ambient == 8
    if u.basis is None:
        return u
    return Subspace.from_rows([chi_point(ProjPoint(r)).coords for r in u.basis.rows], 8)
