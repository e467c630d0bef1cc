"""Points and tetrahedra, with the per-element geometry everything else uses.

Angles are reported in degrees and computed in floating point from exact
integer dot and cross products.  Acuteness and projection questions are
answered by sign tests on those integers, never by comparing an angle to 90.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence, Tuple

from .predicates import (
    SCALE,
    IntPoint,
    circumcenter_int,
    cross_int,
    dot_int,
    grid_point,
    insphere_int,
    orient3d_int,
    sign,
    snap,
)

#: all six edges of a tetrahedron as vertex-index pairs, in label order
EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class Point3(NamedTuple):
    x: float
    y: float
    z: float

    @classmethod
    def snapped(cls, x: float, y: float, z: float) -> "Point3":
        return cls(snap(x), snap(y), snap(z))

    def grid(self) -> IntPoint:
        return grid_point(self)

    def __add__(self, other):  # type: ignore[override]
        return Point3(self.x + other[0], self.y + other[1], self.z + other[2])

    def __sub__(self, other):
        return Point3(self.x - other[0], self.y - other[1], self.z - other[2])

    def scaled(self, s: float) -> "Point3":
        return Point3(self.x * s, self.y * s, self.z * s)


def as_point(p: Sequence[float]) -> Point3:
    if isinstance(p, Point3):
        return Point3.snapped(*p)
    x, y, z = p
    return Point3.snapped(float(x), float(y), float(z))


class DegenerateError(ValueError):
    """Raised for zero-volume tetrahedra and other degenerate input."""


@dataclass(frozen=True)
class Tetrahedron:
    """Four snapped vertices in positive orientation.

    Construction swaps the last two vertices when the given order is
    negatively oriented and refuses zero-volume input.
    """

    v0: Point3
    v1: Point3
    v2: Point3
    v3: Point3

    def __post_init__(self):
        vs = [as_point(v) for v in (self.v0, self.v1, self.v2, self.v3)]
        g = [v.grid() for v in vs]
        o = orient3d_int(*g)
        if o == 0:
            raise DegenerateError("tetrahedron has zero volume")
        if o < 0:
            vs[2], vs[3] = vs[3], vs[2]
        for name, v in zip(("v0", "v1", "v2", "v3"), vs):
            object.__setattr__(self, name, v)

    @property
    def vertices(self) -> Tuple[Point3, Point3, Point3, Point3]:
        return (self.v0, self.v1, self.v2, self.v3)

    def grid(self) -> Tuple[IntPoint, IntPoint, IntPoint, IntPoint]:
        return tuple(v.grid() for v in self.vertices)  # type: ignore[return-value]

    def volume(self) -> float:
        return orient3d_int(*self.grid()) / 6.0 / SCALE ** 3

    def edge_lengths(self) -> Tuple[float, ...]:
        g = self.grid()
        return tuple(_length(_sub(g[j], g[i])) / SCALE for i, j in EDGES)

    def __iter__(self) -> Iterator[Point3]:
        return iter(self.vertices)


@dataclass(frozen=True)
class DihedralSet:
    """The six dihedral angles of a tetrahedron, keyed by vertex-index pair."""

    angles: Tuple[Tuple[Tuple[int, int], float], ...]

    def __post_init__(self):
        if len(self.angles) != 6:
            raise ValueError("a tetrahedron has exactly six dihedral angles")
        for _, a in self.angles:
            if not 0.0 < a < 180.0:
                raise ValueError(f"dihedral angle out of range: {a}")

    def __getitem__(self, edge: Tuple[int, int]) -> float:
        key = tuple(sorted(edge))
        for e, a in self.angles:
            if e == key:
                return a
        raise KeyError(edge)

    def values(self) -> Tuple[float, ...]:
        return tuple(a for _, a in self.angles)

    def min(self) -> float:
        return min(self.values())

    def max(self) -> float:
        return max(self.values())


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _length(v) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def _tet(t) -> Tetrahedron:
    if isinstance(t, Tetrahedron):
        return t
    return Tetrahedron(*t)


# -- predicates on user-facing points --------------------------------------

def orient3d(p, q, r, s) -> int:
    """Sign of the signed volume of ``pqrs`` after snapping: -1, 0 or +1."""
    return sign(orient3d_int(*(grid_point(v) for v in (p, q, r, s))))


def insphere(p, q, r, s, t) -> int:
    """+1 if ``t`` is strictly inside the circumsphere of ``pqrs``, 0 if on
    it, -1 if outside.  ``pqrs`` must be positively oriented."""
    g = [grid_point(v) for v in (p, q, r, s, t)]
    o = orient3d_int(*g[:4])
    if o == 0:
        raise DegenerateError("insphere: first four points are coplanar")
    if o < 0:
        raise ValueError("insphere: first four points must be positively oriented")
    return sign(insphere_int(*g))


# -- per-element geometry ----------------------------------------------------

def _edge_terms(g, i, j):
    """Exact normal dot product and the float sine factor for edge ij."""
    k, l = (m for m in range(4) if m not in (i, j))
    e = _sub(g[j], g[i])
    n1 = cross_int(e, _sub(g[k], g[i]))
    n2 = cross_int(e, _sub(g[l], g[i]))
    return dot_int(n1, n2), e


def dihedral_angles(t) -> DihedralSet:
    """Interior dihedral angle (degrees) along each of the six edges.

    Uses ``atan2(|e| * 6V, n1 . n2)`` where ``n1, n2`` are the facet normals
    through the edge ``e``; this stays accurate near 0 and 180 degrees.
    """
    t = _tet(t)
    g = t.grid()
    vol6 = float(abs(orient3d_int(*g)))
    out = []
    for i, j in EDGES:
        d, e = _edge_terms(g, i, j)
        out.append(((i, j), math.degrees(math.atan2(_length(e) * vol6, float(d)))))
    return DihedralSet(tuple(out))


def dihedral_along(t, p, q) -> float:
    """Dihedral angle of ``t`` along the edge joining vertices ``p`` and ``q``."""
    t = _tet(t)
    gp, gq = grid_point(p), grid_point(q)
    g = t.grid()
    i, j = g.index(gp), g.index(gq)
    return dihedral_angles(t)[(i, j)]


def edge_signs(t) -> Tuple[int, ...]:
    """Sign of the cosine of each dihedral angle, in :data:`EDGES` order."""
    g = _tet(t).grid()
    return tuple(sign(_edge_terms(g, i, j)[0]) for i, j in EDGES)


def is_acute(t) -> bool:
    """True iff all six dihedral angles are strictly below 90 degrees.

    An edge is acute exactly when the two facet normals through it have a
    positive dot product; the test is done on exact integers.
    """
    return all(s > 0 for s in edge_signs(t))


INSIDE, ON_BOUNDARY, OUTSIDE = "inside", "on-boundary", "outside"


def vertex_projection_test(t) -> Tuple[str, str, str, str]:
    """Where each vertex lands when projected onto its opposite facet's plane.

    The projection is formed explicitly in homogeneous integer coordinates
    (scaled by ``|n|**2``) and then located against the facet's three edges.
    """
    g = _tet(t).grid()
    result = []
    for v in range(4):
        a, b, c = (g[m] for m in range(4) if m != v)
        n = cross_int(_sub(b, a), _sub(c, a))
        nn = dot_int(n, n)
        h = dot_int(_sub(g[v], a), n)
        # nn * projection, relative to nn * a
        proj = tuple(nn * (g[v][i] - a[i]) - h * n[i] for i in range(3))
        sides = []
        for p0, p1 in ((a, b), (b, c), (c, a)):
            e = _sub(p1, p0)
            rel = tuple(proj[i] - nn * (p0[i] - a[i]) for i in range(3))
            sides.append(sign(dot_int(cross_int(e, rel), n)))
        if all(s > 0 for s in sides):
            result.append(INSIDE)
        elif any(s < 0 for s in sides):
            result.append(OUTSIDE)
        else:
            result.append(ON_BOUNDARY)
    return tuple(result)  # type: ignore[return-value]


def face_angles(t) -> Tuple[Tuple[float, float, float], ...]:
    """Interior angles of the four facets.

    Facet ``k`` is the one opposite vertex ``k``; its three angles are listed
    at its vertices in increasing index order.
    """
    g = _tet(t).grid()
    out = []
    for k in range(4):
        idx = [m for m in range(4) if m != k]
        angs = []
        for m in idx:
            o1, o2 = (g[x] for x in idx if x != m)
            u, w = _sub(o1, g[m]), _sub(o2, g[m])
            c = _length(cross_int(u, w))
            angs.append(math.degrees(math.atan2(c, float(dot_int(u, w)))))
        out.append(tuple(angs))
    return tuple(out)


def circumsphere(t) -> Tuple[Point3, float]:
    """Center (snapped) and radius of the sphere through the four vertices."""
    g = _tet(t).grid()
    nx, ny, nz, den = circumcenter_int(*g)
    r2 = sum((n - den * a) ** 2 for n, a in zip((nx, ny, nz), g[0]))
    radius = math.sqrt(r2 / den / den) / SCALE
    d = den * SCALE
    return Point3.snapped(nx / d, ny / d, nz / d), radius


def radius_edge_ratio(t) -> float:
    """Circumradius over shortest edge length."""
    t = _tet(t)
    _, r = circumsphere(t)
    return r / min(t.edge_lengths())


def tet_quality(t) -> Tuple[float, float, float]:
    """``(radius-edge ratio, smallest dihedral, largest dihedral)``."""
    d = dihedral_angles(t)
    return radius_edge_ratio(t), d.min(), d.max()


def circumsphere_contains(t, p) -> int:
    """Plain in-sphere sign of ``p`` against tetrahedron ``t``."""
    t = _tet(t)
    return sign(insphere_int(*t.grid(), grid_point(p)))
