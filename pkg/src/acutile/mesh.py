"""Tetrahedral meshes that may repeat under a lattice.

A tet references its vertices as ``(vertex index, lattice offset)`` pairs;
the position of a reference is ``vertices[i] + offset @ lattice``.  Meshes
are stored in a canonical form so that two meshes describing the same
tiling compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .geom import Point3, Tetrahedron, as_point
from .predicates import IntPoint, orient3d_int

Offset = Tuple[int, int, int]
Ref = Tuple[int, Offset]
TetRefs = Tuple[Ref, Ref, Ref, Ref]

FULL, SLAB, NONE = "full", "slab", "none"
PERIODICITIES = (FULL, SLAB, NONE)
ZERO: Offset = (0, 0, 0)


def shift(ref: Ref, by: Offset) -> Ref:
    i, o = ref
    return (i, (o[0] + by[0], o[1] + by[1], o[2] + by[2]))


def canonical_simplex(refs: Iterable[Ref]) -> Tuple[Ref, ...]:
    """Sorted references translated into their lexicographically least form."""
    refs = list(refs)
    best = None
    for _, o in refs:
        neg = (-o[0], -o[1], -o[2])
        cand = tuple(sorted(shift(r, neg) for r in refs))
        if best is None or cand < best:
            best = cand
    return best  # type: ignore[return-value]


@dataclass(frozen=True)
class TetMesh:
    """Vertex table plus tets; optionally periodic.

    ``periodicity`` is ``"full"`` (three lattice directions), ``"slab"``
    (first two lattice directions; the third lattice vector spans the slab
    height and is never used as an offset) or ``"none"``.
    """

    vertices: Tuple[Point3, ...]
    tets: Tuple[TetRefs, ...]
    lattice: Optional[Tuple[Point3, Point3, Point3]] = None
    periodicity: str = NONE
    labels: Optional[Tuple[str, ...]] = None
    name: str = ""
    meta: Tuple[Tuple[str, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.periodicity not in PERIODICITIES:
            raise ValueError(f"unknown periodicity {self.periodicity!r}")
        if self.periodicity != NONE and self.lattice is None:
            raise ValueError("periodic mesh needs a lattice")
        if self.labels is not None and len(self.labels) != len(self.tets):
            raise ValueError("one label per tet")

    def __len__(self) -> int:
        return len(self.tets)

    @cached_property
    def grid_vertices(self) -> Tuple[IntPoint, ...]:
        return tuple(v.grid() for v in self.vertices)

    @cached_property
    def grid_lattice(self) -> Tuple[IntPoint, IntPoint, IntPoint]:
        if self.lattice is None:
            return ((0, 0, 0), (0, 0, 0), (0, 0, 0))
        return tuple(v.grid() for v in self.lattice)  # type: ignore[return-value]

    @property
    def periodic_dims(self) -> int:
        return {FULL: 3, SLAB: 2, NONE: 0}[self.periodicity]

    def ref_grid(self, ref: Ref) -> IntPoint:
        i, o = ref
        v = self.grid_vertices[i]
        if o == ZERO:
            return v
        a, b, c = self.grid_lattice
        return (v[0] + o[0] * a[0] + o[1] * b[0] + o[2] * c[0],
                v[1] + o[0] * a[1] + o[1] * b[1] + o[2] * c[1],
                v[2] + o[0] * a[2] + o[1] * b[2] + o[2] * c[2])

    def tet_grid(self, k: int) -> Tuple[IntPoint, ...]:
        return tuple(self.ref_grid(r) for r in self.tets[k])

    def tetrahedron(self, k: int) -> Tetrahedron:
        from .predicates import from_grid
        return Tetrahedron(*(Point3(*from_grid(g)) for g in self.tet_grid(k)))

    def tetrahedra(self) -> List[Tetrahedron]:
        return [self.tetrahedron(k) for k in range(len(self.tets))]

    def cell_volume6(self) -> int:
        """Six times the volume of one period cell, in grid units."""
        a, b, c = self.grid_lattice
        return 6 * abs(orient3d_int((0, 0, 0), a, b, c))

    def canonical(self) -> "TetMesh":
        """Same mesh with every tet in canonical, positively oriented form
        and the tet list sorted."""
        rows = []
        for k, refs in enumerate(self.tets):
            c = canonical_simplex(refs)
            g = [self.ref_grid(r) for r in c]
            o = orient3d_int(*g)
            if o < 0:
                c = (c[0], c[1], c[3], c[2])
            lab = self.labels[k] if self.labels is not None else None
            rows.append((tuple(sorted(c)), c, lab))
        rows.sort(key=lambda r: r[0])
        labels = tuple(r[2] for r in rows) if self.labels is not None else None
        return replace(self, tets=tuple(r[1] for r in rows), labels=labels)

    def scaled(self, s: float) -> "TetMesh":
        lat = None
        if self.lattice is not None:
            lat = tuple(as_point(v.scaled(s)) for v in self.lattice)
        return replace(self, vertices=tuple(as_point(v.scaled(s)) for v in self.vertices),
                       lattice=lat)

    def used_refs(self) -> List[Ref]:
        """Distinct vertex references used by the tets (the cell census)."""
        seen: Dict[Ref, None] = {}
        for t in self.tets:
            for r in t:
                seen.setdefault(r, None)
        return sorted(seen)


def lattice_coords_exact(p: IntPoint, lattice: Sequence[IntPoint]):
    """Lattice coordinates of a grid point as ``(numerators, denominator)``."""
    a, b, c = lattice
    from .predicates import cross_int, dot_int
    bc, ca, ab = cross_int(b, c), cross_int(c, a), cross_int(a, b)
    det = dot_int(a, bc)
    if det == 0:
        raise ValueError("lattice basis is singular")
    nums = (dot_int(p, bc), dot_int(p, ca), dot_int(p, ab))
    if det < 0:
        nums = tuple(-n for n in nums)
        det = -det
    return nums, det
