"""Incremental 3D Delaunay triangulation with exact, perturbed predicates.

Bowyer-Watson insertion over a triangulation that carries "ghost" tets
joining every convex hull facet to a vertex at infinity.  Cospherical
configurations (ubiquitous in lattices) are broken by symbolic
perturbation of the lifted coordinate, ordered by a per-point key, so the
output is deterministic and translation-consistent for periodic input.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .geom import DegenerateError, Point3, as_point
from .mesh import FULL, NONE, SLAB, TetMesh, canonical_simplex, lattice_coords_exact
from .predicates import (
    IntPoint,
    circumcenter_int,
    cross_int,
    dot_int,
    from_grid,
    insphere_sos,
    orient3d_int,
)

INF = -1
_MAX_WALK = 10_000


class Triangulation:
    """Mutable Bowyer-Watson state.  Use :func:`triangulate` instead."""

    def __init__(self, pts: Sequence[IntPoint], keys: Sequence):
        self.pts = list(pts)
        self.keys = list(keys)
        self.verts: List[List[int]] = []
        self.nbrs: List[List[int]] = []
        self.alive: List[bool] = []
        self.last = 0

    # -- predicates --------------------------------------------------------

    def _orient_with(self, t: int, slot: int, p: int) -> int:
        v = list(self.verts[t])
        v[slot] = p
        return orient3d_int(*(self.pts[i] for i in v))

    def _sphere(self, vs: Sequence[int], p: int) -> int:
        ids = list(vs) + [p]
        return insphere_sos([self.pts[i] for i in ids], [self.keys[i] for i in ids])

    def in_conflict(self, t: int, p: int) -> bool:
        vs = self.verts[t]
        if INF not in vs:
            return self._sphere(vs, p) > 0
        slot = vs.index(INF)
        o = self._orient_with(t, slot, p)
        if o != 0:
            return o > 0
        # p lies in the hull facet's plane: same answer as the finite tet behind it
        return self._sphere(self.verts[self.nbrs[t][slot]], p) > 0

    # -- construction ------------------------------------------------------

    def _new(self, vs: List[int]) -> int:
        self.verts.append(vs)
        self.nbrs.append([-1, -1, -1, -1])
        self.alive.append(True)
        return len(self.verts) - 1

    def start(self, a: int, b: int, c: int, d: int):
        if orient3d_int(self.pts[a], self.pts[b], self.pts[c], self.pts[d]) < 0:
            c, d = d, c
        t0 = self._new([a, b, c, d])
        for i in range(4):
            g = [a, b, c, d]
            g[i] = INF
            # swap two finite vertices so the ghost faces outward
            j, k = [m for m in range(4) if m != i][:2]
            g[j], g[k] = g[k], g[j]
            gi = self._new(g)
            self.nbrs[t0][i] = gi
            self.nbrs[gi][i] = t0
        ghosts = [self.nbrs[t0][i] for i in range(4)]
        self._link_among(ghosts)
        self.last = t0

    def _link_among(self, tets: Sequence[int]):
        faces: Dict[frozenset, Tuple[int, int]] = {}
        for t in tets:
            for s in range(4):
                if self.nbrs[t][s] != -1:
                    continue
                key = frozenset(v for k, v in enumerate(self.verts[t]) if k != s)
                if key in faces:
                    u, us = faces.pop(key)
                    self.nbrs[t][s] = u
                    self.nbrs[u][us] = t
                else:
                    faces[key] = (t, s)
        if faces:
            raise RuntimeError("triangulation: unmatched facets after insertion")

    def locate(self, p: int) -> int:
        """A tet in conflict with ``p`` found by a visibility walk."""
        t = self.last
        if not self.alive[t] or INF in self.verts[t]:
            t = next(k for k, a in enumerate(self.alive)
                     if a and INF not in self.verts[k])
        for _ in range(_MAX_WALK):
            vs = self.verts[t]
            if INF in vs:
                return t
            for s in range(4):
                if self._orient_with(t, s, p) < 0:
                    t = self.nbrs[t][s]
                    break
            else:
                return t
        for k, a in enumerate(self.alive):  # pragma: no cover - walk safety net
            if a and self.in_conflict(k, p):
                return k
        raise RuntimeError("point location failed")

    def insert(self, p: int):
        start = self.locate(p)
        if not self.in_conflict(start, p):
            raise RuntimeError("located tet is not in conflict")
        cavity = {start}
        stack = [start]
        boundary: List[Tuple[int, int]] = []
        while stack:
            t = stack.pop()
            for s in range(4):
                n = self.nbrs[t][s]
                if n in cavity:
                    continue
                if self.in_conflict(n, p):
                    cavity.add(n)
                    stack.append(n)
                else:
                    boundary.append((t, s))
        created = []
        for t, s in boundary:
            vs = list(self.verts[t])
            vs[s] = p
            if INF not in vs and orient3d_int(*(self.pts[i] for i in vs)) <= 0:
                raise RuntimeError("cavity is not star-shaped from the new point")
            nt = self._new(vs)
            out = self.nbrs[t][s]
            self.nbrs[nt][s] = out
            self.nbrs[out][self.nbrs[out].index(t)] = nt
            created.append(nt)
        for t in cavity:
            self.alive[t] = False
        self._link_among(created)
        for t in created:
            if INF not in self.verts[t]:
                self.last = t
                break

    def finite_tets(self) -> List[Tuple[int, int, int, int]]:
        return [tuple(vs) for vs, a in zip(self.verts, self.alive)
                if a and INF not in vs]


def _first_simplex(pts: Sequence[IntPoint]) -> Tuple[int, int, int, int]:
    a = 0
    b = next((i for i in range(1, len(pts)) if pts[i] != pts[a]), None)
    if b is None:
        raise DegenerateError("need at least two distinct points")
    ab = tuple(pts[b][k] - pts[a][k] for k in range(3))
    c = None
    for i in range(len(pts)):
        ac = tuple(pts[i][k] - pts[a][k] for k in range(3))
        if cross_int(ab, ac) != (0, 0, 0):
            c = i
            break
    if c is None:
        raise DegenerateError("all points are collinear")
    d = next((i for i in range(len(pts))
              if orient3d_int(pts[a], pts[b], pts[c], pts[i]) != 0), None)
    if d is None:
        raise DegenerateError("all points are coplanar")
    return a, b, c, d


def triangulate(pts: Sequence[IntPoint], keys: Optional[Sequence] = None):
    """Delaunay tets (as index quadruples, positively oriented) of distinct
    grid points, inserted in the given order."""
    if len(pts) < 4:
        raise DegenerateError("need at least four points")
    if keys is None:
        keys = list(range(len(pts)))
    tri = Triangulation(pts, keys)
    first = _first_simplex(pts)
    tri.start(*first)
    skip = set(first)
    for i in range(len(pts)):
        if i not in skip:
            tri.insert(i)
    return tri.finite_tets()


# -- public API ----------------------------------------------------------------

def delaunay(points: Sequence[Sequence[float]]) -> TetMesh:
    """Delaunay tetrahedralization of a finite point set.

    Points are snapped to the grid; exact duplicates are dropped with a
    warning.  Ties between cospherical points are broken by input order.
    """
    snapped = [as_point(p) for p in points]
    seen: Dict[IntPoint, int] = {}
    uniq: List[Point3] = []
    for p in snapped:
        g = p.grid()
        if g in seen:
            continue
        seen[g] = len(uniq)
        uniq.append(p)
    if len(uniq) < len(snapped):
        warnings.warn(f"dropped {len(snapped) - len(uniq)} duplicate point(s)")
    tets = triangulate([p.grid() for p in uniq])
    zero = (0, 0, 0)
    mesh = TetMesh(vertices=tuple(uniq),
                   tets=tuple(tuple((i, zero) for i in t) for t in tets),
                   periodicity=NONE)
    return mesh.canonical()


@dataclass(frozen=True)
class PeriodicPointSet:
    """Motif points repeated by a lattice (three directions, or two for a slab)."""

    lattice: Tuple[Point3, Point3, Point3]
    motif: Tuple[Point3, ...]
    periodicity: str = FULL
    name: str = ""
    tags: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        lat = tuple(as_point(v) for v in self.lattice)
        motif = tuple(as_point(p) for p in self.motif)
        object.__setattr__(self, "lattice", lat)
        object.__setattr__(self, "motif", motif)
        if self.periodicity not in (FULL, SLAB):
            raise ValueError("periodicity must be 'full' or 'slab'")
        glat = [v.grid() for v in lat]
        if orient3d_int((0, 0, 0), *glat) == 0:
            raise ValueError("lattice basis has zero determinant")
        if not motif:
            raise ValueError("motif is empty")
        seen = set()
        for p in motif:
            nums, den = lattice_coords_exact(p.grid(), glat)
            dims = 3 if self.periodicity == FULL else 2
            for k in range(dims):
                if not 0 <= nums[k] < den:
                    raise ValueError(f"motif point {p} is outside the fundamental cell")
            if p.grid() in seen:
                raise ValueError(f"duplicate motif point {p}")
            seen.add(p.grid())

    @classmethod
    def wrapped(cls, lattice, points, periodicity: str = FULL, name: str = "",
                tol: float = 1e-7) -> "PeriodicPointSet":
        """Reduce arbitrary points into the fundamental cell, merging points
        that coincide modulo the lattice within ``tol`` (in lattice units)."""
        import numpy as np
        lat = np.array([as_point(v) for v in lattice], dtype=float)
        inv = np.linalg.inv(lat.T)
        dims = 3 if periodicity == FULL else 2
        cells: List[np.ndarray] = []
        for p in points:
            u = inv @ np.asarray(p, dtype=float)
            for k in range(dims):
                u[k] -= np.floor(u[k] + tol)
                if u[k] < 0:
                    u[k] = 0.0
            if any(_close_mod(u, w, dims, tol) for w in cells):
                continue
            cells.append(u)
        glat = [as_point(v).grid() for v in lattice]
        motif = []
        for u in cells:
            q = as_point(lat.T @ u)
            # exact clean-up of grid rounding at the cell walls
            nums, den = lattice_coords_exact(q.grid(), glat)
            shift = [0, 0, 0]
            for k in range(dims):
                shift[k] = -(nums[k] // den)
            if any(shift):
                g = q.grid()
                g = tuple(g[i] + sum(shift[k] * glat[k][i] for k in range(3)) for i in range(3))
                q = Point3(*from_grid(g))
            motif.append(q)
        return cls(lattice=tuple(as_point(v) for v in lattice), motif=tuple(motif),
                   periodicity=periodicity, name=name)

    def supercell(self, periods: Sequence[int]) -> "PeriodicPointSet":
        nx, ny, nz = periods
        if self.periodicity == SLAB:
            nz = 1
        if min(nx, ny, nz) < 1:
            raise ValueError("periods must be >= 1")
        if (nx, ny, nz) == (1, 1, 1):
            return self
        a, b, c = self.lattice
        pts = []
        for i in range(nx):
            for j in range(ny):
                for k in range(nz):
                    for p in self.motif:
                        pts.append(Point3(p.x + i * a.x + j * b.x + k * c.x,
                                          p.y + i * a.y + j * b.y + k * c.y,
                                          p.z + i * a.z + j * b.z + k * c.z))
        lat = (a.scaled(nx), b.scaled(ny), c.scaled(nz))
        return PeriodicPointSet(lattice=lat, motif=tuple(pts),
                                periodicity=self.periodicity, name=self.name)


def _close_mod(u, w, dims, tol) -> bool:
    d = u - w
    for k in range(3):
        if k < dims:
            d[k] -= round(d[k])
        if abs(d[k]) > tol:
            return False
    return True


class WindowTooSmall(RuntimeError):
    """The replicated window cannot certify the center cell's tets."""


def periodic_delaunay(pps: PeriodicPointSet) -> TetMesh:
    """Delaunay triangulation of a periodic point set, one period cell's worth.

    The motif is replicated over a 3x3x3 block of cells (3x3x1 for a slab),
    triangulated, and the tets whose circumcenter falls in the central
    half-open cell are kept.  Ties are broken by ``(motif index, offset)``.
    """
    glat = [v.grid() for v in pps.lattice]
    gmot = [p.grid() for p in pps.motif]
    slab = pps.periodicity == SLAB
    zr = (0,) if slab else (-1, 0, 1)
    pts, keys = [], []
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            for k in zr:
                for m, g in enumerate(gmot):
                    pts.append(tuple(g[d] + i * glat[0][d] + j * glat[1][d] + k * glat[2][d]
                                     for d in range(3)))
                    keys.append((m, (i, j, k)))
    # insert the central cell first so the walk starts where it matters
    order = sorted(range(len(pts)), key=lambda n: (tuple(abs(x) for x in keys[n][1]), keys[n]))
    pts = [pts[n] for n in order]
    keys = [keys[n] for n in order]
    raw = triangulate(pts, keys)

    widths = _cell_widths(glat)
    dims = 2 if slab else 3
    tets = []
    for t in raw:
        g = [pts[n] for n in t]
        cx, cy, cz, den = circumcenter_int(*g)
        nums, ldet = lattice_coords_exact((cx, cy, cz), glat)
        # circumcenter lattice coordinate = nums / (den * ldet)
        if any(not 0 <= nums[k] < den * ldet for k in range(dims)):
            continue
        r2 = sum((c - den * a) ** 2 for c, a in zip((cx, cy, cz), g[0])) / den / den
        if any(r2 >= (w * (1 - 1e-9)) ** 2 for w in widths[:dims]):
            raise WindowTooSmall(
                "circumradius exceeds a lattice width; replicate the motif "
                "over a larger supercell")
        tets.append(tuple(keys[n] for n in t))
    mesh = TetMesh(vertices=pps.motif, tets=tuple(tets), lattice=pps.lattice,
                   periodicity=pps.periodicity, name=pps.name).canonical()
    total = sum(abs(orient3d_int(*mesh.tet_grid(k))) for k in range(len(mesh)))
    if not slab and total != mesh.cell_volume6():
        raise WindowTooSmall("center-cell tets do not cover the cell volume")
    return mesh


def _cell_widths(glat: Sequence[IntPoint]) -> List[float]:
    """Distance between opposite faces of the cell, per lattice direction."""
    a, b, c = glat
    vol = abs(dot_int(a, cross_int(b, c)))
    out = []
    for u, v in ((b, c), (c, a), (a, b)):
        n = cross_int(u, v)
        out.append(vol / dot_int(n, n) ** 0.5)
    return out


# -- bistellar flip --------------------------------------------------------------

def flip_3to2(mesh: TetMesh, edge: Tuple[int, int]) -> TetMesh:
    """Replace the three tets around ``edge`` by two sharing the dual triangle.

    ``edge`` is a pair of vertex indices of a non-periodic mesh.
    """
    if mesh.periodicity != NONE:
        raise ValueError("flip_3to2 works on non-periodic meshes")
    u, v = edge
    around = [k for k, t in enumerate(mesh.tets)
              if {u, v} <= {r[0] for r in t}]
    if len(around) != 3:
        raise ValueError(f"edge {edge} has valence {len(around)}, need 3")
    ring = sorted({r[0] for k in around for r in mesh.tets[k]} - {u, v})
    if len(ring) != 3:
        raise ValueError("tets around the edge do not form a bipyramid")
    g = mesh.grid_vertices
    x, y, z = ring
    side_u = orient3d_int(g[x], g[y], g[z], g[u])
    side_v = orient3d_int(g[x], g[y], g[z], g[v])
    if side_u == 0 or side_v == 0 or (side_u > 0) == (side_v > 0):
        raise ValueError("edge does not cross the plane of the dual triangle")
    crossing = [orient3d_int(g[u], g[v], g[p], g[q]) for p, q in ((x, y), (y, z), (z, x))]
    if not (all(s > 0 for s in crossing) or all(s < 0 for s in crossing)):
        raise ValueError("union of the three tets is not convex")
    zero = (0, 0, 0)
    keep = [t for k, t in enumerate(mesh.tets) if k not in around]
    keep.append(((u, zero), (x, zero), (y, zero), (z, zero)))
    keep.append(((v, zero), (x, zero), (y, zero), (z, zero)))
    labels = None
    if mesh.labels is not None:
        labels = tuple(l for k, l in enumerate(mesh.labels) if k not in around) + ("flip", "flip")
    return TetMesh(vertices=mesh.vertices, tets=tuple(keep), periodicity=NONE,
                   labels=labels, name=mesh.name).canonical()


def mesh_from_tets(points: Sequence[Sequence[float]],
                   tets: Sequence[Tuple[int, int, int, int]], name: str = "") -> TetMesh:
    """Non-periodic mesh from explicit vertex-index quadruples."""
    zero = (0, 0, 0)
    verts = tuple(as_point(p) for p in points)
    return TetMesh(vertices=verts, tets=tuple(tuple((i, zero) for i in t) for t in tets),
                   periodicity=NONE, name=name).canonical()

