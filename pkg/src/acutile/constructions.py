"""Point sets and reference shapes: square/triangle TCP structures, A15 from
BCC, C15 from the diamond lattice, the icosahedral Z, and the classical
space-filling tetrahedra."""

from __future__ import annotations

import itertools
import math
from collections import deque
from fractions import Fraction
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .delaunay import PeriodicPointSet, periodic_delaunay
from .geom import Point3, Tetrahedron, as_point
from .mesh import FULL, TetMesh, canonical_simplex, lattice_coords_exact
from .predicates import SCALE, circumcenter_int, from_grid

SIDE = 4.0
BLACK, WHITE = "black", "white"
_TOL = 1e-7


# -- square/triangle tilings ---------------------------------------------------

@dataclass(frozen=True)
class Face:
    kind: str  # "square" or "triangle"
    corners: Tuple[Tuple[float, float], ...]

    @property
    def center(self) -> Tuple[float, float]:
        n = len(self.corners)
        return (sum(c[0] for c in self.corners) / n, sum(c[1] for c in self.corners) / n)

    def area(self) -> float:
        c = self.corners
        s = 0.0
        for i in range(len(c)):
            x0, y0 = c[i]
            x1, y1 = c[(i + 1) % len(c)]
            s += x0 * y1 - x1 * y0
        return abs(s) / 2


@dataclass(frozen=True)
class SquareTriangleTiling:
    """One period of an edge-to-edge tiling by squares and equilateral
    triangles of side 4, with its colored dots."""

    periods: Tuple[Tuple[float, float], Tuple[float, float]]
    faces: Tuple[Face, ...]
    dots: Tuple[Tuple[Tuple[float, float], str], ...]
    vertices: Tuple[Tuple[float, float], ...]
    name: str = ""

    def cell_area(self) -> float:
        (a, b), (c, d) = self.periods
        return abs(a * d - b * c)

    def validate(self):
        """Raise ValueError unless faces exactly cover the period cell."""
        tot = sum(f.area() for f in self.faces)
        if abs(tot - self.cell_area()) > 1e-6 * self.cell_area():
            raise ValueError(f"faces cover area {tot}, period cell has {self.cell_area()}")
        for f in self.faces:
            k = len(f.corners)
            for i in range(k):
                p, q = f.corners[i], f.corners[(i + 1) % k]
                if abs(math.dist(p, q) - SIDE) > 1e-6:
                    raise ValueError("tiling edge is not of length 4")
        # one dot per edge, one per triangle, four per square
        nt = sum(1 for f in self.faces if f.kind == "triangle")
        ns = len(self.faces) - nt
        want = (3 * nt + 4 * ns) // 2 + nt + 4 * ns
        if len(self.dots) != want:
            raise ValueError(f"{len(self.dots)} dots, expected {want}")
        for p, c in self.dots:
            if c not in (BLACK, WHITE):
                raise ValueError(f"bad dot color {c!r}")


def _wrap2(p, inv, periods):
    u = inv @ np.asarray(p, dtype=float)
    off = np.floor(u + _TOL)
    u = u - off
    q = u[0] * np.asarray(periods[0]) + u[1] * np.asarray(periods[1])
    return tuple(q), (int(off[0]), int(off[1]))


def _tiling_from_vertices(periods, motif, name="") -> Tuple[list, list, list]:
    """Faces and edges of the tiling whose vertices are ``motif`` mod lattice.

    Edges join vertices at distance 4; triangles are 3-cliques and squares
    are 4-cycles with diagonals 4*sqrt(2).  Everything is returned as lists
    of (vertex index, 2D offset) references.
    """
    P = np.array(periods, dtype=float)
    imgs = []
    for i, v in enumerate(motif):
        for a in (-2, -1, 0, 1, 2):
            for b in (-2, -1, 0, 1, 2):
                imgs.append(((i, (a, b)), np.asarray(v) + a * P[0] + b * P[1]))
    pos = {r: x for r, x in imgs}
    adj: Dict[tuple, set] = {r: set() for r, _ in imgs}
    for (r, x), (s, y) in itertools.combinations(imgs, 2):
        if abs(np.linalg.norm(x - y) - SIDE) < 1e-6:
            adj[r].add(s)
            adj[s].add(r)
    home = [(i, (0, 0)) for i in range(len(motif))]

    def canon(refs):
        best = None
        for _, (a, b) in refs:
            c = tuple(sorted((j, (o[0] - a, o[1] - b)) for j, o in refs))
            if best is None or c < best:
                best = c
        return best

    edges, tris, squares = {}, {}, {}
    diag = SIDE * math.sqrt(2)
    for r in home:
        for s in adj[r]:
            edges.setdefault(canon((r, s)), (r, s))
            for t in adj[r] & adj[s]:
                tris.setdefault(canon((r, s, t)), (r, s, t))
            for t in adj[s]:
                if t == r:
                    continue
                for u in adj[t] & adj[r]:
                    if u in (s, t):
                        continue
                    if abs(np.linalg.norm(pos[r] - pos[t]) - diag) < 1e-6 and \
                            abs(np.linalg.norm(pos[s] - pos[u]) - diag) < 1e-6:
                        squares.setdefault(canon((r, s, t, u)), (r, s, t, u))
    return list(edges.values()), list(tris.values()), list(squares.values()), pos


def _color_edges(edges, tris, squares) -> Dict[tuple, int]:
    """2-color tiling edges: a triangle's edges share a color, a square's
    opposite edges share a color and its adjacent edges differ."""

    def canon(pair):
        best = None
        for _, (a, b) in pair:
            c = tuple(sorted((j, (o[0] - a, o[1] - b)) for j, o in pair))
            if best is None or c < best:
                best = c
        return best

    nbr: Dict[tuple, List[Tuple[tuple, int]]] = {canon(e): [] for e in edges}

    def link(e, f, parity):
        e, f = canon(e), canon(f)
        nbr[e].append((f, parity))
        nbr[f].append((e, parity))

    for a, b, c in tris:
        link((a, b), (b, c), 0)
        link((b, c), (c, a), 0)
    for a, b, c, d in squares:
        link((a, b), (c, d), 0)
        link((b, c), (d, a), 0)
        link((a, b), (b, c), 1)
    color: Dict[tuple, int] = {}
    for start in sorted(nbr):
        if start in color:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            e = queue.popleft()
            for f, par in nbr[e]:
                want = color[e] ^ par
                if f not in color:
                    color[f] = want
                    queue.append(f)
                elif color[f] != want:
                    raise ValueError("tiling admits no consistent dot coloring")
    return color, canon


def _dots(periods, edges, tris, squares, pos, color, canon):
    """Dot positions (wrapped into the cell) with raw color bits."""
    P = np.array(periods, dtype=float)
    inv = np.linalg.inv(P.T)
    out = []
    for e in edges:
        m = (pos[e[0]] + pos[e[1]]) / 2
        out.append((m, color[canon(e)]))
    for t in tris:
        c = (pos[t[0]] + pos[t[1]] + pos[t[2]]) / 3
        out.append((c, 1 - color[canon((t[0], t[1]))]))
    for sq in squares:
        ctr = sum(pos[r] for r in sq) / 4
        for k in range(4):
            a, b = sq[k], sq[(k + 1) % 4]
            m = (pos[a] + pos[b]) / 2
            d = ctr - m
            out.append((m + d / np.linalg.norm(d), 1 - color[canon((a, b))]))
    wrapped = []
    for p, c in out:
        q, _ = _wrap2(p, inv, periods)
        wrapped.append((q, c))
    return wrapped


def _faces(tris, squares, pos, periods) -> Tuple[Face, ...]:
    P = np.array(periods, dtype=float)
    inv = np.linalg.inv(P.T)
    faces = []
    for kind, group in (("triangle", tris), ("square", squares)):
        for refs in group:
            pts = [pos[r] for r in refs]
            ctr = sum(pts) / len(pts)
            _, off = _wrap2(ctr, inv, periods)
            sh = off[0] * P[0] + off[1] * P[1]
            faces.append(Face(kind, tuple(tuple(map(float, p - sh)) for p in pts)))
    return tuple(faces)


def tiling_from_vertices(periods, vertices, name: str = "",
                         colors: Optional[Sequence[str]] = None) -> SquareTriangleTiling:
    """Build a square/triangle tiling from its vertex motif.

    Dot colors follow the edge-coloring rule unless ``colors`` is given
    (one per dot in the canonical dot order).  The rule is unique up to a
    global swap, which is fixed by making the first dot white.
    """
    periods = tuple(tuple(map(float, p)) for p in periods)
    edges, tris, squares, pos = _tiling_from_vertices(periods, vertices, name)
    if not edges:
        raise ValueError("no vertex pairs at distance 4; not a side-4 tiling")
    color, canon = _color_edges(edges, tris, squares)
    raw = _dots(periods, edges, tris, squares, pos, color, canon)
    raw.sort(key=lambda d: (round(d[0][0], 6), round(d[0][1], 6)))
    flip = raw[0][1]
    dots = [(p, WHITE if (c ^ flip) == 0 else BLACK) for p, c in raw]
    if colors is not None:
        if len(colors) != len(dots):
            raise ValueError(f"expected {len(dots)} colors, got {len(colors)}")
        dots = [(p, c) for (p, _), c in zip(dots, colors)]
    verts = tuple(tuple(map(float, v)) for v in vertices)
    t = SquareTriangleTiling(periods=periods, faces=_faces(tris, squares, pos, periods),
                             dots=tuple((tuple(map(float, p)), c) for p, c in dots),
                             vertices=verts, name=name)
    t.validate()
    return t


def _snub_square_vertices():
    # squares centered at (0,0) and (L/2,L/2), turned by +15 and -15 degrees
    r = SIDE / math.sqrt(2)
    return [(r * math.cos(math.radians(60 + 90 * k)), r * math.sin(math.radians(60 + 90 * k)))
            for k in range(4)]


SNUB_PERIOD = SIDE * math.sqrt(2 + math.sqrt(3))
_TILINGS = {
    "Z": (((SIDE, 0.0), (SIDE / 2, SIDE * math.sqrt(3) / 2)), [(0.0, 0.0)]),
    "A15": (((SIDE, 0.0), (0.0, SIDE)), [(0.0, 0.0)]),
    "sigma": (((SNUB_PERIOD, 0.0), (0.0, SNUB_PERIOD)), None),
    "H": (((SIDE, 0.0), (SIDE / 2, SIDE + SIDE * math.sqrt(3) / 2)), [(0.0, 0.0), (0.0, SIDE)]),
}
TILING_NAMES = tuple(_TILINGS)


def builtin_tiling(name: str) -> SquareTriangleTiling:
    """One of the four built-in tilings: ``Z``, ``A15``, ``sigma`` or ``H``."""
    if name not in _TILINGS:
        raise ValueError(f"unknown tiling {name!r}; choose from {', '.join(TILING_NAMES)}")
    periods, verts = _TILINGS[name]
    if verts is None:
        P = np.array(periods)
        inv = np.linalg.inv(P.T)
        verts = [_wrap2(v, inv, periods)[0] for v in _snub_square_vertices()]
    return tiling_from_vertices(periods, verts, name=name)


def tcp_point_set(t: SquareTriangleTiling) -> PeriodicPointSet:
    """Stack the tiling into a 3D point set with vertical period 4.

    Each tiling vertex gives points at heights 0 and 2.  A dot gives one
    point, at height 1 if white or 3 if black.
    """
    t.validate()
    pts = []
    for v in t.vertices:
        pts.append((v[0], v[1], 0.0))
        pts.append((v[0], v[1], 2.0))
    for p, c in t.dots:
        pts.append((p[0], p[1], 1.0 if c == WHITE else 3.0))
    (a, b), (c, d) = t.periods
    lattice = ((a, b, 0.0), (c, d, 0.0), (0.0, 0.0, SIDE))
    return PeriodicPointSet.wrapped(lattice, pts, name=t.name)


def search_coloring(t: SquareTriangleTiling, max_dots: int = 12):
    """First dot coloring, in lexicographic order (white before black),
    whose TCP structure passes ``tcp_check`` and is all-acute.

    Returns the list of colors, or None.  Exponential in the dot count.
    """
    from .validate import check_acute_all, tcp_check
    n = len(t.dots)
    if n > max_dots:
        raise ValueError(f"{n} dots exceeds the search limit of {max_dots}")
    for bits in itertools.product((WHITE, BLACK), repeat=n):
        cand = SquareTriangleTiling(t.periods, t.faces,
                                    tuple((p, c) for (p, _), c in zip(t.dots, bits)),
                                    t.vertices, t.name)
        try:
            mesh = periodic_delaunay(tcp_point_set(cand))
        except Exception:
            continue
        if check_acute_all(mesh).passed and tcp_check(mesh)[0].passed:
            return list(bits)
    return None


# -- lattice-derived TCP structures -------------------------------------------

def bcc_point_set(side: float = 2.0) -> PeriodicPointSet:
    s = float(side)
    return PeriodicPointSet(lattice=((s, 0, 0), (0, s, 0), (0, 0, s)),
                            motif=((0, 0, 0), (s / 2, s / 2, s / 2)), name="bcc")


def _facet_adjacency(mesh: TetMesh):
    by_facet: Dict[tuple, List[int]] = {}
    for k, refs in enumerate(mesh.tets):
        for i in range(4):
            key = canonical_simplex([refs[j] for j in range(4) if j != i])
            by_facet.setdefault(key, []).append(k)
    adj: Dict[int, List[int]] = {k: [] for k in range(len(mesh.tets))}
    for ks in by_facet.values():
        if len(ks) == 2:
            adj[ks[0]].append(ks[1])
            adj[ks[1]].append(ks[0])
    return adj


def two_color_tets(mesh: TetMesh) -> List[int]:
    """Alternating 0/1 coloring of the tets across shared facets (tet 0 gets 0)."""
    adj = _facet_adjacency(mesh)
    color = {0: 0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for n in adj[k]:
            if n not in color:
                color[n] = 1 - color[k]
                queue.append(n)
            elif color[n] == color[k]:
                raise ValueError("dual graph is not bipartite on this cell")
    return [color[k] for k in range(len(mesh.tets))]


def _circumcenter(mesh: TetMesh, k: int) -> Tuple[float, float, float]:
    cx, cy, cz, den = circumcenter_int(*mesh.tet_grid(k))
    return (cx / den / SCALE, cy / den / SCALE, cz / den / SCALE)


def _periodic(pps: PeriodicPointSet, periods) -> PeriodicPointSet:
    if periods is None:
        return pps
    periods = tuple(int(p) for p in periods)
    if len(periods) != 3 or min(periods) < 1:
        raise ValueError("periods must be three integers >= 1")
    return pps.supercell(periods)


def a15_from_bcc(periods=None, side: float = 4.0) -> PeriodicPointSet:
    """BCC lattice plus the circumcenters of the color-0 Delaunay tets."""
    bcc = bcc_point_set(side)
    mesh = periodic_delaunay(bcc)
    colors = two_color_tets(mesh)
    centers = [_circumcenter(mesh, k) for k, c in enumerate(colors) if c == 0]
    pps = PeriodicPointSet.wrapped(bcc.lattice, list(bcc.motif) + centers, name="a15-bcc")
    return _periodic(pps, periods)


DIAMOND_CELL = 8.0


def diamond_point_set(cell: float = DIAMOND_CELL) -> PeriodicPointSet:
    h = cell / 2
    fcc = [(0, 0, 0), (0, h, h), (h, 0, h), (h, h, 0)]
    q = cell / 4
    pts = fcc + [(x + q, y + q, z + q) for x, y, z in fcc]
    return PeriodicPointSet(lattice=((cell, 0, 0), (0, cell, 0), (0, 0, cell)),
                            motif=tuple(pts), name="diamond")


def c15_added_centers(cell: float = DIAMOND_CELL) -> List[Tuple[float, float, float]]:
    """Centers of the diamond lattice's six-point Delaunay cells.

    Every Delaunay cell of the diamond lattice is either a regular
    tetrahedron or a cell with six cospherical vertices; the symbolic
    perturbation splits the latter into several tets sharing one
    circumcenter.  Those shared centers are the added C15 points.
    """
    d = diamond_point_set(cell)
    mesh = periodic_delaunay(d)
    glat = mesh.grid_lattice
    groups: Dict[tuple, set] = {}
    for k in range(len(mesh.tets)):
        g = mesh.tet_grid(k)
        cx, cy, cz, den = circumcenter_int(*g)
        nums, ldet = lattice_coords_exact((cx, cy, cz), glat)
        off = [n // (den * ldet) for n in nums]
        c = [Fraction(v, den) - sum(off[j] * glat[j][i] for j in range(3))
             for i, v in enumerate((cx, cy, cz))]
        rel = {tuple(Fraction(p[i]) - Fraction(cx if i == 0 else cy if i == 1 else cz, den)
                     for i in range(3)) for p in g}
        groups.setdefault(tuple(c), set()).update(rel)
    out = []
    for key, verts in sorted(groups.items()):
        if len(verts) == 6:
            out.append(tuple(float(x) / SCALE for x in key))
    return out


#: the sixteen added points per cubic cell (cell edge 8), as derived by
#: :func:`c15_added_centers`
C15_FIXTURE = tuple(sorted(
    ((x + a) % 8, (y + b) % 8, (z + c) % 8)
    for a, b, c in ((0, 0, 0), (0, 4, 4), (4, 0, 4), (4, 4, 0))
    for x, y, z in ((5, 5, 5), (5, 7, 7), (7, 5, 7), (7, 7, 5))))


def c15_point_set(periods=None) -> PeriodicPointSet:
    """Diamond lattice (cell 8) plus the centers of its six-point holes."""
    d = diamond_point_set()
    pps = PeriodicPointSet.wrapped(d.lattice, list(d.motif) + list(C15_FIXTURE), name="c15")
    return _periodic(pps, periods)


PHI = (1 + math.sqrt(5)) / 2


def icosahedron_vertices() -> np.ndarray:
    """Unit-edge icosahedron centered at the origin with two horizontal faces."""
    raw = []
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            raw += [(0, s1, s2 * PHI), (s1, s2 * PHI, 0), (s2 * PHI, 0, s1)]
    v = np.array(raw, dtype=float) / 2
    # rotate the face normal (1,1,1) onto +z, and the vertex (0,1,phi)/2 into the xz-plane
    z = np.array([1.0, 1.0, 1.0]) / math.sqrt(3)
    h = v @ z
    top = v[np.isclose(h, h.max())]
    x = top[0] - (top[0] @ z) * z
    x /= np.linalg.norm(x)
    y = np.cross(z, x)
    return v @ np.array([x, y, z]).T


def icosahedral_z_point_set(periods=None) -> PeriodicPointSet:
    """Centers and vertices of icosahedra packed edge to edge in hexagonal
    layers, consecutive layers mirrored through their shared horizontal face."""
    v = icosahedron_vertices()
    r_in = v[:, 2].max()
    # in-plane translations: twice the midpoints of the equatorial edges
    eq = [(i, j) for i, j in itertools.combinations(range(12), 2)
          if abs(np.linalg.norm(v[i] - v[j]) - 1) < 1e-9 and v[i, 2] * v[j, 2] < 0
          and abs(v[i, 2]) < r_in - 1e-9 and abs(v[j, 2]) < r_in - 1e-9]
    mids = [v[i] + v[j] for i, j in eq]
    t1 = min(mids, key=lambda m: (math.atan2(m[1], m[0]) % (2 * math.pi)))
    ang = math.atan2(t1[1], t1[0])

    def turn(m):
        return (math.atan2(m[1], m[0]) - ang) % (2 * math.pi)
    t2 = next(m for m in mids if abs(turn(m) - math.pi / 3) < 1e-6)
    pts = [np.zeros(3)] + list(v)
    upper = [np.array([p[0], p[1], 2 * r_in - p[2]]) for p in pts]
    lattice = (tuple(t1), tuple(t2), (0.0, 0.0, 4 * r_in))
    pps = PeriodicPointSet.wrapped(lattice, [tuple(p) for p in pts + upper], name="z-icosahedral")
    return _periodic(pps, periods)


# -- reference tetrahedra --------------------------------------------------------

_SOMMERVILLE = {
    "sommerville-i": ((0, 0, 0), (0, 0, 2), (0, 1, 1), (1, 1, 1)),
    "sommerville-ii": ((0, 0, 0), (2, 0, 0), (1, 1, 1), (1, -1, 1)),
    "sommerville-iii": ((0, 0, 0), (0, 0, 2), (0, 2, 0), (1, 1, 1)),
    "sommerville-iv": ((0, 0, 0), (0, 0, 2), (0, 0.5, 1), (1, 1, 1)),
    "regular": ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)),
    "cube-corner": ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "cube5-center": ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)),
    "cube5-corner": ((1, 0, 0), (0, 0, 0), (1, 1, 0), (1, 0, 1)),
    "cube6": ((0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)),
}
REFERENCE_NAMES = tuple(_SOMMERVILLE) + ("goldberg",)


def normalized(vertices) -> Tuple[Point3, ...]:
    """Scale so that the shortest edge has length 1."""
    v = np.array(vertices, dtype=float)
    d = min(np.linalg.norm(v[i] - v[j]) for i, j in itertools.combinations(range(len(v)), 2))
    return tuple(as_point(p / d) for p in v)


def goldberg_vertices(a: float, e: float) -> Tuple[Point3, ...]:
    """Tet with edges 3a, b, b, b, c, c where b^2 = a^2 + e^2, c^2 = 4a^2 + e^2.

    Three consecutive points of a helix over an equilateral triangle of side
    ``e``, climbing ``a`` per step, plus the point a full turn above the first.
    """
    if a <= 0 or e <= 0:
        raise ValueError("Goldberg parameters must be positive")
    r = e / math.sqrt(3)
    tri = [(r * math.cos(2 * math.pi * k / 3), r * math.sin(2 * math.pi * k / 3)) for k in range(3)]
    return (as_point((*tri[0], 0.0)), as_point((*tri[1], a)), as_point((*tri[2], 2 * a)),
            as_point((*tri[0], 3 * a)))


def reference_tetrahedron(name: str, a: float = 1.0, e: float = 1.0) -> Tetrahedron:
    """A named reference shape with shortest edge 1 (Goldberg: as given)."""
    key = name.lower().replace(" ", "-").replace("_", "-")
    if key in ("goldberg", "goldberg(a,e)"):
        return Tetrahedron(*goldberg_vertices(a, e))
    if key not in _SOMMERVILLE:
        raise ValueError(f"unknown reference tetrahedron {name!r}")
    return Tetrahedron(*normalized(_SOMMERVILLE[key]))


def cube_five() -> List[Tetrahedron]:
    """Unit cube as a regular center tet plus four corner tets."""
    c = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    out = [Tetrahedron(*map(as_point, _SOMMERVILLE["cube5-center"]))]
    for p in c:
        nb = [q for q in ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))
              if sum(abs(x - y) for x, y in zip(p, q)) == 1]
        out.append(Tetrahedron(*map(as_point, [p] + nb)))
    return out


def cube_six() -> List[Tetrahedron]:
    """Unit cube cut into six path tets along the main diagonal."""
    out = []
    for perm in itertools.permutations(range(3)):
        p = [0, 0, 0]
        pts = [tuple(p)]
        for ax in perm:
            p[ax] = 1
            pts.append(tuple(p))
        out.append(Tetrahedron(*map(as_point, pts)))
    return out


# -- catalogue ---------------------------------------------------------------------

STRUCTURES = ("z-triangle", "a15-square", "sigma", "h", "c15", "a15-bcc", "z-icosahedral")
TCP_STRUCTURES = ("z-triangle", "a15-square", "sigma", "h", "c15", "z-icosahedral")
_TILE_OF = {"z-triangle": "Z", "a15-square": "A15", "sigma": "sigma", "h": "H"}


def structure_point_set(name: str, periods=None) -> PeriodicPointSet:
    """Point set of a catalogued structure."""
    if name in _TILE_OF:
        pps = tcp_point_set(builtin_tiling(_TILE_OF[name]))
        return _periodic(PeriodicPointSet(pps.lattice, pps.motif, FULL, name), periods)
    if name == "c15":
        return c15_point_set(periods)
    if name == "a15-bcc":
        return a15_from_bcc(periods)
    if name == "z-icosahedral":
        return icosahedral_z_point_set(periods)
    if name == "bcc":
        return _periodic(bcc_point_set(), periods)
    raise ValueError(f"unknown structure {name!r}")


def build_structure(name: str, periods=None) -> TetMesh:
    """Periodic Delaunay mesh of a catalogued structure."""
    from dataclasses import replace
    mesh = periodic_delaunay(structure_point_set(name, periods))
    return replace(mesh, name=name)


def point_set_from_grid(lattice, motif_grid, name=""):
    """Rebuild a point set from snap-grid integers."""
    return PeriodicPointSet(lattice=tuple(Point3(*from_grid(g)) for g in lattice),
                            motif=tuple(Point3(*from_grid(g)) for g in motif_grid), name=name)


# -- the five-point example ------------------------------------------------------

EPSILON = 0.01


def five_points(eps: float = EPSILON) -> Tuple[Point3, ...]:
    """Points a, b, c, d, e whose Delaunay triangulation is not acute but
    which admit an acute triangulation."""
    if not 0 < eps < 1 / 6:
        raise ValueError("eps must lie in (0, 1/6)")
    t = 2 / 3 + eps
    return tuple(as_point(p) for p in
                 ((-eps, -eps, -eps), (1, 0, 0), (0, 1, 0), (0, 0, 1), (t, t, t)))


def acute_pair_mesh(eps: float = EPSILON) -> TetMesh:
    """The acute two-tet triangulation {abcd, bcde} of :func:`five_points`."""
    from .delaunay import mesh_from_tets
    return mesh_from_tets(five_points(eps), [(0, 1, 2, 3), (1, 2, 3, 4)], name="acute-pair")


def five_point_delaunay(eps: float = EPSILON) -> TetMesh:
    from dataclasses import replace
    from .delaunay import delaunay
    return replace(delaunay(five_points(eps)), name="delaunay-five")
