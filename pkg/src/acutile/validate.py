"""Checks over finished meshes (tiling validity, acuteness, TCP combinatorics,
the valence/dihedral identity) and reference-table quality statistics."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .geom import EDGES, Tetrahedron, dihedral_angles, edge_signs, tet_quality
from .mesh import FULL, NONE, SLAB, Ref, TetMesh, canonical_simplex, shift
from .predicates import SCALE, insphere_int, orient3d_int, sign

#: the edge valence a tiling by regular tetrahedra would need
N0 = 360.0 / math.degrees(math.acos(1.0 / 3.0))


@dataclass
class CheckResult:
    """Outcome of a mesh check plus machine-readable diagnostics."""

    name: str
    passed: bool
    failures: List[dict] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


def _canon_shift(refs: Sequence[Ref]):
    """Canonical form of a simplex and the offset that was subtracted."""
    best, best_shift = None, None
    for _, o in refs:
        neg = (-o[0], -o[1], -o[2])
        cand = tuple(sorted(shift(r, neg) for r in refs))
        if best is None or cand < best:
            best, best_shift = cand, neg
    return best, best_shift


def _facets(mesh: TetMesh):
    """Yield ``(facet key, side sign, tet index)`` for every tet facet."""
    for k, refs in enumerate(mesh.tets):
        for i in range(4):
            tri = [refs[j] for j in range(4) if j != i]
            key, sh = _canon_shift(tri)
            apex = shift(refs[i], sh)
            g = [mesh.ref_grid(r) for r in key]
            side = sign(orient3d_int(g[0], g[1], g[2], mesh.ref_grid(apex)))
            yield key, side, k


def check_tiling(mesh: TetMesh) -> CheckResult:
    """Face-to-face pairing plus an exact volume cover, on a canonical mesh.

    Interior facets must be shared by exactly two tets lying on opposite
    sides.  For periodic meshes the tet volumes must sum to the cell volume;
    for slabs, one-sided facets must lie in the two bounding planes; for
    finite meshes they must be convex-hull facets.
    """
    failures: List[dict] = []
    vol_total = 0
    seen = set()
    for k, refs in enumerate(mesh.tets):
        o = orient3d_int(*mesh.tet_grid(k))
        if o <= 0:
            failures.append({"kind": "bad-orientation", "tet": k})
        vol_total += abs(o)
        key = canonical_simplex(refs)
        if key in seen:
            failures.append({"kind": "duplicate-tet", "tet": k})
        seen.add(key)
        if mesh.periodicity != NONE and tuple(sorted(refs)) != key:
            failures.append({"kind": "non-canonical-tet", "tet": k})

    sides: Dict[tuple, List[Tuple[int, int]]] = defaultdict(list)
    for key, s, k in _facets(mesh):
        sides[key].append((s, k))
    one_sided = []
    for key, occ in sides.items():
        if len(occ) == 2 and occ[0][0] == -occ[1][0] != 0:
            continue
        if len(occ) == 1:
            one_sided.append((key, occ[0][1]))
            continue
        failures.append({"kind": "bad-facet", "facet": _fmt(key),
                         "tets": sorted(k for _, k in occ)})

    if mesh.periodicity == FULL:
        for key, k in one_sided:
            failures.append({"kind": "unmatched-facet", "facet": _fmt(key), "tet": k})
        expected = mesh.cell_volume6()
    elif mesh.periodicity == SLAB:
        top = mesh.grid_lattice[2][2]
        for key, k in one_sided:
            zs = {mesh.ref_grid(r)[2] for r in key}
            if not (zs == {0} or zs == {top}):
                failures.append({"kind": "unmatched-facet", "facet": _fmt(key), "tet": k})
        expected = mesh.cell_volume6()
    else:
        expected = None
        verts = mesh.grid_vertices
        for key, k in one_sided:
            g = [mesh.ref_grid(r) for r in key]
            s = {sign(orient3d_int(g[0], g[1], g[2], v)) for v in verts} - {0}
            if len(s) > 1:
                failures.append({"kind": "unmatched-facet", "facet": _fmt(key), "tet": k})

    details: Dict[str, object] = {"tets": len(mesh.tets), "facets": len(sides),
                                  "boundary_facets": len(one_sided)}
    if expected is not None:
        details["volume6"] = vol_total
        details["expected_volume6"] = expected
        if vol_total != expected:
            failures.append({"kind": "volume-mismatch",
                             "volume": vol_total / 6 / SCALE ** 3,
                             "expected": expected / 6 / SCALE ** 3})
    else:
        details["volume"] = vol_total / 6 / SCALE ** 3
    return CheckResult("tiling", not failures, failures, details)


def _fmt(key) -> list:
    return [[i, list(o)] for i, o in key]


def check_acute_all(mesh: Union[TetMesh, Sequence[Tetrahedron]]) -> CheckResult:
    """Pass iff every tet is acute; reports the tet and edge carrying the
    largest dihedral angle."""
    tets = mesh.tetrahedra() if isinstance(mesh, TetMesh) else list(mesh)
    failures = []
    worst = (-1.0, -1, None)
    for k, t in enumerate(tets):
        signs = edge_signs(t)
        d = dihedral_angles(t)
        for (e, a), s in zip(d.angles, signs):
            if a > worst[0]:
                worst = (a, k, e)
            if s <= 0:
                failures.append({"kind": "non-acute", "tet": k, "edge": list(e),
                                 "angle": a})
    details = {"max_dihedral": worst[0], "worst_tet": worst[1],
               "worst_edge": list(worst[2]) if worst[2] else None}
    return CheckResult("acute", not failures, failures, details)


@dataclass(frozen=True)
class ValenceReport:
    """Edge valence statistics of a periodic tiling."""

    histogram: Tuple[Tuple[int, int], ...]
    average_valence: float
    average_dihedral: float
    product: float
    edges: int
    tets: int

    def as_dict(self) -> dict:
        return {"histogram": {str(v): n for v, n in self.histogram},
                "average_valence": self.average_valence,
                "average_dihedral": self.average_dihedral,
                "product": self.product, "edges": self.edges, "tets": self.tets}


def _require_periodic(mesh: TetMesh):
    if mesh.periodicity != FULL:
        raise ValueError("edge valences are only defined on fully periodic meshes")


def _edge_incidences(mesh: TetMesh):
    valence: Counter = Counter()
    dihedral_sum = 0.0
    for k, refs in enumerate(mesh.tets):
        t = mesh.tetrahedron(k)
        d = dihedral_angles(t)
        # Tetrahedron() may have swapped the last two vertices; look up by position
        tg = t.grid()
        pos = [tg.index(x) for x in mesh.tet_grid(k)]
        for i, j in EDGES:
            valence[canonical_simplex((refs[i], refs[j]))] += 1
            dihedral_sum += d[(pos[i], pos[j])]
    return valence, dihedral_sum


def _valence_report(mesh: TetMesh):
    _require_periodic(mesh)
    valence, dsum = _edge_incidences(mesh)
    incid = 6 * len(mesh.tets)
    avg_val = incid / len(valence)
    avg_dih = dsum / incid
    hist = tuple(sorted(Counter(valence.values()).items()))
    return valence, ValenceReport(hist, avg_val, avg_dih, avg_val * avg_dih, len(valence),
                                  len(mesh.tets))


def valence_angle_identity(mesh: TetMesh) -> ValenceReport:
    """Average edge valence times average dihedral angle (360 for any tiling)."""
    return _valence_report(mesh)[1]


def tcp_check(mesh: TetMesh) -> Tuple[CheckResult, ValenceReport]:
    """Every edge has valence 5 or 6 and no triangle has two 6-valent edges."""
    valence, report = _valence_report(mesh)
    failures = []
    for key, v in sorted(valence.items()):
        if v not in (5, 6):
            failures.append({"kind": "bad-valence", "edge": _fmt(key), "valence": v})
    checked = set()
    for k, refs in enumerate(mesh.tets):
        for i in range(4):
            tri = [refs[j] for j in range(4) if j != i]
            tkey = canonical_simplex(tri)
            if tkey in checked:
                continue
            checked.add(tkey)
            sixes = sum(valence[canonical_simplex((tri[a], tri[b]))] == 6
                        for a, b in ((0, 1), (0, 2), (1, 2)))
            if sixes >= 2:
                failures.append({"kind": "two-six-valent-edges", "triangle": _fmt(tkey)})
    return CheckResult("tcp", not failures, failures, report.as_dict()), report


# -- quality -------------------------------------------------------------------

def round_half_up(x: float, places: int) -> float:
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class QualityReport:
    """The six reference-table numbers for a collection of tetrahedra."""

    name: str
    radius_edge_min: float
    radius_edge_max: float
    dihedral_min_min: float
    dihedral_min_max: float
    dihedral_max_min: float
    dihedral_max_max: float
    tets: int = 0

    def __post_init__(self):
        pairs = ((self.radius_edge_min, self.radius_edge_max),
                 (self.dihedral_min_min, self.dihedral_min_max),
                 (self.dihedral_max_min, self.dihedral_max_max))
        for lo, hi in pairs:
            if lo > hi:
                raise ValueError("min exceeds max in quality report")
        if self.radius_edge_min <= 0:
            raise ValueError("radius-edge ratios must be positive")

    def values(self) -> Tuple[float, ...]:
        return (self.radius_edge_min, self.radius_edge_max,
                self.dihedral_min_min, self.dihedral_min_max,
                self.dihedral_max_min, self.dihedral_max_max)

    def display(self) -> Tuple[str, ...]:
        """Table-style strings: ratios to three places, angles to two."""
        v = self.values()
        return tuple(f"{round_half_up(x, 3):.3f}" for x in v[:2]) + \
            tuple(f"{round_half_up(x, 2):.2f}" for x in v[2:])


QUALITY_FIELDS = ("radius_edge_min", "radius_edge_max", "dihedral_min_min",
                  "dihedral_min_max", "dihedral_max_min", "dihedral_max_max")


def quality_report(tets: Union[TetMesh, Iterable[Tetrahedron]], name: str = "") -> QualityReport:
    """Min/max radius-edge ratio and the spread of each tet's smallest and
    largest dihedral angle."""
    if isinstance(tets, TetMesh):
        name = name or tets.name
        tets = tets.tetrahedra()
    rows = [tet_quality(t) for t in tets]
    if not rows:
        raise ValueError("quality_report needs at least one tetrahedron")
    r, lo, hi = zip(*rows)
    return QualityReport(name, min(r), max(r), min(lo), max(lo), min(hi), max(hi), len(rows))


# -- empty sphere ----------------------------------------------------------------

def delaunay_empty_sphere_check(mesh: TetMesh, points=None) -> CheckResult:
    """No point strictly inside any tet's circumsphere.

    For periodic meshes every lattice image of every motif point that could
    reach the circumsphere is tested.  ``points`` defaults to the mesh's
    own vertices.
    """
    failures = []
    if mesh.periodicity == NONE:
        pts = mesh.grid_vertices if points is None else \
            [tuple(int(round(c * SCALE)) for c in p) for p in points]
        for k in range(len(mesh.tets)):
            g = mesh.tet_grid(k)
            for idx, p in enumerate(pts):
                if p in g:
                    continue
                if insphere_int(*g, p) > 0:
                    failures.append({"kind": "point-in-circumsphere", "tet": k, "point": idx})
        return CheckResult("delaunay", not failures, failures, {"tets": len(mesh.tets)})

    import numpy as np
    from .predicates import circumcenter_int
    lat = np.array(mesh.grid_lattice, dtype=float)
    dims = mesh.periodic_dims
    inv = np.linalg.inv(lat.T)
    recip = np.linalg.norm(inv, axis=1)
    verts = mesh.grid_vertices
    for k, refs in enumerate(mesh.tets):
        g = mesh.tet_grid(k)
        cx, cy, cz, den = circumcenter_int(*g)
        c = np.array([cx / den, cy / den, cz / den])
        r = math.sqrt(sum((x - y) ** 2 for x, y in zip(c, g[0])))
        own = set(g)
        for m, v in enumerate(verts):
            u = inv @ (c - np.array(v, dtype=float))
            ranges = []
            for d in range(3):
                if d < dims:
                    lo = math.floor(u[d] - r * recip[d]) - 1
                    hi = math.ceil(u[d] + r * recip[d]) + 1
                    ranges.append(range(lo, hi + 1))
                else:
                    ranges.append(range(0, 1))
            for i in ranges[0]:
                for j in ranges[1]:
                    for kk in ranges[2]:
                        p = mesh.ref_grid((m, (i, j, kk)))
                        if p in own:
                            continue
                        if insphere_int(*g, p) > 0:
                            failures.append({"kind": "point-in-circumsphere", "tet": k,
                                             "point": [m, [i, j, kk]]})
    return CheckResult("delaunay", not failures, failures, {"tets": len(mesh.tets)})
