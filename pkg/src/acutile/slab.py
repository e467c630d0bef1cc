"""Acute tetrahedral tiling of a slab, built step by step over a triangular
grid and closed off by its mirror image.

Lateral positions are written in lattice coordinates multiplied by 6, so
every vertex used by the construction has an integer label.  With gamma = h / 14.2 the vertex layers sit at heights
0, 4, 4.6 and 7.1 (times gamma), then mirror back up to h.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .geom import Point3
from .mesh import SLAB, TetMesh
from .predicates import SCALE, from_grid

HEIGHT_UNITS = 14.2
APEX, DIMPLE, BUMP = 4.0, 4.6, 7.1

# layer name -> height in gamma units (None for the mirrored ones)
LAYERS = ("base", "apex", "dimple", "bump", "dimple-top", "apex-top", "top")
_MIRROR = {"base": "top", "apex": "apex-top", "dimple": "dimple-top", "bump": "bump",
           "top": "base", "apex-top": "apex", "dimple-top": "dimple"}
# lateral residues (in sixths of a lattice vector) that carry each layer
_RESIDUES = {
    (0, 0): ("base", "dimple", "dimple-top", "top"),
    (2, 2): ("apex", "apex-top"),
    (4, 4): ("apex", "apex-top"),
    (3, 0): ("bump",),
    (0, 3): ("bump",),
    (3, 3): ("bump",),
}


@dataclass(frozen=True)
class SlabSpec:
    """Slab of height ``h`` repeated ``nx`` by ``ny`` rhombic cells laterally."""

    h: float = HEIGHT_UNITS
    nx: int = 1
    ny: int = 1

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError("slab height must be positive")
        if int(self.nx) != self.nx or int(self.ny) != self.ny or self.nx < 1 or self.ny < 1:
            raise ValueError("lateral period counts must be integers >= 1")

    @property
    def gamma(self) -> float:
        return self.h / HEIGHT_UNITS


def _heights(spec: SlabSpec) -> Dict[str, int]:
    """Grid heights of each layer; exact under z -> H - z."""
    g = spec.gamma
    # keep H even on the grid so the middle layer sits exactly at H/2
    H = 2 * int(round(spec.h * SCALE / 2))
    z4 = int(round(APEX * g * SCALE))
    z46 = int(round(DIMPLE * g * SCALE))
    return {"base": 0, "apex": z4, "dimple": z46, "bump": H // 2,
            "dimple-top": H - z46, "apex-top": H - z4, "top": H}


_Key = Tuple[str, int, int]  # (layer, S, T) with S, T in sixths


class _Builder:
    def __init__(self, spec: SlabSpec):
        self.spec = spec
        self.z = _heights(spec)
        side = 6 * spec.gamma
        a1 = (int(round(side * SCALE)), 0)
        a2 = (int(round(side / 2 * SCALE)), int(round(side * math.sqrt(3) / 2 * SCALE)))
        self.a = [a1, a2]
        self.n = (int(spec.nx), int(spec.ny))
        self.index: Dict[Tuple[str, int, int], int] = {}
        self.grid: List[Tuple[int, int, int]] = []
        self.tets: List[Tuple] = []
        self.labels: List[str] = []
        nx, ny = self.n
        for i in range(nx):
            for j in range(ny):
                for (s, t), layers in _RESIDUES.items():
                    for layer in layers:
                        S, T = 6 * i + s, 6 * j + t
                        self.index[(layer, S, T)] = len(self.grid)
                        # lateral position rounded from exact sixths of the lattice
                        x = (S * a1[0] + T * a2[0]) / 6
                        y = (S * a1[1] + T * a2[1]) / 6
                        self.grid.append((int(round(x)), int(round(y)), self.z[layer]))

    def ref(self, key: _Key):
        layer, S, T = key
        nx, ny = self.n
        i, s = divmod(S, 6)
        j, t = divmod(T, 6)
        oi, ii = divmod(i, nx)
        oj, jj = divmod(j, ny)
        return (self.index[(layer, 6 * ii + s, 6 * jj + t)], (oi, oj, 0))

    def add(self, label: str, *keys: _Key):
        self.tets.append(tuple(self.ref(k) for k in keys))
        self.labels.append(label)
        top = tuple(self.ref((_MIRROR[k[0]], k[1], k[2])) for k in keys)
        if label != "step8":
            self.tets.append(top)
            self.labels.append(label + "-top")

    def angle(self, S, T) -> float:
        a1, a2 = self.a
        return math.atan2(S * a1[1] + T * a2[1], S * a1[0] + T * a2[0])


def _cell_items(S0: int, T0: int):
    """Triangles and edges of the lateral cell at (S0, T0), in sixths."""
    v00, v10, v01, v11 = (S0, T0), (S0 + 6, T0), (S0, T0 + 6), (S0 + 6, T0 + 6)
    tris = [((v00, v10, v01), (S0 + 2, T0 + 2)), ((v10, v11, v01), (S0 + 4, T0 + 4))]
    edges = [(v00, v10, (S0 + 4, T0 - 2)), (v00, v01, (S0 - 2, T0 + 4)),
             (v10, v01, (S0 + 4, T0 + 4))]
    return tris, edges


def _mid(u, v):
    return ((u[0] + v[0]) // 2, (u[1] + v[1]) // 2)


def build_slab(spec: SlabSpec = SlabSpec()) -> TetMesh:
    """The slab tiling, periodic in x and y and bounded by z = 0 and z = h.

    Tets are labelled ``step2`` ... ``step8`` after the construction step
    that creates them; mirrored copies of steps 2 to 7 get a ``-top`` suffix.
    """
    b = _Builder(spec)
    nx, ny = b.n
    for i in range(nx):
        for j in range(ny):
            S0, T0 = 6 * i, 6 * j
            tris, edges = _cell_items(S0, T0)
            for (u, v, w), p in tris:
                # near-regular tet over each grid triangle
                b.add("step2", ("base", *u), ("base", *v), ("base", *w), ("apex", *p))
            for u, v, q in edges:
                p = (S0 + 2, T0 + 2)
                # gap between the two step-2 tets on either side of uv
                b.add("step3", ("base", *u), ("base", *v), ("apex", *p), ("apex", *q))
            # dimple around the cell's base vertex
            around = [(S0 + s, T0 + t) for s, t in
                      ((2, 2), (-2, 4), (-4, 2), (-2, -2), (2, -4), (4, -2))]
            around.sort(key=lambda p: b.angle(p[0] - S0, p[1] - T0))
            o = (S0, T0)
            for k in range(6):
                p, q = around[k], around[(k + 1) % 6]
                b.add("step4", ("base", *o), ("apex", *p), ("apex", *q), ("dimple", *o))
            for u, v, q in edges:
                p = (S0 + 2, T0 + 2)
                m = _mid(u, v)
                # diamond-shaped bump over the edge
                b.add("step5", ("bump", *m), ("apex", *p), ("apex", *q), ("dimple", *u))
                b.add("step5", ("bump", *m), ("apex", *p), ("apex", *q), ("dimple", *v))
            for (u, v, w), p in tris:
                for x, y, z in ((u, v, w), (v, w, u), (w, u, v)):
                    b.add("step6", ("dimple", *x), ("apex", *p), ("bump", *_mid(x, y)),
                          ("bump", *_mid(x, z)))
                b.add("step7", ("apex", *p), ("bump", *_mid(u, v)), ("bump", *_mid(v, w)),
                      ("bump", *_mid(w, u)))
            mids = [(S0 + s, T0 + t) for s, t in
                    ((3, 0), (0, 3), (-3, 3), (-3, 0), (0, -3), (3, -3))]
            mids.sort(key=lambda p: b.angle(p[0] - S0, p[1] - T0))
            for k in range(6):
                m1, m2 = mids[k], mids[(k + 1) % 6]
                # hexagonal hole between the bumps, closed at the mirrored dimple
                b.add("step8", ("dimple", *o), ("bump", *m1), ("bump", *m2), ("dimple-top", *o))

    verts = tuple(Point3(*from_grid(g)) for g in b.grid)
    a1, a2 = b.a
    lattice = (Point3(*from_grid((a1[0] * nx, a1[1] * nx, 0))),
               Point3(*from_grid((a2[0] * ny, a2[1] * ny, 0))),
               Point3(*from_grid((0, 0, b.z["top"]))))
    layer_of = {idx: layer for (layer, _, _), idx in b.index.items()}
    meta = tuple(sorted(("layer:%d" % i, l) for i, l in layer_of.items()))
    return TetMesh(vertices=verts, tets=tuple(b.tets), lattice=lattice, periodicity=SLAB,
                   labels=tuple(b.labels), name="slab",
                   meta=(("gamma", repr(spec.gamma)),) + meta).canonical()


def slab_layer_report(mesh: TetMesh) -> dict:
    """Tet counts per construction step and vertex counts per height."""
    if mesh.periodicity != SLAB or mesh.labels is None or \
            not all(l.startswith("step") for l in mesh.labels):
        raise ValueError("not a mesh produced by build_slab")
    steps = Counter(mesh.labels)
    layers = Counter(v.z for v in mesh.vertices)
    H = mesh.lattice[2].z
    gamma = H / HEIGHT_UNITS
    return {
        "steps": dict(sorted(steps.items())),
        "layers": {f"{z / gamma:.4f}": n for z, n in sorted(layers.items())},
        "tets": len(mesh.tets),
        "vertices": len(mesh.vertices),
    }
