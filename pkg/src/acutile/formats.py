"""Mesh serialization: native JSON (exact grid integers), legacy VTK and
Medit.  Periodic meshes are unrolled for the two text formats; each point
carries its (vertex, offset) reference so the periodic mesh can be rebuilt.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .geom import Point3
from .mesh import NONE, PERIODICITIES, Ref, TetMesh, lattice_coords_exact
from .predicates import GRID_BITS, from_grid, grid_point

NATIVE, VTK, MEDIT = "native-json", "vtk-legacy-ascii", "medit"
FORMATS = (NATIVE, VTK, MEDIT)
_ALIASES = {"json": NATIVE, "native": NATIVE, "vtk": VTK, "medit-mesh": MEDIT, "mesh": MEDIT}
VTK_TETRA = 10


class FormatError(ValueError):
    """Raised for unreadable or inconsistent mesh files."""


@dataclass(frozen=True)
class MeshFile:
    format: str
    payload: bytes

    def text(self) -> str:
        return self.payload.decode("ascii")


def normalize_format(fmt: str) -> str:
    f = _ALIASES.get(fmt, fmt)
    if f not in FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; choose from {', '.join(FORMATS)}")
    return f


def guess_format(path: str, data: bytes) -> str:
    head = data.lstrip()[:32]
    if head.startswith(b"{"):
        return NATIVE
    if head.startswith(b"# vtk"):
        return VTK
    if b"MeshVersionFormatted" in data[:200]:
        return MEDIT
    for ext, fmt in ((".json", NATIVE), (".vtk", VTK), (".mesh", MEDIT)):
        if path.endswith(ext):
            return fmt
    raise FormatError(f"cannot tell the format of {path!r}")


# -- native --------------------------------------------------------------------

def _to_native(mesh: TetMesh) -> dict:
    return {
        "format": "acutile-mesh",
        "version": 1,
        "scale_exponent": GRID_BITS,
        "name": mesh.name,
        "periodicity": mesh.periodicity,
        "lattice": [list(v) for v in mesh.grid_lattice] if mesh.lattice is not None else None,
        "vertices": [list(v) for v in mesh.grid_vertices],
        "tets": [[[i, list(o)] for i, o in t] for t in mesh.tets],
        "labels": list(mesh.labels) if mesh.labels is not None else None,
    }


def _from_native(d: dict) -> TetMesh:
    try:
        if d.get("format") != "acutile-mesh":
            raise FormatError("not an acutile native mesh")
        if d["scale_exponent"] != GRID_BITS:
            raise FormatError(f"grid exponent {d['scale_exponent']} != {GRID_BITS}")
        lat = d["lattice"]
        lattice = tuple(Point3(*from_grid(v)) for v in lat) if lat is not None else None
        tets = tuple(tuple((int(i), tuple(int(x) for x in o)) for i, o in t) for t in d["tets"])
        labels = tuple(d["labels"]) if d.get("labels") is not None else None
        return TetMesh(vertices=tuple(Point3(*from_grid(v)) for v in d["vertices"]),
                       tets=tets, lattice=lattice, periodicity=d["periodicity"],
                       labels=labels, name=d.get("name", ""))
    except (KeyError, TypeError, ValueError) as ex:
        if isinstance(ex, FormatError):
            raise
        raise FormatError(f"malformed native mesh: {ex}") from ex


# -- unrolling shared by the text formats ------------------------------------

def _unrolled(mesh: TetMesh) -> Tuple[List[Ref], List[Tuple[int, ...]]]:
    """Points (every vertex at zero offset first, then other references) and
    tets as point indices."""
    zero = (0, 0, 0)
    refs: List[Ref] = [(i, zero) for i in range(len(mesh.vertices))]
    extra = sorted({r for t in mesh.tets for r in t if r[1] != zero})
    refs += extra
    where = {r: k for k, r in enumerate(refs)}
    return refs, [tuple(where[r] for r in t) for t in mesh.tets]


def _fmt(x: float) -> str:
    return repr(float(x))


def _rebuild(name, periodicity, lattice, points, ref_index, ref_offset, tets) -> TetMesh:
    nv = max(ref_index) + 1 if ref_index else 0
    verts: List[Optional[Point3]] = [None] * nv
    for p, i, o in zip(points, ref_index, ref_offset):
        if o == (0, 0, 0):
            verts[i] = p
    if any(v is None for v in verts):
        raise FormatError("a vertex has no zero-offset point")
    refs = list(zip(ref_index, ref_offset))
    return TetMesh(vertices=tuple(verts), tets=tuple(tuple(refs[k] for k in t) for t in tets),
                   lattice=lattice, periodicity=periodicity, name=name)


# -- VTK -------------------------------------------------------------------------

def _to_vtk(mesh: TetMesh) -> str:
    refs, tets = _unrolled(mesh)
    lines = ["# vtk DataFile Version 3.0",
             f"acutile name={mesh.name or '-'} periodicity={mesh.periodicity}",
             "ASCII", "DATASET UNSTRUCTURED_GRID"]
    if mesh.lattice is not None:
        lines += ["FIELD FieldData 1", "lattice 3 3 double"]
        lines += [" ".join(_fmt(c) for c in v) for v in mesh.lattice]
    lines.append(f"POINTS {len(refs)} double")
    for r in refs:
        lines.append(" ".join(_fmt(c) for c in from_grid(mesh.ref_grid(r))))
    lines.append(f"CELLS {len(tets)} {5 * len(tets)}")
    lines += ["4 " + " ".join(map(str, t)) for t in tets]
    lines.append(f"CELL_TYPES {len(tets)}")
    lines += [str(VTK_TETRA)] * len(tets)
    lines += [f"POINT_DATA {len(refs)}", "FIELD refs 2", f"ref_index 1 {len(refs)} int"]
    lines += [str(i) for i, _ in refs]
    lines.append(f"ref_offset 3 {len(refs)} int")
    lines += [" ".join(map(str, o)) for _, o in refs]
    return "\n".join(lines) + "\n"


def _from_vtk(text: str) -> TetMesh:
    lines = [l.strip() for l in text.splitlines()]
    if not lines or not lines[0].startswith("# vtk"):
        raise FormatError("missing VTK header")
    meta = dict(kv.split("=", 1) for kv in lines[1].split()[1:] if "=" in kv)
    name = meta.get("name", "")
    name = "" if name == "-" else name
    periodicity = meta.get("periodicity", NONE)
    if periodicity not in PERIODICITIES:
        raise FormatError(f"unknown periodicity {periodicity!r}")
    toks = iter(" ".join(lines[2:]).split())
    lattice = points = tets = None
    ref_index: List[int] = []
    ref_offset: List[Tuple[int, int, int]] = []
    try:
        for tok in toks:
            if tok == "lattice":
                next(toks), next(toks), next(toks)
                vals = [float(next(toks)) for _ in range(9)]
                lattice = tuple(Point3(*vals[3 * k:3 * k + 3]) for k in range(3))
            elif tok == "POINTS":
                n = int(next(toks))
                next(toks)
                vals = [float(next(toks)) for _ in range(3 * n)]
                points = [Point3.snapped(*vals[3 * k:3 * k + 3]) for k in range(n)]
            elif tok == "CELLS":
                m = int(next(toks))
                next(toks)
                tets = []
                for _ in range(m):
                    if int(next(toks)) != 4:
                        raise FormatError("only tetrahedral cells are supported")
                    tets.append(tuple([int(next(toks)) for _ in range(4)]))
            elif tok == "CELL_TYPES":
                m = int(next(toks))
                if any([int(next(toks)) != VTK_TETRA for _ in range(m)]):
                    raise FormatError("only tetrahedral cells are supported")
            elif tok == "ref_index":
                next(toks)
                n = int(next(toks))
                next(toks)
                ref_index = [int(next(toks)) for _ in range(n)]
            elif tok == "ref_offset":
                next(toks)
                n = int(next(toks))
                next(toks)
                ref_offset = [tuple([int(next(toks)) for _ in range(3)]) for _ in range(n)]
    except StopIteration:
        raise FormatError("truncated VTK file") from None
    if points is None or tets is None:
        raise FormatError("VTK file lacks POINTS or CELLS")
    if not ref_index:
        ref_index = list(range(len(points)))
        ref_offset = [(0, 0, 0)] * len(points)
    return _rebuild(name, periodicity, lattice, points, ref_index, ref_offset, tets)


# -- Medit -------------------------------------------------------------------------

def _to_medit(mesh: TetMesh) -> str:
    refs, tets = _unrolled(mesh)
    lines = ["MeshVersionFormatted 2", "Dimension 3",
             f"# acutile name {mesh.name or '-'}", f"# acutile periodicity {mesh.periodicity}"]
    if mesh.lattice is not None:
        lines += ["# acutile lattice " + " ".join(_fmt(c) for c in v) for v in mesh.lattice]
    lines += ["Vertices", str(len(refs))]
    for r in refs:
        x, y, z = from_grid(mesh.ref_grid(r))
        lines.append(f"{_fmt(x)} {_fmt(y)} {_fmt(z)} {r[0] + 1}")
    lines += ["Tetrahedra", str(len(tets))]
    lines += [" ".join(str(k + 1) for k in t) + " 0" for t in tets]
    lines.append("End")
    return "\n".join(lines) + "\n"


def _from_medit(text: str) -> TetMesh:
    name, periodicity, lat = "", NONE, []
    body = []
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("# acutile"):
            parts = s.split()
            if parts[2] == "name":
                name = "" if parts[3] == "-" else parts[3]
            elif parts[2] == "periodicity":
                periodicity = parts[3]
            elif parts[2] == "lattice":
                lat.append(Point3(*map(float, parts[3:6])))
        elif s and not s.startswith("#"):
            body.extend(s.split())
    toks = iter(body)
    points, idx, tets = [], [], []
    try:
        for tok in toks:
            if tok == "Vertices":
                for _ in range(int(next(toks))):
                    x, y, z = [float(next(toks)) for _ in range(3)]
                    points.append(Point3.snapped(x, y, z))
                    idx.append(int(next(toks)) - 1)
            elif tok == "Tetrahedra":
                for _ in range(int(next(toks))):
                    tets.append(tuple([int(next(toks)) - 1 for _ in range(4)]))
                    next(toks)
    except StopIteration:
        raise FormatError("truncated Medit file") from None
    if periodicity not in PERIODICITIES:
        raise FormatError(f"unknown periodicity {periodicity!r}")
    lattice = tuple(lat) if lat else None
    if lattice is not None and len(lattice) != 3:
        raise FormatError("lattice needs three vectors")
    # offsets follow from positions; the zero-offset point of each vertex comes first
    base = {}
    for p, i in zip(points, idx):
        base.setdefault(i, p)
    offsets = []
    for p, i in zip(points, idx):
        if lattice is None:
            offsets.append((0, 0, 0))
            continue
        d = tuple(a - b for a, b in zip(grid_point(p), grid_point(base[i])))
        glat = [grid_point(v) for v in lattice]
        nums, den = lattice_coords_exact(d, glat)
        if any(n % den for n in nums):
            raise FormatError("point is not a lattice translate of its vertex")
        offsets.append(tuple(n // den for n in nums))
    return _rebuild(name, periodicity, lattice, points, idx, offsets, tets)


# -- public ----------------------------------------------------------------------

def export_mesh(mesh: TetMesh, fmt: str = NATIVE) -> MeshFile:
    """Serialize a mesh; output is byte-for-byte deterministic."""
    fmt = normalize_format(fmt)
    if fmt == NATIVE:
        text = json.dumps(_to_native(mesh), sort_keys=True, separators=(",", ":")) + "\n"
    elif fmt == VTK:
        text = _to_vtk(mesh)
    else:
        text = _to_medit(mesh)
    return MeshFile(fmt, text.encode("ascii"))


def import_mesh(data, fmt: Optional[str] = None, path: str = "") -> TetMesh:
    """Parse a mesh written by :func:`export_mesh`.  Text formats come back
    without tet labels."""
    if isinstance(data, MeshFile):
        fmt, data = data.format, data.payload
    if isinstance(data, str):
        data = data.encode("ascii")
    fmt = normalize_format(fmt) if fmt else guess_format(path, data)
    text = data.decode("ascii")
    if fmt == NATIVE:
        try:
            return _from_native(json.loads(text))
        except json.JSONDecodeError as ex:
            raise FormatError(f"invalid JSON: {ex}") from ex
    if fmt == VTK:
        return _from_vtk(text)
    return _from_medit(text)


def write_mesh(mesh: TetMesh, path: str, fmt: str = NATIVE) -> None:
    with open(path, "wb") as fh:
        fh.write(export_mesh(mesh, fmt).payload)


def read_mesh(path: str, fmt: Optional[str] = None) -> TetMesh:
    with open(path, "rb") as fh:
        return import_mesh(fh.read(), fmt, path)

