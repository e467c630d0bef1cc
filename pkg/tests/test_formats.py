import json
from dataclasses import replace

import pytest

from acutile.constructions import STRUCTURES, acute_pair_mesh, five_point_delaunay
from acutile.formats import (
    FORMATS,
    MEDIT,
    NATIVE,
    VTK,
    FormatError,
    export_mesh,
    import_mesh,
    read_mesh,
    write_mesh,
)
from acutile.geom import Point3
from acutile.mesh import TetMesh
from acutile.slab import SlabSpec, build_slab
from acutile.validate import check_tiling

MESHES = list(STRUCTURES) + ["bcc", "slab", "slab-2x1", "acute-pair", "delaunay-five"]


@pytest.fixture(scope="module")
def meshes(structure):
    def get(name):
        if name == "slab":
            return build_slab()
        if name == "slab-2x1":
            return build_slab(SlabSpec(nx=2, ny=1))
        if name == "acute-pair":
            return acute_pair_mesh()
        if name == "delaunay-five":
            return five_point_delaunay()
        return structure(name)
    return get


@pytest.fixture(scope="module")
def structure():
    from acutile.constructions import build_structure
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_structure(name)
        return cache[name]
    return get


@pytest.mark.parametrize("name", MESHES)
def test_native_round_trip_exact(meshes, name):
    m = meshes(name)
    f = export_mesh(m, NATIVE)
    back = import_mesh(f)
    assert back == m
    assert back.grid_vertices == m.grid_vertices
    assert export_mesh(back, NATIVE).payload == f.payload


@pytest.mark.parametrize("fmt", [VTK, MEDIT])
@pytest.mark.parametrize("name", MESHES)
def test_text_round_trip(meshes, name, fmt):
    m = meshes(name)
    back = import_mesh(export_mesh(m, fmt))
    assert back == replace(m, labels=None)
    assert check_tiling(back).passed == check_tiling(m).passed


def test_native_schema(meshes):
    d = json.loads(export_mesh(meshes("slab"), NATIVE).payload)
    assert d["format"] == "acutile-mesh" and d["version"] == 1
    assert d["scale_exponent"] == 32
    assert d["periodicity"] == "slab"
    assert all(isinstance(c, int) for v in d["vertices"] for c in v)
    assert len(d["labels"]) == len(d["tets"])


def test_vtk_single_tet():
    m = TetMesh(vertices=tuple(Point3(*v) for v in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))),
                tets=(tuple((i, (0, 0, 0)) for i in range(4)),))
    text = export_mesh(m, VTK).text()
    lines = text.splitlines()
    assert lines[0] == "# vtk DataFile Version 3.0"
    assert "DATASET UNSTRUCTURED_GRID" in lines
    assert any(l.startswith("POINTS 4 ") for l in lines)
    assert "CELLS 1 5" in lines
    k = lines.index("CELL_TYPES 1")
    assert lines[k + 1] == "10"


def test_medit_bcc_census(meshes):
    m = meshes("bcc")
    text = export_mesh(m, MEDIT).text().splitlines()
    nv = int(text[text.index("Vertices") + 1])
    nt = int(text[text.index("Tetrahedra") + 1])
    assert nt == len(m.tets) == 12
    # every motif vertex at zero offset, plus the other images the tets use
    census = set(m.used_refs()) | {(i, (0, 0, 0)) for i in range(len(m.vertices))}
    assert nv == len(census)


def test_deterministic_bytes(meshes):
    for fmt in FORMATS:
        assert export_mesh(meshes("z-triangle"), fmt).payload == \
            export_mesh(meshes("z-triangle"), fmt).payload


def test_files(tmp_path, meshes):
    m = meshes("c15")
    for fmt, ext in ((NATIVE, "json"), (VTK, "vtk"), (MEDIT, "mesh")):
        p = tmp_path / f"c15.{ext}"
        write_mesh(m, str(p), fmt)
        assert read_mesh(str(p)) == replace(m, labels=m.labels if fmt == NATIVE else None)


def test_errors():
    with pytest.raises(ValueError):
        export_mesh(acute_pair_mesh(), "stl")
    with pytest.raises(FormatError):
        import_mesh(b"{not json", NATIVE)
    with pytest.raises(FormatError):
        import_mesh(b'{"format": "other"}', NATIVE)
    with pytest.raises(FormatError):
        import_mesh(b"hello", path="x.txt")
    bad = export_mesh(acute_pair_mesh(), MEDIT).text().replace("End\n", "")
    bad = bad[: bad.rindex("Tetrahedra")] + "Tetrahedra\n2\n1 2 3"
    with pytest.raises(FormatError):
        import_mesh(bad, MEDIT)
    vtk = export_mesh(acute_pair_mesh(), VTK).text()
    with pytest.raises(FormatError):
        import_mesh(vtk[: len(vtk) // 2], VTK)
