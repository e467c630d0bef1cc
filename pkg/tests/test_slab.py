import math

import numpy as np
import pytest

from acutile.geom import dihedral_angles
from acutile.mesh import canonical_simplex
from acutile.predicates import orient3d_int
from acutile.slab import HEIGHT_UNITS, SlabSpec, build_slab, slab_layer_report
from acutile.validate import check_acute_all, check_tiling, quality_report, tcp_check


@pytest.fixture(scope="module")
def slab():
    return build_slab()


def test_step_counts(slab):
    steps = slab_layer_report(slab)["steps"]
    assert steps["step2"] == 2      # one per base triangle
    assert steps["step4"] == 6      # six per base vertex
    assert steps["step8"] == 6      # six per hexagonal hole
    for k in range(2, 8):
        assert steps[f"step{k}"] == steps[f"step{k}-top"]
    assert len(slab.tets) == 56


def test_layer_census(slab):
    rep = slab_layer_report(slab)
    assert list(rep["layers"]) == ["0.0000", "4.0000", "4.6000", "7.1000", "9.6000",
                                  "10.2000", "14.2000"]
    assert rep["vertices"] == 11
    assert slab_layer_report(build_slab()) == rep


def test_counts_scale_with_periods():
    rep = slab_layer_report(build_slab(SlabSpec(nx=2, ny=3)))
    assert rep["tets"] == 6 * 56 and rep["vertices"] == 6 * 11


def test_tiling_and_acute(slab):
    res = check_tiling(slab)
    assert res.passed, res.failures
    assert res.details["volume6"] == res.details["expected_volume6"]
    assert check_acute_all(slab).passed


def test_volume_is_area_times_height(slab):
    a, b, _ = slab.grid_lattice
    H = slab.grid_lattice[2][2]
    area = abs(a[0] * b[1] - a[1] * b[0])  # rhombic cell
    vol6 = sum(orient3d_int(*slab.tet_grid(k)) for k in range(len(slab)))
    assert vol6 == 6 * area * H


def test_boundary_facets_in_planes(slab):
    H = slab.grid_lattice[2][2]
    flat = {0: 0, H: 0}
    for k in range(len(slab)):
        g = slab.tet_grid(k)
        for skip in range(4):
            zs = {g[i][2] for i in range(4) if i != skip}
            if len(zs) == 1 and zs <= {0, H}:
                flat[zs.pop()] += 1
    # the two base triangles of the rhombic cell, top and bottom
    assert flat == {0: 2, H: 2}
    assert check_tiling(slab).details["boundary_facets"] == 4


def test_mirror_symmetry(slab):
    H = slab.grid_lattice[2][2]
    where = {g: i for i, g in enumerate(slab.grid_vertices)}
    image = {i: where[(g[0], g[1], H - g[2])] for i, g in enumerate(slab.grid_vertices)}
    orig = {canonical_simplex(t) for t in slab.tets}
    mirrored = {canonical_simplex((image[i], o) for i, o in t) for t in slab.tets}
    assert orig == mirrored


def test_gluing_identity(slab):
    H = slab.grid_lattice[2][2]
    zs = sorted({g[2] for g in slab.grid_vertices})
    base, apex, dimple, bump, dimple_top, apex_top, top = zs
    assert bump * 2 == H
    assert dimple_top == 2 * bump - dimple == H - dimple
    assert len(set(slab.grid_vertices)) == len(slab.vertices)
    # step 8 reaches the mirrored dimple vertex exactly
    top_refs = {r for t, l in zip(slab.tets, slab.labels) if l == "step8" for r in t}
    assert any(slab.ref_grid(r)[2] == dimple_top for r in top_refs)


def test_scaling_covariance(slab):
    big = build_slab(SlabSpec(h=2 * HEIGHT_UNITS))
    assert big.tets == slab.tets
    assert np.allclose(np.array(big.vertices), 2 * np.array(slab.vertices), atol=1e-8)
    for k in range(len(slab)):
        a = dihedral_angles(slab.tetrahedron(k)).values()
        b = dihedral_angles(big.tetrahedron(k)).values()
        assert np.allclose(a, b, atol=1e-6)
    assert np.allclose(quality_report(big).values(), quality_report(slab).values(), atol=1e-6)


@pytest.mark.parametrize("h,nx,ny", [(1.0, 1, 1), (3.0, 2, 3), (100.0, 1, 2)])
def test_other_heights(h, nx, ny):
    m = build_slab(SlabSpec(h, nx, ny))
    assert check_tiling(m).passed
    assert check_acute_all(m).passed
    assert math.isclose(m.lattice[2].z, h, rel_tol=1e-9)


def test_quality_envelope(slab):
    q = quality_report(slab)
    assert abs(q.radius_edge_min - 0.636) <= 0.002
    assert abs(q.radius_edge_max - 0.938) <= 0.002
    assert abs(q.dihedral_min_min - 46.83) <= 0.02
    assert abs(q.dihedral_min_max - 67.88) <= 0.02
    assert abs(q.dihedral_max_min - 74.39) <= 0.02
    assert q.dihedral_max_max < 90


def test_determinism():
    assert build_slab() == build_slab()


def test_errors(slab):
    for bad in ((0.0, 1, 1), (-1.0, 1, 1), (float("nan"), 1, 1), (1.0, 0, 1), (1.0, 1, 1.5)):
        with pytest.raises(ValueError):
            SlabSpec(*bad)
    with pytest.raises(ValueError):
        tcp_check(slab)
    from acutile.constructions import build_structure
    with pytest.raises(ValueError):
        slab_layer_report(build_structure("z-triangle"))
