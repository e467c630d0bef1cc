import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from acutile.constructions import (
    C15_FIXTURE,
    SNUB_PERIOD,
    STRUCTURES,
    TILING_NAMES,
    SquareTriangleTiling,
    a15_from_bcc,
    build_structure,
    builtin_tiling,
    c15_added_centers,
    cube_five,
    cube_six,
    goldberg_vertices,
    icosahedral_z_point_set,
    icosahedron_vertices,
    reference_tetrahedron,
    search_coloring,
    structure_point_set,
    tcp_point_set,
    tiling_from_vertices,
)
from acutile.delaunay import periodic_delaunay
from acutile.geom import is_acute
from acutile.validate import check_tiling, quality_report, tcp_check

ATOMS = {"Z": 7, "A15": 8, "sigma": 30, "H": 15}


@pytest.mark.parametrize("name", TILING_NAMES)
def test_tiling_area_and_sides(name):
    t = builtin_tiling(name)
    t.validate()
    area = sum(math.sqrt(3) / 4 * 16 if f.kind == "triangle" else 16.0 for f in t.faces)
    assert abs(area - t.cell_area()) < 1e-9
    assert len(tcp_point_set(t).motif) == ATOMS[name]


def test_a15_tiling_is_square_cell():
    t = builtin_tiling("A15")
    assert [f.kind for f in t.faces] == ["square"]
    assert abs(t.cell_area() - 16) < 1e-12
    assert all(f.kind == "triangle" for f in builtin_tiling("Z").faces)
    assert abs(builtin_tiling("sigma").cell_area() - SNUB_PERIOD ** 2) < 1e-9


def test_dot_positions():
    for name in TILING_NAMES:
        t = builtin_tiling(name)
        (a, b), (c, d) = t.periods
        lat = np.array([[a, b], [c, d]])
        verts = np.array(t.vertices)
        for p, _ in t.dots:
            # a dot is never a vertex, and lies within 4 of one
            dist = min(np.linalg.norm(np.array(p) - v - np.array(k) @ lat)
                       for v in verts for k in itertools.product((-1, 0, 1), repeat=2))
            assert 1.0 < dist < 4.0


def test_heights():
    t = builtin_tiling("Z")
    pps = tcp_point_set(t)
    zs = sorted(round(p.z, 12) for p in pps.motif)
    assert zs.count(0.0) == 1 and zs.count(2.0) == 1
    white = sum(1 for _, c in t.dots if c == "white")
    assert zs.count(1.0) == white and zs.count(3.0) == len(t.dots) - white
    assert pps.lattice[2].z == 4.0
    assert (0.0, 0.0, 0.0) in [tuple(p) for p in pps.motif]


def test_invalid_tiling_rejected():
    t = builtin_tiling("A15")
    bad = SquareTriangleTiling(t.periods, t.faces, t.dots[:-1], t.vertices, "bad")
    with pytest.raises(ValueError):
        tcp_point_set(bad)
    with pytest.raises(ValueError):
        builtin_tiling("kagome")
    with pytest.raises(ValueError):
        # side 3 squares are not allowed
        tiling_from_vertices(((3.0, 0.0), (0.0, 3.0)), [(0.0, 0.0)])


@pytest.mark.parametrize("name", ["Z", "A15"])
def test_search_coloring_agrees_with_rule(name):
    t = builtin_tiling(name)
    assert search_coloring(t) == [c for _, c in t.dots]


def test_search_coloring_limit():
    with pytest.raises(ValueError):
        search_coloring(builtin_tiling("sigma"))


def test_a15_from_bcc_matches_square_tiling(structure):
    a = structure("a15-bcc")
    b = structure("a15-square")
    ra, rb = tcp_check(a)[1], tcp_check(b)[1]
    assert ra.histogram == rb.histogram or \
        {k: v / ra.edges for k, v in ra.histogram.items()} == \
        {k: v / rb.edges for k, v in rb.histogram.items()}
    assert abs(ra.average_valence - 46 / 9) < 1e-12
    qa, qb = quality_report(a), quality_report(b)
    assert np.allclose(qa.values(), qb.values(), atol=1e-9)
    assert len(structure_point_set("a15-bcc").motif) == 8


def test_a15_bcc_periods():
    p = a15_from_bcc((2, 1, 1))
    assert len(p.motif) == 16


def test_c15_fixture_is_derived():
    assert sorted(c15_added_centers()) == sorted(tuple(float(x) for x in p) for p in C15_FIXTURE)
    assert len(C15_FIXTURE) == 16


def test_c15_quality(structure):
    q = quality_report(structure("c15"))
    assert 0.612 - 0.002 <= q.radius_edge_min and q.radius_edge_max <= 0.711 + 0.002
    assert 60 - 0.02 <= q.dihedral_min_min and q.dihedral_max_max <= 74.20 + 0.02
    assert abs(tcp_check(structure("c15"))[1].average_valence - 5.1) < 1e-12


def test_icosahedron():
    v = icosahedron_vertices()
    d = [np.linalg.norm(v[i] - v[j]) for i, j in itertools.combinations(range(12), 2)]
    assert sum(abs(x - 1) < 1e-12 for x in d) == 30
    top = v[:, 2].max()
    assert np.sum(np.isclose(v[:, 2], top)) == 3
    assert np.sum(np.isclose(v[:, 2], -top)) == 3


def test_icosahedral_cone_tets(structure):
    mesh = structure("z-icosahedral")
    # the center sits at the origin: vertex 0 of the canonical motif order
    centers = [i for i, p in enumerate(mesh.vertices) if max(abs(x) for x in p) < 1e-9]
    assert len(centers) == 1
    c = centers[0]
    cone = [t for t in mesh.tets if any(i == c and off == (0, 0, 0) for i, off in t)]
    assert len(cone) == 20
    assert tcp_check(mesh)[0].passed
    assert len(icosahedral_z_point_set().motif) == 12


def test_icosahedral_periods():
    assert len(icosahedral_z_point_set((1, 2, 1)).motif) == 24


def test_goldberg_edges():
    a, e = 1.0, 1.0
    got = sorted(reference_tetrahedron("goldberg", a, e).edge_lengths())
    assert np.allclose(got, sorted([3, math.sqrt(2)] + [math.sqrt(2)] * 2 + [math.sqrt(5)] * 2))
    for a, e in ((0.3, 1.0), (1.0, 2.5), (2.0, 0.7)):
        v = goldberg_vertices(a, e)
        sq = sorted(sum((p[k] - q[k]) ** 2 for k in range(3)) for p, q in itertools.combinations(v, 2))
        want = sorted([9 * a * a] + [a * a + e * e] * 3 + [4 * a * a + e * e] * 2)
        assert np.allclose(sq, want, rtol=0, atol=1e-8)


def test_goldberg_exact_identity():
    # with rational height and the triangle written in exact squared terms
    a, e = Fraction(1, 3), Fraction(2)
    r2 = e * e / 3                      # circumradius squared of the base triangle
    chord2 = 3 * r2                     # squared chord between neighbours = e^2
    b2 = chord2 + a * a
    c2 = chord2 + (2 * a) ** 2
    assert b2 - a * a - e * e == 0 and c2 - 4 * a * a - e * e == 0


def test_goldberg_errors():
    with pytest.raises(ValueError):
        goldberg_vertices(0, 1)
    with pytest.raises(ValueError):
        reference_tetrahedron("goldberg", 1, -1)
    with pytest.raises(ValueError):
        reference_tetrahedron("sommerville-v")


@pytest.mark.parametrize("name,row", [
    ("sommerville-i", (1.118, 1.118, 45, 45, 90, 90)),
    ("sommerville-iii", (0.866, 0.866, 45, 45, 120, 120)),
    ("sommerville-iv", (1.581, 1.581, 30, 30, 131.81, 131.81)),
    ("regular", (0.612, 0.612, 70.53, 70.53, 70.53, 70.53)),
])
def test_reference_rows(name, row):
    q = quality_report([reference_tetrahedron(name)])
    assert np.allclose(q.values()[:2], row[:2], atol=0.002)
    assert np.allclose(q.values()[2:], row[2:], atol=0.02)


def test_reference_shortest_edge_one():
    for n in ("sommerville-i", "sommerville-ii", "sommerville-iii", "sommerville-iv",
              "regular", "cube-corner", "cube5-center", "cube5-corner", "cube6"):
        assert abs(min(reference_tetrahedron(n).edge_lengths()) - 1) < 1e-8


def test_cube_decompositions():
    for parts, n in ((cube_five(), 5), (cube_six(), 6)):
        assert len(parts) == n
        vol = sum(abs(np.linalg.det(np.array([np.subtract(t.vertices[k], t.vertices[0]) for k in (1, 2, 3)])))
                  for t in parts) / 6
        assert abs(vol - 1) < 1e-12
    q = quality_report(cube_five())
    assert np.allclose(q.values(), (0.612, 0.866, 54.73, 70.53, 70.53, 90), atol=0.02)
    assert not any(is_acute(t) for t in cube_six())


def test_unknown_structure():
    with pytest.raises(ValueError):
        build_structure("d8")


@pytest.mark.parametrize("name", STRUCTURES)
def test_structures_tile(structure, name):
    assert check_tiling(structure(name)).passed


def test_periods_multiply_cells():
    one = build_structure("z-triangle")
    two = build_structure("z-triangle", (1, 1, 2))
    assert len(two.tets) == 2 * len(one.tets)
    assert check_tiling(two).passed
