import io
import json

import pytest

from acutile.cli import run_cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def z_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("cli") / "z.json"
    code, _, err = run("generate", "--structure", "z-triangle", "--format", "native-json",
                       "--out", str(p))
    assert code == 0, err
    return p


def test_generate_validate_acute(z_file):
    code, out, _ = run("validate", str(z_file), "--checks", "acute")
    assert code == 0
    d = json.loads(out)
    assert d["checks"][0]["passed"] is True
    assert d["checks"][0]["details"]["max_dihedral"] < 77.08


def test_validate_all_checks(z_file):
    code, out, _ = run("validate", str(z_file), "--checks", "acute,tiling,tcp,delaunay")
    assert code == 0
    assert [c["check"] for c in json.loads(out)["checks"]] == ["acute", "tiling", "tcp", "delaunay"]


def test_acute_pair(tmp_path):
    p = tmp_path / "pair.vtk"
    assert run("generate", "--structure", "acute-pair", "--format", "vtk", "--out", str(p))[0] == 0
    assert run("validate", str(p), "--checks", "delaunay")[0] == 1
    assert run("validate", str(p), "--checks", "acute")[0] == 0
    # a finite mesh has no valences
    assert run("validate", str(p), "--checks", "tcp")[0] == 2


def test_generate_stdout_deterministic():
    a = run("generate", "--structure", "bcc", "--format", "medit")
    b = run("generate", "--structure", "bcc", "--format", "medit")
    assert a == b and a[0] == 0 and a[1].startswith("MeshVersionFormatted")


def test_slab_generate(tmp_path):
    p = tmp_path / "slab.mesh"
    code, _, _ = run("generate", "--structure", "slab", "--periods", "2", "1", "1",
                     "--slab-height", "7.1", "--format", "medit", "--out", str(p))
    assert code == 0
    assert run("validate", str(p), "--checks", "tiling,acute")[0] == 0
    assert run("validate", str(p), "--checks", "tcp")[0] == 2


def test_quality(z_file):
    code, out, _ = run("quality", str(z_file))
    assert code == 0 and out.startswith("z-triangle: ")
    got = [float(x) for x in out.split()[1:7]]
    want = (0.651, 0.737, 53.13, 67.37, 73.89, 77.07)
    # display values are rounded to 0.001 / 0.01, so allow that on top
    assert all(abs(g - w) <= 0.002 + 0.0005 for g, w in zip(got[:2], want[:2]))
    assert all(abs(g - w) <= 0.02 + 0.005 for g, w in zip(got[2:], want[2:]))
    code, out, _ = run("quality", str(z_file), "--json")
    assert json.loads(out)["name"] == "z-triangle"


def test_usage_errors(tmp_path, z_file):
    for argv in (["generate", "--structure", "nope"],
                 ["generate", "--structure", "bcc", "--format", "stl"],
                 ["generate", "--structure", "bcc", "--periods", "0", "1", "1"],
                 ["generate", "--structure", "bcc", "--slab-height", "2"],
                 ["generate", "--structure", "slab", "--slab-height", "-1"],
                 ["validate", str(tmp_path / "missing.json")],
                 ["validate", str(z_file), "--checks", "acute,bogus"],
                 ["frobnicate"], []):
        code, out, err = run(*argv)
        assert code == 2, argv
        assert "usage" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("quality", str(bad))[0] == 2


def test_table1_text():
    code, out, _ = run("table1")
    lines = out.strip().splitlines()
    assert len(lines) == 14
    failing = [l for l in lines if l.startswith("FAIL")]
    assert all(l.startswith(("ok", "FAIL")) for l in lines)
    assert code == (1 if failing else 0)
    code, out, _ = run("table1", "--json")
    d = json.loads(out)
    assert len(d["rows"]) == 14
    assert d["passed"] is (not failing)
    assert code == (1 if failing else 0)
