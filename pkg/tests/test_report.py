import json

import pytest

from acutile.constructions import reference_tetrahedron
from acutile.report import (
    ANGLE_TOL,
    RATIO_TOL,
    REFERENCE_TABLE,
    Fixed,
    TableRow,
    compare_row,
    emit_report,
    regenerate_table1,
)
from acutile.validate import CheckResult, QualityReport, quality_report, tcp_check


def test_reference_table_shape():
    assert len(REFERENCE_TABLE) == 14
    assert len({r.name for r in REFERENCE_TABLE}) == 14
    z = REFERENCE_TABLE[0]
    assert z.values == (0.651, 0.737, 53.13, 67.37, 73.89, 77.07)


def test_regular_report_json():
    q = quality_report([reference_tetrahedron("regular")], "regular")
    text = emit_report(q)
    d = json.loads(text)
    # sqrt(6)/4 = 0.6123724...
    assert '"radius_edge_min": 0.612372' in text
    assert d["display"]["radius_edge_min"] == 0.61
    assert d["display"]["dihedral_min_min"] == 70.53
    assert list(d) == sorted(d)


def test_z_display(structure):
    d = json.loads(emit_report(quality_report(structure("z-triangle"))))
    # the raw maximum is 77.0790; half-up rounding gives 77.08 for display
    assert abs(d["dihedral_max_max"] - 77.07) <= ANGLE_TOL
    assert d["dihedral_max_max"] < 77.08
    assert d["display"]["dihedral_max_max"] in (77.07, 77.08)


def test_empty_failures():
    text = emit_report(CheckResult("tiling", True))
    assert '"failures": []' in text
    assert json.loads(text)["passed"] is True


def test_determinism(structure):
    m = structure("c15")
    a = emit_report({"q": quality_report(m), "tcp": tcp_check(m)})
    b = emit_report({"q": quality_report(m), "tcp": tcp_check(m)})
    assert a == b
    d = json.loads(a)
    assert d["tcp"][1]["product"] == 360.0


def test_fixed_rendering():
    assert Fixed(1.0000005, 6).render() == "1.000001"
    assert Fixed(-0.0000001, 6).render() == "0.000000"
    assert Fixed(float("nan")).render() == "null"
    with pytest.raises(TypeError):
        emit_report({"x": object()})


def test_compare_row():
    row = TableRow("x", (0.5, 0.6, 50.0, 60.0, 70.0, 80.0))
    ok = compare_row(row, QualityReport("x", 0.5015, 0.6, 50.015, 60, 70, 80))
    assert ok.passed and ok.failing_fields() == []
    bad = compare_row(row, QualityReport("x", 0.5, 0.6, 50, 60, 70, 80 + 2 * ANGLE_TOL))
    assert not bad.passed and bad.failing_fields() == ["dihedral_max_max"]
    bad = compare_row(row, QualityReport("x", 0.5 - 2 * RATIO_TOL, 0.6, 50, 60, 70, 80))
    assert bad.failing_fields() == ["radius_edge_min"]


def test_reference_rows_regenerate():
    rows = regenerate_table1([r.name for r in REFERENCE_TABLE[6:]])
    assert len(rows) == 8
    for r in rows:
        assert r.passed, (r.reference.name, r.deltas)
