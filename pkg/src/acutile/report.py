"""Canonical JSON reports and the reference quality table."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .validate import QUALITY_FIELDS, CheckResult, QualityReport, ValenceReport, quality_report, round_half_up

ANGLE_TOL = 0.02
RATIO_TOL = 0.002


@dataclass(frozen=True)
class TableRow:
    name: str
    values: Tuple[float, float, float, float, float, float]


#: transcribed from the published quality table
REFERENCE_TABLE: Tuple[TableRow, ...] = (
    TableRow("TCP Z from triangle tiling", (0.651, 0.737, 53.13, 67.37, 73.89, 77.07)),
    TableRow("TCP A15 from square tiling", (0.645, 0.707, 53.13, 67.79, 73.39, 78.46)),
    TableRow("TCP sigma", (0.645, 0.737, 53.13, 67.79, 73.39, 78.46)),
    TableRow("TCP C15", (0.612, 0.711, 60.0, 70.52, 70.52, 74.20)),
    TableRow("TCP Z from icosahedra", (0.629, 1.000, 41.81, 69.09, 71.99, 83.62)),
    TableRow("Slab", (0.636, 0.938, 46.83, 67.88, 74.39, 87.70)),
    TableRow("Sommerville I", (1.118, 1.118, 45.0, 45.0, 90.0, 90.0)),
    TableRow("Sommerville II", (0.645, 0.645, 60.0, 60.0, 90.0, 90.0)),
    TableRow("Sommerville III", (0.866, 0.866, 45.0, 45.0, 120.0, 120.0)),
    TableRow("Sommerville IV", (1.581, 1.581, 30.0, 30.0, 131.81, 131.81)),
    TableRow("Cube V", (0.612, 0.866, 54.73, 70.53, 70.53, 90.0)),
    TableRow("Cube VI", (0.866, 0.866, 45.0, 45.0, 90.0, 90.0)),
    TableRow("Regular tetrahedron", (0.612, 0.612, 70.53, 70.53, 70.53, 70.53)),
    TableRow("Cube corner", (0.866, 0.866, 54.73, 54.73, 90.0, 90.0)),
)


def _sources() -> Dict[str, Callable[[], object]]:
    from .constructions import build_structure, cube_five, cube_six, reference_tetrahedron
    from .slab import build_slab

    def one(name):
        return lambda: [reference_tetrahedron(name)]
    return {
        "TCP Z from triangle tiling": lambda: build_structure("z-triangle"),
        "TCP A15 from square tiling": lambda: build_structure("a15-square"),
        "TCP sigma": lambda: build_structure("sigma"),
        "TCP C15": lambda: build_structure("c15"),
        "TCP Z from icosahedra": lambda: build_structure("z-icosahedral"),
        "Slab": build_slab,
        "Sommerville I": one("sommerville-i"),
        "Sommerville II": one("sommerville-ii"),
        "Sommerville III": one("sommerville-iii"),
        "Sommerville IV": one("sommerville-iv"),
        "Cube V": cube_five,
        "Cube VI": cube_six,
        "Regular tetrahedron": one("regular"),
        "Cube corner": one("cube-corner"),
    }


@dataclass(frozen=True)
class RowComparison:
    reference: TableRow
    computed: QualityReport
    deltas: Tuple[float, ...]
    passed: bool

    def failing_fields(self) -> List[str]:
        return [f for f, d, tol in zip(QUALITY_FIELDS, self.deltas, _tols()) if abs(d) > tol]


def _tols():
    return (RATIO_TOL,) * 2 + (ANGLE_TOL,) * 4


def compare_row(row: TableRow, computed: QualityReport) -> RowComparison:
    deltas = tuple(c - r for c, r in zip(computed.values(), row.values))
    ok = all(abs(d) <= tol + 1e-12 for d, tol in zip(deltas, _tols()))
    return RowComparison(row, computed, deltas, ok)


def regenerate_table1(names: Optional[List[str]] = None) -> List[RowComparison]:
    """Rebuild every structure from scratch and compare with the table."""
    src = _sources()
    out = []
    for row in REFERENCE_TABLE:
        if names is not None and row.name not in names:
            continue
        out.append(compare_row(row, quality_report(src[row.name](), row.name)))
    return out


# -- canonical JSON ----------------------------------------------------------------

class Fixed:
    """A float rendered with a fixed number of decimals."""

    def __init__(self, value: float, places: int = 6):
        self.value = float(value)
        self.places = places

    def render(self) -> str:
        if not math.isfinite(self.value):
            return "null"
        v = round_half_up(self.value, self.places) if self.places <= 6 else self.value
        s = f"{v:.{self.places}f}"
        return "0." + "0" * self.places if s.startswith("-") and float(s) == 0 else s


def _render(x, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    colon = ": " if indent else ":"
    if isinstance(x, Fixed):
        return x.render()
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return json.dumps(x)
    if isinstance(x, float):
        return Fixed(x).render()
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [json.dumps(str(k)) + colon + _render(v, indent, level + 1)
                 for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(x, (list, tuple)):
        if not x:
            return "[]"
        items = [_render(v, indent, level + 1) for v in x]
        return "[" + pad + ("," + pad).join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def quality_payload(r: QualityReport) -> dict:
    d = {"name": r.name, "tets": r.tets}
    for f, v in zip(QUALITY_FIELDS, r.values()):
        d[f] = Fixed(v, 6)
    d["display"] = {f: Fixed(v, 2) for f, v in zip(QUALITY_FIELDS, r.values())}
    return d


def to_payload(report) -> object:
    if isinstance(report, QualityReport):
        return quality_payload(report)
    if isinstance(report, ValenceReport):
        d = report.as_dict()
        d["product"] = Fixed(report.product, 6)
        d["average_valence"] = Fixed(report.average_valence, 6)
        d["average_dihedral"] = Fixed(report.average_dihedral, 6)
        return d
    if isinstance(report, CheckResult):
        return {"check": report.name, "passed": report.passed,
                "failures": [to_payload(f) for f in report.failures],
                "details": to_payload(report.details)}
    if isinstance(report, RowComparison):
        return {"name": report.reference.name, "passed": report.passed,
                "reference": dict(zip(QUALITY_FIELDS, report.reference.values)),
                "computed": quality_payload(report.computed),
                "failing_fields": report.failing_fields()}
    if isinstance(report, dict):
        return {k: to_payload(v) for k, v in report.items()}
    if isinstance(report, (list, tuple)):
        return [to_payload(v) for v in report]
    return report


def emit_report(report, indent: int = 2) -> str:
    """Canonical JSON with sorted keys.  Measured values get six decimals;
    the table-style ``display`` block gets two."""
    return _render(to_payload(report), indent, 0) + "\n"
