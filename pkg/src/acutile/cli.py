"""Command-line interface: ``acutile generate | validate | quality | table1``.

Exit status is 0 when every check passes and 1 when one fails.  Usage and
input errors exit with 2.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import List, Optional

from . import formats
from .validate import (
    check_acute_all,
    check_tiling,
    delaunay_empty_sphere_check,
    quality_report,
    tcp_check,
)

STRUCTURE_CHOICES = ("z-triangle", "a15-square", "sigma", "h", "c15", "a15-bcc",
                     "z-icosahedral", "slab", "bcc", "acute-pair", "delaunay-five")
CHECKS = ("acute", "tiling", "tcp", "delaunay")


class UsageError(Exception):
    pass


def build(name: str, periods=None, slab_height: Optional[float] = None):
    from .constructions import acute_pair_mesh, build_structure, five_point_delaunay
    from .slab import HEIGHT_UNITS, SlabSpec, build_slab
    if name == "slab":
        nx, ny = (periods[0], periods[1]) if periods else (1, 1)
        h = HEIGHT_UNITS if slab_height is None else slab_height
        return build_slab(SlabSpec(h, nx, ny))
    if slab_height is not None:
        raise UsageError("--slab-height only applies to --structure slab")
    if name == "acute-pair":
        return acute_pair_mesh()
    if name == "delaunay-five":
        return five_point_delaunay()
    return build_structure(name, periods)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="acutile", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a structure and write it to a file")
    g.add_argument("--structure", required=True, choices=STRUCTURE_CHOICES)
    g.add_argument("--periods", nargs=3, type=int, metavar=("NX", "NY", "NZ"))
    g.add_argument("--slab-height", type=float)
    g.add_argument("--format", default=formats.NATIVE,
                   choices=formats.FORMATS + tuple(formats._ALIASES))
    g.add_argument("--out", default="-", help="output path, '-' for stdout")

    v = sub.add_parser("validate", help="run checks on a mesh file")
    v.add_argument("path")
    v.add_argument("--checks", default="tiling,acute",
                   help="comma-separated subset of " + ",".join(CHECKS))
    v.add_argument("--format", choices=formats.FORMATS + tuple(formats._ALIASES))

    q = sub.add_parser("quality", help="quality statistics of a mesh file")
    q.add_argument("path")
    q.add_argument("--json", action="store_true")
    q.add_argument("--format", choices=formats.FORMATS + tuple(formats._ALIASES))

    t = sub.add_parser("table1", help="rebuild every reference-table row and diff it")
    t.add_argument("--json", action="store_true")
    return p


def _load(args):
    try:
        return formats.read_mesh(args.path, args.format)
    except OSError as ex:
        raise UsageError(f"cannot read {args.path}: {ex.strerror or ex}")
    except formats.FormatError as ex:
        raise UsageError(str(ex))


def _cmd_generate(args, out, err) -> int:
    if args.periods is not None and min(args.periods) < 1:
        raise UsageError("--periods values must be >= 1")
    if args.slab_height is not None and not args.slab_height > 0:
        raise UsageError("--slab-height must be positive")
    mesh = build(args.structure, args.periods, args.slab_height)
    payload = formats.export_mesh(mesh, args.format).payload
    if args.out == "-":
        out.write(payload.decode("ascii"))
    else:
        try:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        except OSError as ex:
            raise UsageError(f"cannot write {args.out}: {ex.strerror or ex}")
        err.write(f"wrote {len(mesh.tets)} tets to {args.out}\n")
    return 0


def _cmd_validate(args, out, err) -> int:
    from .report import emit_report
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    bad = [c for c in checks if c not in CHECKS]
    if bad or not checks:
        raise UsageError(f"unknown check(s) {', '.join(bad) or '(none)'}; choose from {','.join(CHECKS)}")
    mesh = _load(args)
    results = []
    for c in checks:
        if c == "acute":
            results.append(check_acute_all(mesh))
        elif c == "tiling":
            results.append(check_tiling(mesh))
        elif c == "tcp":
            try:
                results.append(tcp_check(mesh)[0])
            except ValueError as ex:
                raise UsageError(str(ex))
        else:
            results.append(delaunay_empty_sphere_check(mesh))
    out.write(emit_report({"mesh": mesh.name, "checks": results}))
    return 0 if all(r.passed for r in results) else 1


def _cmd_quality(args, out, err) -> int:
    from .report import emit_report
    mesh = _load(args)
    rep = quality_report(mesh)
    if args.json:
        out.write(emit_report(rep))
    else:
        out.write(f"{rep.name or '-'}: " + " ".join(rep.display()) + f"  ({rep.tets} tets)\n")
    return 0


def _cmd_table1(args, out, err) -> int:
    from .report import emit_report, regenerate_table1
    rows = regenerate_table1()
    if args.json:
        out.write(emit_report({"rows": rows, "passed": all(r.passed for r in rows)}))
    else:
        w = max(len(r.reference.name) for r in rows)
        for r in rows:
            status = "ok  " if r.passed else "FAIL"
            comp = " ".join(r.computed.display())
            ref = " ".join(f"{v:.3f}" if k < 2 else f"{v:.2f}"
                           for k, v in enumerate(r.reference.values))
            line = f"{status} {r.reference.name:<{w}}  computed {comp}  table {ref}"
            if not r.passed:
                line += "  off: " + ",".join(r.failing_fields())
            out.write(line + "\n")
    return 0 if all(r.passed for r in rows) else 1


def run_cli(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        # argparse prints usage and help straight to the process streams
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code) if ex.code is not None else 0
    handler = {"generate": _cmd_generate, "validate": _cmd_validate,
               "quality": _cmd_quality, "table1": _cmd_table1}[args.command]
    try:
        return handler(args, out, err)
    except UsageError as ex:
        parser.print_usage(err)
        err.write(f"acutile: error: {ex}\n")
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
