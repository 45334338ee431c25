"""Command-line interface: enumeration, solving, verification, rendering.

Exit codes: 0 success (or "is a tangram"), 1 negative verdict or failed
verification, 2 I/O failure, 3 usage or malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import enumerator
from .enumerator import (
    CONVEX_FAMILY_COUNTS,
    EXCLUDED_T1_LABELS,
    LATTICE_ORDER_MULTIPLICITY,
    NONLATTICE_PAIR_MULTIPLICITY,
    Catalog,
    check_no_nonconvex_quadrangle,
    enumerate_t1_candidates,
    enumerate_t2_triangles,
    full_catalog,
    label_group,
    solve_pentagon,
)
from .geometry import GeometryError, Polygon, direction_index
from .qfield import SQRT2, QuadraticRational
from .solver import classify, detect_frame, tile, validate
from .tans import ALL_TAN_IDS, Placement, placed_polygon, polygon_to_region

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_IO = 2
EXIT_USAGE = 3

FAMILIES = ("triangle", "quadrangle", "pentagon", "convex", "all")
CLASSES = ("convex", "lattice", "nonlattice", "all")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 3, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_common(p: _Parser) -> None:
    p.add_argument("--bound", type=int, default=enumerator.DEFAULT_BOUND,
                   help="side-length bound for independent parameters (>= 16)")
    p.add_argument("--debug-bound", type=int, default=None,
                   help="debug: override the bound below the supported minimum")
    p.add_argument("--jobs", type=int, default=None,
                   help="parallel tiling checks (default: TANLAB_JOBS or 1)")
    p.add_argument("--no-prune", action="store_true",
                   help="debug: disable the large-triangles-first branch order")


def build_parser() -> _Parser:
    p = _Parser(prog="tanlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("enumerate", parents=[], help="enumerate tangram figures")
    pe.add_argument("--family", choices=FAMILIES, default="all")
    pe.add_argument("--class", dest="cls", choices=CLASSES, default="all")
    pe.add_argument("--out", type=str, default=None, help="catalog JSON output path")
    _add_common(pe)

    ps = sub.add_parser("solve", help="decide whether a polygon is a tangram")
    ps.add_argument("polygon", type=str, help="polygon JSON file")
    ps.add_argument("--out", type=str, default=None, help="result JSON output path")
    _add_common(ps)

    pv = sub.add_parser("verify", help="verify the pipeline against the expected table")
    _add_common(pv)

    pr = sub.add_parser("render", help="render a catalog to SVG files")
    pr.add_argument("catalog", type=str, help="catalog JSON file")
    pr.add_argument("--svg-dir", type=str, required=True)
    return p


def _resolve_jobs(args) -> int:
    if args.jobs is not None:
        jobs = args.jobs
    else:
        jobs = int(os.environ.get("TANLAB_JOBS", "1"))
    if jobs < 1:
        raise SystemExit(EXIT_USAGE)
    return jobs


def _resolve_bound(args) -> int:
    if args.debug_bound is not None:
        if args.debug_bound < 1:
            print("error: --debug-bound must be >= 1", file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        return args.debug_bound
    if args.bound < enumerator.DEFAULT_BOUND:
        print(f"error: --bound must be >= {enumerator.DEFAULT_BOUND} "
              "(use --debug-bound to force)", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return args.bound


def _order_mode(args) -> str:
    return "naive" if args.no_prune else "default"


# -- enumerate ---------------------------------------------------------------------


def _summary_lines(family: str, catalog: Catalog, quad_report) -> list[str]:
    lines = []
    if family in ("triangle", "all"):
        lines.append(f"{catalog.summary()['triangles']} triangle")
    if family in ("quadrangle", "all"):
        nonconvex = len(quad_report.solutions) if quad_report else 0
        lines.append(f"{catalog.summary()['quadrangles']} quadrangles, "
                     f"{nonconvex} non-convex")
    if family in ("convex", "all"):
        lines.append(f"{catalog.summary()['convex_total']} convex tangrams")
    if family in ("pentagon", "all"):
        c = catalog.pentagon_counts()
        lines.append(
            f"pentagons: {c['convex']} convex, {c['lattice']} lattice, "
            f"{c['nonlattice']} non-lattice, {c['total']} total"
        )
    return lines


def cmd_enumerate(args) -> int:
    bound = _resolve_bound(args)
    jobs = _resolve_jobs(args)
    catalog = full_catalog(bound, jobs=jobs, order_mode=_order_mode(args))
    entries = list(catalog.entries)
    if args.family == "convex":
        entries = [e for e in entries if e.cls == "convex"]
    elif args.family != "all":
        entries = [e for e in entries if e.family == args.family]
    if args.cls != "all":
        want = "non-lattice" if args.cls == "nonlattice" else args.cls
        entries = [e for e in entries if e.cls == want]
    quad_report = None
    if args.family in ("quadrangle", "all"):
        quad_report = check_no_nonconvex_quadrangle()
    for line in _summary_lines(args.family, catalog, quad_report):
        print(line)
    if args.out is not None:
        payload = {
            "entries": [e.to_json() for e in entries],
            "summary": catalog.summary(),
        }
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=1, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            print(f"error writing {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"wrote {len(entries)} entries to {args.out}")
    return EXIT_OK


# -- solve -------------------------------------------------------------------------


def _load_polygon(path: str) -> Polygon | str:
    """Polygon from a JSON file; a string return is a not-a-tangram reason."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        print(f"error reading {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)
    except json.JSONDecodeError as exc:
        print(f"{path}: malformed JSON at line {exc.lineno}: {exc.msg}",
              file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    try:
        raw = Polygon.from_json(obj, validate=False)
    except GeometryError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    n = len(raw.vertices)
    for i in range(n):
        d = direction_index(raw.vertices[(i + 1) % n] - raw.vertices[i])
        if d is None:
            return "side directions are not all multiples of pi/4"
    try:
        return Polygon(raw.vertices)
    except GeometryError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def cmd_solve(args) -> int:
    _resolve_bound(args)
    poly = _load_polygon(args.polygon)
    order_mode = _order_mode(args)
    reason = None
    result = None
    if isinstance(poly, str):
        reason = poly
    elif poly.doubled_area() != QuadraticRational(16):
        reason = f"area is {poly.area()}, not 8"
    elif len(poly.vertices) == 5:
        result = solve_pentagon(poly, order_mode=order_mode)
        if result is None:
            reason = "no dissection into the seven tans exists"
    else:
        frame = detect_frame(poly)
        region = polygon_to_region(poly, frame) if frame is not None else None
        d = tile(region, ALL_TAN_IDS, order_mode=order_mode) if region else None
        if d is not None:
            result = ("lattice", d)
        else:
            reason = "no dissection found (single-lattice search; not a pentagon)"
    if result is None:
        print(f"not a tangram: {reason}")
        if args.out:
            _write_json(args.out, {"tangram": False, "reason": reason})
        return EXIT_NEGATIVE
    cls, witness = result
    print(f"tangram: class {cls}")
    if args.out:
        _write_json(args.out, {"tangram": True, "class": cls,
                               "witness": witness.to_json(cls)})
    return EXIT_OK


def _write_json(path: str, payload: dict) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"error writing {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


# -- verify ------------------------------------------------------------------------


def _check(name: str, got, expected, failures: list[str]) -> None:
    if got == expected:
        print(f"{name}: ok")
    else:
        print(f"{name}: MISMATCH\n  expected: {expected}\n  got:      {got}")
        failures.append(name)


def cmd_verify(args) -> int:
    bound = _resolve_bound(args)
    jobs = _resolve_jobs(args)
    order_mode = _order_mode(args)
    catalog = full_catalog(bound, jobs=jobs, order_mode=order_mode, use_cache=False)
    failures: list[str] = []

    _check("pentagon counts", catalog.pentagon_counts(),
           {"convex": 2, "lattice": 20, "nonlattice": 31, "total": 53}, failures)

    got_convex = {fam: 0 for fam in CONVEX_FAMILY_COUNTS}
    for e in catalog.entries:
        if e.cls == "convex":
            got_convex[e.family] = got_convex.get(e.family, 0) + 1
    _check("convex family counts", got_convex, CONVEX_FAMILY_COUNTS, failures)

    report = check_no_nonconvex_quadrangle()
    _check("quadrangle long-side candidates",
           [str(x) for x in report.xi_candidates],
           [str(QuadraticRational(1, 3)), str(QuadraticRational(4, 1))], failures)
    _check("non-convex quadrangle solutions", len(report.solutions), 0, failures)

    got_orders = {o: 0 for o in LATTICE_ORDER_MULTIPLICITY}
    for e in catalog.entries:
        if e.cls == "lattice":
            got_orders[label_group(e.label)] += 1
    _check("lattice order multiplicities", got_orders,
           LATTICE_ORDER_MULTIPLICITY, failures)

    got_pairs: dict[str, int] = {}
    for e in catalog.entries:
        if e.cls == "non-lattice":
            got_pairs[label_group(e.label)] = got_pairs.get(label_group(e.label), 0) + 1
    _check("non-lattice pair multiplicities", got_pairs,
           NONLATTICE_PAIR_MULTIPLICITY, failures)

    used_t1 = {label_group(e.label).split(".")[0].rstrip("12")
               for e in catalog.entries if e.cls == "non-lattice"}
    _check("excluded first parts unused", sorted(used_t1 & EXCLUDED_T1_LABELS),
           [], failures)

    t2 = enumerate_t2_triangles(order_mode=order_mode)
    _check("triangle part sizes", {label: reg.area2 for label, reg in t2},
           {"A": 9, "B": 4, "C": 1, "D": 8, "E": 2}, failures)
    t1 = enumerate_t1_candidates(order_mode=order_mode)
    quads = [(label, reg) for label, reg in t1 if len(reg.boundary.vertices) == 4]
    _check("first-part candidate count (triangle + quadrangles)",
           (len(t1) - len(quads), len(quads)), (1, 21), failures)
    _check("first-part sizes admissible",
           sorted({reg.area2 for _, reg in t1}), [7, 8, 12, 14, 15], failures)

    bad_witness = [e.label for e in catalog.entries if not validate(e.witness)]
    _check("witness validity", bad_witness, [], failures)
    bad_class = [
        e.label for e in catalog.entries
        if classify(e.witness) != ("non-lattice" if e.cls == "non-lattice" else "lattice")
    ]
    _check("witness lattice classification", bad_class, [], failures)

    total = catalog.pentagon_counts()["total"]
    if failures:
        print(f"{total}/53 pentagons verified; FAILED: {', '.join(failures)}")
        return EXIT_NEGATIVE
    print(f"{total}/53 pentagons verified")
    return EXIT_OK


# -- render ------------------------------------------------------------------------

_SCALE = 40.0  # px per unit length
_MARGIN = 20.0
_FMT = "{:.10f}"


def _svg_points(points, minx, maxy) -> str:
    return " ".join(
        _FMT.format((x - minx) * _SCALE + _MARGIN)
        + ","
        + _FMT.format((maxy - y) * _SCALE + _MARGIN)
        for x, y in points
    )


def entry_svg(entry: dict) -> str:
    poly = Polygon.from_json(entry["polygon"], validate=False)
    placements = [Placement.from_json(p) for p in entry["witness"]["placements"]]
    pieces = [placed_polygon(pl) for pl in placements]
    pts = [(float(v.x), float(v.y)) for v in poly.vertices]
    all_pts = list(pts)
    piece_pts = []
    for piece in pieces:
        pp = [(float(v.x), float(v.y)) for v in piece.vertices]
        piece_pts.append(pp)
        all_pts.extend(pp)
    minx = min(x for x, _ in all_pts)
    maxx = max(x for x, _ in all_pts)
    miny = min(y for _, y in all_pts)
    maxy = max(y for _, y in all_pts)
    width = (maxx - minx) * _SCALE + 2 * _MARGIN
    height = (maxy - miny) * _SCALE + 2 * _MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" '
        f'height="{height:.1f}" viewBox="0 0 {width:.1f} {height:.1f}">',
        f"<!-- {entry['label']} ({entry['class']}) -->",
    ]
    for pp in piece_pts:
        out.append(
            f'<polygon class="tan" points="{_svg_points(pp, minx, maxy)}" '
            'fill="none" stroke="#555555" stroke-width="1"/>'
        )
    out.append(
        f'<polygon class="outline" points="{_svg_points(pts, minx, maxy)}" '
        'fill="none" stroke="#000000" stroke-width="3"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(args) -> int:
    try:
        with open(args.catalog, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        print(f"error reading {args.catalog}: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"{args.catalog}: malformed JSON: {exc.msg}", file=sys.stderr)
        return EXIT_USAGE
    entries = payload.get("entries")
    if not isinstance(entries, list):
        print(f"{args.catalog}: not a catalog (missing 'entries')", file=sys.stderr)
        return EXIT_USAGE
    try:
        os.makedirs(args.svg_dir, exist_ok=True)
        for entry in entries:
            name = entry["label"].replace("/", "_") + ".svg"
            with open(os.path.join(args.svg_dir, name), "w", encoding="utf-8") as fh:
                fh.write(entry_svg(entry))
    except OSError as exc:
        print(f"error writing SVG files: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"rendered {len(entries)} SVG files to {args.svg_dir}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "enumerate": cmd_enumerate,
        "solve": cmd_solve,
        "verify": cmd_verify,
        "render": cmd_render,
    }
    try:
        return handlers[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
