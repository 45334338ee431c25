"""Enumeration pipelines for the tangram catalog.

Candidates are generated on the integer lattice: an angle order fixes the
edge directions up to the first side's parity (axis or diagonal), so closing
the polygon is a 2x2 integer linear system once all but the last two side
lengths are chosen.  Side parameters are scanned up to a bound (default 16:
a lattice polygon of area 8 contains, for any side, a triangle of height at
least the lattice line spacing over that side, which caps the side length).

Every surviving candidate is checked with the exact-cover solver; non-convex
non-lattice pentagons are assembled by gluing an axis-lattice part to a
pi/4-rotated triangle and solving both parts simultaneously.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product

from .geometry import (
    AXIS,
    ORIGIN,
    STEPS,
    GeometryError,
    Isometry,
    Point,
    Polygon,
    canonicalize,
    cross,
    direction_index,
    edge_length,
    lattice_of_points,
    on_segment,
    orient,
    point,
)
from .qfield import SQRT2, QuadraticRational
from .solver import (
    Dissection,
    SplitWitness,
    detect_frame,
    solve_split,
    tile,
)
from .tans import ALL_TAN_IDS, GROUP_AREA2, GROUP_MEMBERS, Region, polygon_to_region
from .tans import UNIT_AXIS_LATTICE

Q = QuadraticRational

DEFAULT_BOUND = 16

# label-group multiplicities of the non-convex lattice pentagons, by angle order
LATTICE_ORDER_MULTIPLICITY = {
    "53121": 1, "53112": 1, "52311": 1, "52131": 2, "51321": 4, "52221": 1,
    "63111": 1, "61311": 3, "62211": 1, "62121": 1, "61221": 1, "72111": 2,
    "71211": 1, "53211": 0, "52212": 0, "62112": 0,
}

# pair-label multiplicities of the non-lattice pentagons
NONLATTICE_PAIR_MULTIPLICITY = {
    "D1.D2": 2, "F.D1": 2, "G.B": 2, "J.C": 2, "K.D1": 2, "L.D2": 2, "M.B": 2,
    "P.D1": 6, "Q.B": 2, "R.C": 2, "T.A": 4, "V.D1": 2, "W.D2": 1,
}

CONVEX_FAMILY_COUNTS = {
    "triangle": 1, "quadrangle": 6, "pentagon": 2, "hexagon": 4,
    "heptagon": 0, "octagon": 0,
}

EXCLUDED_T1_LABELS = frozenset("HINOSUXYZ")

_FAMILY_BY_N = {3: "triangle", 4: "quadrangle", 5: "pentagon", 6: "hexagon",
                7: "heptagon", 8: "octagon"}


# -- angle orders ----------------------------------------------------------------


def canonical_angle_order(codes) -> str:
    """Canonical representative of a cyclic code sequence, up to reversal.

    The representative is the lexicographically largest rotation of either
    traversal direction, e.g. 52131 rather than 51312.
    """
    lst = list(codes)
    best = ""
    for seq in (lst, lst[::-1]):
        for s in range(len(seq)):
            cand = "".join(str(c) for c in seq[s:] + seq[:s])
            if cand > best:
                best = cand
    return best


def _code_multisets(n: int, total: int, choices) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix, remaining, last):
        if len(prefix) == n:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for c in choices:
            if c > last or c > remaining:
                continue
            rec(prefix + [c], remaining - c, c)

    rec([], total, max(choices))
    return out


def _orders_from_multiset(ms) -> set[str]:
    return {canonical_angle_order(p) for p in set(permutations(ms))}


def convex_angle_orders(n: int) -> list[str]:
    """Canonical convex angle orders for an octilinear n-gon (codes 1..3)."""
    orders: set[str] = set()
    for ms in _code_multisets(n, 4 * n - 8, (1, 2, 3)):
        orders |= _orders_from_multiset(ms)
    return sorted(orders, reverse=True)


def angle_orders_pentagon() -> list[str]:
    """All angle orders of a one-reflex octilinear pentagon, up to symmetry."""
    orders: set[str] = set()
    for reflex in (5, 6, 7):
        for ms in _code_multisets(4, 12 - reflex, (1, 2, 3)):
            orders |= _orders_from_multiset((reflex,) + ms)
    return sorted(orders, reverse=True)


# -- closed polygon scan -----------------------------------------------------------


def _closed_lattice_polygons(order: tuple[int, ...], first_dir: int, bound: int,
                             max_area2: int):
    """Integer-vertex polygons realizing the angle order, one per side choice.

    Yields (vertices, doubled_area) with vertices CCW starting at the origin.
    Sides n-2 and n-1 are solved from the closure equations (consecutive side
    directions are never parallel here, so they are always independent).  For
    convex orders, partial shoelace sums grow monotonically, which prunes the
    scan of the free sides.
    """
    n = len(order)
    dirs = [first_dir]
    for i in range(1, n):
        dirs.append((dirs[-1] + 4 - order[i]) % 8)
    steps = [STEPS[d] for d in dirs]
    sa, sb = steps[n - 2], steps[n - 1]
    det = sa[0] * sb[1] - sa[1] * sb[0]
    assert det != 0, "consecutive octilinear sides cannot be parallel"
    convex = all(k <= 3 for k in order)
    lengths = [0] * n
    results = []

    def finish(x: int, y: int):
        # closure: lengths[n-2]*sa + lengths[n-1]*sb = -(x, y)
        na = -x * sb[1] + y * sb[0]
        nb = x * sa[1] - y * sa[0]
        if na % det or nb % det:
            return
        ta, tb = na // det, nb // det
        if ta < 1 or tb < 1:
            return
        lengths[n - 2], lengths[n - 1] = ta, tb
        verts = [(0, 0)]
        for i in range(n - 1):
            px, py = verts[-1]
            verts.append((px + lengths[i] * steps[i][0], py + lengths[i] * steps[i][1]))
        area2 = 0
        for i in range(n):
            px, py = verts[i]
            qx, qy = verts[(i + 1) % n]
            area2 += px * qy - py * qx
        if area2 > 0:
            results.append((list(verts), area2))

    def rec(i: int, x: int, y: int, partial2: int):
        if i == n - 2:
            finish(x, y)
            return
        sx, sy = steps[i]
        coeff = x * sy - y * sx  # shoelace contribution per unit length
        if convex and coeff < 0:
            return  # no convex completion keeps the origin on the left
        for t in range(1, bound + 1):
            p2 = partial2 + t * coeff
            if convex and p2 > max_area2:
                break
            lengths[i] = t
            rec(i + 1, x + t * sx, y + t * sy, p2)

    rec(0, 0, 0, 0)
    return results


def _int_polygon(verts) -> Polygon:
    return Polygon([point(x, y) for x, y in verts], validate=False)


def scan_polygons(orders, bound: int, area2_targets: set[int], *,
                  require_reflex: int | None = None):
    """Distinct (by congruence) simple polygons for the given angle orders.

    Returns a list of (order_string, key, polygon) sorted deterministically.
    """
    seen: dict[bytes, tuple[str, Polygon]] = {}
    max_area2 = max(area2_targets)
    for order_str in orders:
        order = tuple(int(c) for c in order_str)
        for first_dir in (0, 1):
            for verts, area2 in _closed_lattice_polygons(order, first_dir, bound, max_area2):
                if area2 not in area2_targets:
                    continue
                try:
                    poly = Polygon([point(x, y) for x, y in verts])
                except GeometryError:
                    continue
                if len(poly) != len(order):
                    continue  # a straight vertex slipped in; not this order
                if require_reflex is not None and len(poly.reflex_indices()) != require_reflex:
                    continue
                key = canonicalize(poly)[0]
                if key not in seen:
                    seen[key] = (order_str, poly)
    return sorted(
        ((order_str, key, poly) for key, (order_str, poly) in seen.items()),
        key=lambda item: (item[0], item[1]),
    )


def _pmap(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# -- catalog records ---------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    family: str  # triangle | quadrangle | pentagon | hexagon
    cls: str  # convex | lattice | non-lattice
    polygon: Polygon  # canonical pose
    key: bytes
    witness: Dissection  # canonical pose coordinates
    split: SplitWitness | None = None

    def angle_order(self) -> str:
        return canonical_angle_order(self.polygon.angle_codes())

    def to_json(self) -> dict:
        obj = {
            "label": self.label,
            "family": self.family,
            "class": self.cls,
            "key": self.key.decode("ascii"),
            "polygon": self.polygon.to_json(),
            "witness": self.witness.to_json(
                "non-lattice" if self.cls == "non-lattice" else "lattice"
            ),
        }
        if self.split is not None:
            obj["split"] = {
                "v0": [list(self.split.v0.x.to_ints()), list(self.split.v0.y.to_ints())],
                "cut": [
                    [list(p.x.to_ints()), list(p.y.to_ints())] for p in self.split.cut
                ],
                "t1": self.split.t1.to_json(),
                "t2": self.split.t2.to_json(),
            }
        return obj


def _entry(label: str, family: str, cls: str, poly: Polygon,
           witness: Dissection, split: SplitWitness | None = None) -> CatalogEntry:
    key, pose, iso = canonicalize(poly)
    moved = witness.transform(iso)
    return CatalogEntry(
        label, family, cls, pose, key,
        Dissection(pose, moved.placements),
        split.transform(iso) if split is not None else None,
    )


def label_group(label: str) -> str:
    """Label with any trailing member letter stripped: '52131.a' -> '52131'."""
    parts = label.split(".")
    if len(parts) > 1 and parts[-1].isalpha() and parts[-1].islower():
        return ".".join(parts[:-1])
    return label


def _letter(i: int) -> str:
    # a..z, then aa, ab, ... (never needed in practice beyond f)
    out = ""
    i0 = i
    while True:
        out = chr(ord("a") + i0 % 26) + out
        i0 = i0 // 26 - 1
        if i0 < 0:
            return out


def _label_groups(tagged) -> list[tuple[str, object]]:
    """Assign letters within label groups, ordered by canonical key."""
    groups: dict[str, list] = {}
    for tag, key, payload in tagged:
        groups.setdefault(tag, []).append((key, payload))
    out = []
    for tag in sorted(groups):
        members = sorted(groups[tag], key=lambda kp: kp[0])
        for i, (_, payload) in enumerate(members):
            label = tag if len(members) == 1 else f"{tag}.{_letter(i)}"
            out.append((label, payload))
    return out


# -- lattice pipelines ---------------------------------------------------------------


def _axis_region(poly: Polygon) -> Region:
    region = polygon_to_region(poly, UNIT_AXIS_LATTICE)
    assert region is not None, "scan polygons are lattice-aligned by construction"
    return region


def enumerate_lattice_pentagons(bound: int = DEFAULT_BOUND, *, jobs: int = 1,
                                order_mode: str = "default",
                                engine: str | None = None) -> list[CatalogEntry]:
    """All non-convex pentagonal lattice tangrams, labeled by angle order."""
    candidates = scan_polygons(
        angle_orders_pentagon(), bound, {16}, require_reflex=1
    )
    witnesses = _pmap(
        lambda c: tile(_axis_region(c[2]), ALL_TAN_IDS,
                       order_mode=order_mode, engine=engine),
        candidates, jobs,
    )
    tagged = [
        (order_str, key, (poly, w))
        for (order_str, key, poly), w in zip(candidates, witnesses)
        if w is not None
    ]
    return [
        _entry(label, "pentagon", "lattice", poly, w)
        for label, (poly, w) in _label_groups(tagged)
    ]


def enumerate_convex(bound: int = DEFAULT_BOUND, *, jobs: int = 1,
                     order_mode: str = "default",
                     engine: str | None = None) -> list[CatalogEntry]:
    """All convex tangrams (area 8, any vertex count 3..8)."""
    entries: list[CatalogEntry] = []
    for n in range(3, 9):
        candidates = scan_polygons(convex_angle_orders(n), bound, {16})
        witnesses = _pmap(
            lambda c: tile(_axis_region(c[2]), ALL_TAN_IDS,
                           order_mode=order_mode, engine=engine),
            candidates, jobs,
        )
        family = _FAMILY_BY_N[n]
        tagged = [
            (f"convex-{family}", key, (poly, w))
            for (_, key, poly), w in zip(candidates, witnesses)
            if w is not None
        ]
        entries.extend(
            _entry(label, family, "convex", poly, w)
            for label, (poly, w) in _label_groups(tagged)
        )
    return entries


# -- the quadrangle nonexistence check (exact interval arithmetic) -------------------


@dataclass(frozen=True)
class QuadrangleReport:
    """Outcome of the exhaustive non-convex quadrangle check."""

    xi_candidates: tuple[QuadraticRational, ...]
    eta_trials: tuple[tuple[QuadraticRational, tuple[QuadraticRational, ...]], ...]
    solutions: tuple[tuple[QuadraticRational, QuadraticRational], ...]

    @property
    def no_solutions(self) -> bool:
        return not self.solutions


def check_no_nonconvex_quadrangle() -> QuadrangleReport:
    """Exhaustive check that no non-convex quadrangle has area 8.

    A one-reflex octilinear quadrangle has angles pi/4, pi/4, pi/4, 5pi/4; its
    two long sides xi >= eta > xi/sqrt(2) satisfy
    16 = xi^2/2 + (eta - xi/sqrt(2))^2, and both are of the form k + l*sqrt(2)
    with nonnegative integers k, l.  The admissible interval
    sqrt(8*(2+sqrt(2))) <= xi < 4*sqrt(2) leaves finitely many xi, none of
    which admits an eta.
    """
    lo_sq = Q(16, 8)  # (lower bound)^2 = 8*(2+sqrt(2)) = 16 + 8*sqrt(2)
    hi = 4 * SQRT2
    xi_candidates = []
    for k in range(0, 9):
        for l in range(0, 5):
            xi = Q(k, l)
            if xi.sign() <= 0:
                continue
            if (xi * xi - lo_sq).sign() >= 0 and (xi - hi).sign() < 0:
                xi_candidates.append(xi)
    xi_candidates.sort()
    trials = []
    solutions = []
    for xi in xi_candidates:
        half_diag = xi * SQRT2 / 2  # xi / sqrt(2)
        etas = []
        for k in range(0, 9):
            for l in range(0, 5):
                eta = Q(k, l)
                if (xi - eta).sign() < 0 or (eta - half_diag).sign() <= 0:
                    continue
                etas.append(eta)
                rest = eta - half_diag
                if xi * xi / 2 + rest * rest == Q(16):
                    solutions.append((xi, eta))
        trials.append((xi, tuple(sorted(etas))))
    return QuadrangleReport(tuple(xi_candidates), tuple(trials), tuple(solutions))


# -- part candidates for the two-lattice construction --------------------------------

_PART_SHAPES: dict[str, tuple[tuple[int, int], ...]] = {
    # triangles of area < 8 (doubled areas 9, 4, 1, 8, 2)
    "A": ((0, 0), (3, 0), (0, 3)),
    "B": ((0, 0), (2, 0), (0, 2)),
    "C": ((0, 0), (1, 0), (0, 1)),
    "D": ((0, 0), (4, 0), (2, 2)),
    "E": ((0, 0), (2, 0), (1, 1)),
    # convex quadrangles of doubled area 7, 8, 12, 14 or 15
    "F": ((0, 0), (5, 0), (4, 1), (1, 1)),
    "G": ((0, 0), (5, 0), (3, 2), (2, 2)),
    "H": ((0, 1), (1, 0), (3, 0), (0, 3)),
    "I": ((0, 2), (2, 0), (4, 0), (0, 4)),
    "J": ((0, 1), (1, 0), (4, 0), (0, 4)),
    "K": ((0, 0), (4, 0), (5, 1), (1, 1)),
    "L": ((0, 0), (2, 0), (4, 2), (2, 2)),
    "M": ((0, 0), (3, 0), (5, 2), (2, 2)),
    "N": ((0, 0), (2, 0), (5, 3), (3, 3)),
    "O": ((0, 0), (4, 0), (3, 1), (0, 1)),
    "P": ((0, 0), (3, 0), (1, 2), (0, 2)),
    "Q": ((0, 0), (4, 0), (2, 2), (0, 2)),
    "R": ((0, 0), (4, 0), (1, 3), (0, 3)),
    "S": ((0, 0), (2, 0), (5, 3), (4, 4)),
    "T": ((0, 0), (3, 0), (1, 2), (0, 1)),
    "U": ((0, 0), (4, 0), (1, 3), (0, 2)),
    "V": ((0, 0), (4, 0), (4, 1), (0, 1)),
    "W": ((0, 0), (2, 0), (2, 2), (0, 2)),
    "X": ((0, 0), (3, 0), (3, 2), (0, 2)),
    "Y": ((1, 0), (3, 2), (2, 3), (0, 1)),
    "Z": ((1, 0), (4, 3), (3, 4), (0, 1)),
}

_PART_AREA2 = {7: None, 8: None, 12: None, 14: None, 15: None}  # admissible T1 sizes
T1_AREA2_SET = frozenset(_PART_AREA2)


def _part_label_index() -> dict[bytes, str]:
    return {
        canonicalize(_int_polygon(verts))[0]: label
        for label, verts in _PART_SHAPES.items()
    }


def sub_multisets_for_area2(area2: int) -> list[tuple[str, ...]]:
    """Tan sub-multisets (as id tuples) with the given doubled area."""
    order = list(GROUP_MEMBERS)
    out = []
    for combo in product(*(range(len(GROUP_MEMBERS[g]) + 1) for g in order)):
        if sum(GROUP_AREA2[g] * c for g, c in zip(order, combo)) != area2:
            continue
        ids = []
        for g, c in zip(order, combo):
            ids.extend(GROUP_MEMBERS[g][:c])
        if ids:
            out.append(tuple(ids))
    return out


def _tileable_by_sub_multiset(region: Region, *, order_mode: str = "default",
                              engine: str | None = None) -> bool:
    for ids in sub_multisets_for_area2(region.area2):
        if tile(region, ids, order_mode=order_mode, engine=engine) is not None:
            return True
    return False


def enumerate_t2_triangles(*, order_mode: str = "default",
                           engine: str | None = None) -> list[tuple[str, Region]]:
    """Triangles of area < 8 that some tan sub-multiset tiles, labeled A..E."""
    labels = _part_label_index()
    out = []
    for _, key, poly in scan_polygons(convex_angle_orders(3), DEFAULT_BOUND,
                                      set(range(1, 16))):
        region = _axis_region(poly)
        if not _tileable_by_sub_multiset(region, order_mode=order_mode, engine=engine):
            continue
        out.append((labels[key], region))
    out.sort(key=lambda item: item[0])
    return out


def enumerate_t1_candidates(*, order_mode: str = "default",
                            engine: str | None = None) -> list[tuple[str, Region]]:
    """Axis-lattice part candidates: the one admissible triangle plus the
    convex quadrangles of doubled area 7, 8, 12, 14 or 15 that some tan
    sub-multiset tiles, labeled by the standard letters."""
    labels = _part_label_index()
    out = []
    for orders in (convex_angle_orders(3), convex_angle_orders(4)):
        for _, key, poly in scan_polygons(orders, DEFAULT_BOUND, set(T1_AREA2_SET)):
            region = _axis_region(poly)
            if not _tileable_by_sub_multiset(region, order_mode=order_mode,
                                             engine=engine):
                continue
            out.append((labels[key], region))
    out.sort(key=lambda item: item[0])
    return out


# -- gluing ----------------------------------------------------------------------------


@dataclass(frozen=True)
class GlueResult:
    pentagon: Polygon
    t2_placed: Polygon
    v0: Point


def _side_flags(poly: Polygon):
    """(vertex, neighbor) pairs: each side seen from each of its endpoints."""
    n = len(poly.vertices)
    for i in range(n):
        yield poly.vertices[i], poly.vertices[(i + 1) % n]
        yield poly.vertices[i], poly.vertices[(i - 1) % n]


def _strict_side(vertices, a: Point, b: Point) -> int:
    """Which side of line ab a convex polygon lies on: +1, -1, or 0 if split."""
    pos = neg = False
    for p in vertices:
        s = orient(a, b, p)
        if s > 0:
            pos = True
        elif s < 0:
            neg = True
    if pos and neg:
        return 0
    return 1 if pos else (-1 if neg else 0)


def _union_cycle(t1: Polygon, t2: Polygon, a: Point, pmin: Point) -> list[Point] | None:
    """Boundary of t1 union t2, where they overlap exactly along segment [a, pmin]."""
    directed: dict[tuple[Point, Point], None] = {}
    for poly in (t1, t2):
        vs = poly.vertices
        n = len(vs)
        for i in range(n):
            p, q = vs[i], vs[(i + 1) % n]
            mid = [x for x in (a, pmin) if x != p and x != q and on_segment(x, p, q)]
            pts = [p] + mid + [q]
            for k in range(len(pts) - 1):
                e = (pts[k], pts[k + 1])
                rev = (pts[k + 1], pts[k])
                if rev in directed:
                    del directed[rev]  # interior edge traversed both ways
                else:
                    directed[e] = None
    succ: dict[Point, Point] = {}
    for p, q in directed:
        if p in succ:
            return None  # non-manifold contact
        succ[p] = q
    if not succ:
        return None
    start = next(iter(succ))
    cycle = [start]
    cur = succ[start]
    while cur != start:
        cycle.append(cur)
        nxt = succ.get(cur)
        if nxt is None or len(cycle) > len(succ):
            return None
        cur = nxt
    if len(cycle) != len(succ):
        return None  # disconnected boundary
    return cycle


def glue(t1: Polygon, t2_shape: Polygon) -> list[GlueResult]:
    """All pentagons formed by attaching a pi/4-rotated copy of t2_shape to t1.

    The copy shares exactly one vertex v0 with t1, a side of each runs along
    the same ray from v0 with the two interiors on opposite sides, and the
    union (after merging any straight vertex) is a simple pentagon with
    exactly one reflex vertex.
    """
    results: list[GlueResult] = []
    seen: set[tuple] = set()
    t1_vertex_set = set(t1.vertices)
    for a, nb1 in _side_flags(t1):
        u = direction_index(nb1 - a)
        l1 = edge_length(nb1 - a, u)
        for refl in (False, True):
            shape = t2_shape if not refl else t2_shape.transform(
                Isometry(0, True, ORIGIN))
            for b, nb2 in _side_flags(shape):
                w = direction_index(nb2 - b)
                r = (u - w) % 8
                if r % 2 == 0:
                    continue
                rot_b = Isometry(r, False, ORIGIN).apply(b)
                iso = Isometry(r, False, a - rot_b)
                placed = shape.transform(iso)
                sig = tuple(sorted((v.x, v.y) for v in placed.vertices))
                if sig in seen:
                    continue
                seen.add(sig)
                end2 = iso.apply(nb2)
                l2 = edge_length(end2 - a, u)
                if l1 == l2:
                    continue  # the parts would share two vertices
                if set(placed.vertices) & t1_vertex_set != {a}:
                    continue
                s1 = _strict_side(t1.vertices, a, nb1)
                s2 = _strict_side(placed.vertices, a, nb1)
                if s1 == 0 or s2 == 0 or s1 == s2:
                    continue  # not on opposite sides of the glue line
                pmin = nb1 if (l1 - l2).sign() < 0 else end2
                cycle = _union_cycle(t1, placed, a, pmin)
                if cycle is None:
                    continue
                try:
                    pent = Polygon(cycle, merge_straight=True)
                except GeometryError:
                    continue
                if len(pent) != 5 or len(pent.reflex_indices()) != 1:
                    continue
                results.append(GlueResult(pent, placed, a))
    return results


def enumerate_nonlattice_pentagons(*, jobs: int = 1, order_mode: str = "default",
                                   engine: str | None = None) -> list[CatalogEntry]:
    """All non-convex non-lattice pentagonal tangrams, labeled by part pair."""
    t1s = enumerate_t1_candidates(order_mode=order_mode, engine=engine)
    t2s = enumerate_t2_triangles(order_mode=order_mode, engine=engine)
    jobs_list = []
    for l1, r1 in t1s:
        for l2, r2 in t2s:
            if r1.area2 + r2.area2 != 16:
                continue
            for g in glue(r1.boundary, r2.boundary):
                jobs_list.append((l1, l2, r1, g))
    # deduplicate congruent pentagons within a pair before solving; across
    # pairs a congruent pentagon must be retried (solvability is pair-specific)
    filtered = []
    per_pair_seen: set[tuple[str, str, bytes]] = set()
    for l1, l2, r1, g in jobs_list:
        key = canonicalize(g.pentagon)[0]
        tag = (l1, l2, key)
        if tag in per_pair_seen:
            continue
        per_pair_seen.add(tag)
        filtered.append((l1, l2, r1, g, key))

    def attempt(item):
        l1, l2, r1, g, key = item
        return solve_split(r1.boundary, g.t2_placed, g.v0,
                           order_mode=order_mode, engine=engine)

    witnesses = _pmap(attempt, filtered, jobs)
    success: dict[bytes, tuple[str, GlueResult, SplitWitness]] = {}
    larges = set(GROUP_MEMBERS["large"])
    for (l1, l2, r1, g, key), w in zip(filtered, witnesses):
        if w is None or key in success:
            continue
        base1 = l1 if l1 != "D" else ("D1" if set(w.t1.tan_ids()) == larges else "D2")
        base2 = l2 if l2 != "D" else ("D1" if set(w.t2.tan_ids()) == larges else "D2")
        success[key] = (f"{base1}.{base2}", g, w)
    tagged = [
        (pair, key, (g.pentagon, w))
        for key, (pair, g, w) in success.items()
    ]
    return [
        _entry(label, "pentagon", "non-lattice", pent, w.combined(pent), w)
        for label, (pent, w) in _label_groups(tagged)
    ]


# -- assembled catalog --------------------------------------------------------------


@dataclass(frozen=True)
class Catalog:
    entries: tuple[CatalogEntry, ...]

    def by_class(self, family: str, cls: str) -> list[CatalogEntry]:
        return [e for e in self.entries if e.family == family and e.cls == cls]

    def pentagon_counts(self) -> dict[str, int]:
        counts = {
            "convex": len(self.by_class("pentagon", "convex")),
            "lattice": len(self.by_class("pentagon", "lattice")),
            "nonlattice": len(self.by_class("pentagon", "non-lattice")),
        }
        counts["total"] = sum(counts.values())
        return counts

    def summary(self) -> dict:
        return {
            "triangles": len([e for e in self.entries if e.family == "triangle"]),
            "quadrangles": len([e for e in self.entries if e.family == "quadrangle"]),
            "convex_total": len([e for e in self.entries if e.cls == "convex"]),
            "pentagons": self.pentagon_counts(),
        }

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "summary": self.summary(),
        }


_FAMILY_RANK = {"triangle": 0, "quadrangle": 1, "pentagon": 2, "hexagon": 3}
_CLS_RANK = {"convex": 0, "lattice": 1, "non-lattice": 2}

_catalog_cache: dict[tuple, Catalog] = {}


def full_catalog(bound: int = DEFAULT_BOUND, *, jobs: int = 1,
                 order_mode: str = "default", engine: str | None = None,
                 use_cache: bool = True) -> Catalog:
    """The assembled catalog: all convex tangrams plus all tangram pentagons.

    Cross-class duplicates are resolved with precedence
    convex > lattice > non-lattice (none are expected, and the acceptance
    suite verifies the classes are disjoint).
    """
    cache_key = (bound, order_mode, engine)
    if use_cache and cache_key in _catalog_cache:
        return _catalog_cache[cache_key]
    entries: list[CatalogEntry] = []
    entries.extend(enumerate_convex(bound, jobs=jobs, order_mode=order_mode,
                                    engine=engine))
    entries.extend(enumerate_lattice_pentagons(bound, jobs=jobs,
                                               order_mode=order_mode, engine=engine))
    entries.extend(enumerate_nonlattice_pentagons(jobs=jobs, order_mode=order_mode,
                                                  engine=engine))
    entries.sort(key=lambda e: (_FAMILY_RANK.get(e.family, 9), _CLS_RANK[e.cls], e.key))
    deduped: list[CatalogEntry] = []
    seen: set[bytes] = set()
    for e in entries:  # precedence follows the class sort
        if e.key in seen:
            continue
        seen.add(e.key)
        deduped.append(e)
    catalog = Catalog(tuple(deduped))
    if use_cache:
        _catalog_cache[cache_key] = catalog
    return catalog


# -- single-polygon solving -----------------------------------------------------------


def _ray_exit(poly: Polygon, start_idx: int, ray_dir: int) -> Point | None:
    """First boundary point hit by the ray from a vertex into the interior."""
    vs = poly.vertices
    n = len(vs)
    origin = vs[start_idx]
    ux, uy = STEPS[ray_dir]
    u = point(ux, uy)
    best_t = None
    best_pt = None
    for i in range(n):
        if i == start_idx or (i + 1) % n == start_idx:
            continue  # sides at the vertex itself cannot be the exit
        p, q = vs[i], vs[(i + 1) % n]
        d = q - p
        denom = cross(u, d)
        candidates = []
        if denom.sign() == 0:
            if orient(origin, Point(origin.x + u.x, origin.y + u.y), p) == 0:
                candidates = [p, q]
        else:
            # origin + t*u = p + s*d
            diff = p - origin
            t = cross(diff, d) / denom
            s = cross(diff, u) / denom
            if t.sign() > 0 and s.sign() >= 0 and (s - 1).sign() <= 0:
                candidates = [Point(origin.x + u.x * t, origin.y + u.y * t)]
        for c in candidates:
            dx, dy = c.x - origin.x, c.y - origin.y
            t = dx / u.x if u.x.sign() != 0 else dy / u.y
            if t.sign() <= 0:
                continue
            if best_t is None or (t - best_t).sign() < 0:
                best_t, best_pt = t, c
    return best_pt


def _split_at(poly: Polygon, reflex_idx: int, w: Point) -> tuple[Polygon, Polygon] | None:
    vs = list(poly.vertices)
    n = len(vs)
    if w in vs:
        wi = vs.index(w)
        ring = vs
    else:
        wi = None
        for i in range(n):
            if on_segment(w, vs[i], vs[(i + 1) % n]) and w != vs[i] and w != vs[(i + 1) % n]:
                ring = vs[: i + 1] + [w] + vs[i + 1:]
                wi = i + 1
                break
        if wi is None:
            return None
    m = len(ring)
    ri = ring.index(poly.vertices[reflex_idx])
    chain_a = []
    i = ri
    while True:
        chain_a.append(ring[i])
        if i == wi:
            break
        i = (i + 1) % m
    chain_b = []
    i = wi
    while True:
        chain_b.append(ring[i])
        if i == ri:
            break
        i = (i + 1) % m
    try:
        pa = Polygon(chain_a, merge_straight=True)
        pb = Polygon(chain_b, merge_straight=True)
    except GeometryError:
        return None
    return pa, pb


def solve_pentagon(poly: Polygon, *, order_mode: str = "default",
                   engine: str | None = None) -> tuple[str, Dissection] | None:
    """Decide whether a simple pentagon is a tangram; return class and witness.

    Tries the single-lattice route first (the whole polygon rasterized in the
    lattice of its vertices), then every cut along a side line through the
    reflex vertex with a simultaneous two-part solve.
    """
    if poly.doubled_area() != Q(16):
        return None
    frame = detect_frame(poly)
    if frame is not None:
        region = polygon_to_region(poly, frame)
        if region is not None:
            d = tile(region, ALL_TAN_IDS, order_mode=order_mode, engine=engine)
            if d is not None:
                return ("lattice", d)
    reflex = poly.reflex_indices()
    if len(reflex) != 1:
        return None
    rv = reflex[0]
    dirs = poly.edge_dirs()
    n = len(poly.vertices)
    d_out = dirs[rv]
    d_in = dirs[(rv - 1) % n]
    for ray_dir in (d_in, (d_out + 4) % 8):
        w = _ray_exit(poly, rv, ray_dir)
        if w is None:
            continue
        parts = _split_at(poly, rv, w)
        if parts is None:
            continue
        pa, pb = parts
        if not pa.is_convex() or not pb.is_convex():
            continue
        common = set(pa.vertices) & set(pb.vertices)
        if len(common) != 1:
            continue
        v0 = common.pop()
        lat_a = detect_frame(pa)
        if lat_a is None:
            continue
        first, second = (pa, pb) if lat_a.parity == AXIS else (pb, pa)
        witness = solve_split(first, second, v0, order_mode=order_mode, engine=engine)
        if witness is not None:
            return ("non-lattice", witness.combined(poly))
    return None
