"""Tiling solver: decide and witness whether a region is tileable by tans.

The search is a deterministic exact cover over quarter-cells: always fill the
lexicographically smallest uncovered cell, branching over the placements that
cover it with large triangles first.  Identical pieces are handled as a
multiplicity-2 group, so each unordered solution is visited exactly once; the
two physical ids are assigned afterwards in lexicographic placement order.

solve_split handles the two-lattice case: each part is solved in its own
frame and the witness placements are mapped back to world coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import engine
from .geometry import (
    AXIS,
    DIAGONAL,
    Lattice,
    Point,
    Polygon,
    convex_inside_simple,
    convex_intersection_area,
    direction_index,
    edge_length,
    lattice_of_points,
)
from .qfield import ZERO
from .tans import (
    ALL_TAN_IDS,
    GROUP_AREA2,
    GROUP_MEMBERS,
    GROUP_RANK,
    TANS,
    CandidatePlacement,
    Placement,
    Region,
    frame_placement_to_world,
    placed_polygon,
    placements_in_region,
    polygon_to_region,
    transform_placement,
)


@dataclass(frozen=True)
class Dissection:
    """Placements of distinct tans exactly covering a target polygon."""

    target: Polygon
    placements: tuple[tuple[str, Placement], ...]  # (tan id, placement)

    def polygons(self) -> list[Polygon]:
        return [placed_polygon(pl) for _, pl in self.placements]

    def tan_ids(self) -> tuple[str, ...]:
        return tuple(tid for tid, _ in self.placements)

    def to_json(self, cls: str | None = None) -> dict:
        obj = {
            "target": self.target.to_json(),
            "placements": [pl.to_json() for _, pl in self.placements],
        }
        if cls is not None:
            obj["class"] = cls
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "Dissection":
        target = Polygon.from_json(obj["target"])
        pls = tuple(
            (d["kind"], Placement.from_json(d)) for d in obj["placements"]
        )
        return cls(target, pls)

    def transform(self, iso) -> "Dissection":
        return Dissection(
            self.target.transform(iso),
            tuple((tid, transform_placement(pl, iso)) for tid, pl in self.placements),
        )


@dataclass(frozen=True)
class SplitWitness:
    """Two-part witness: axis-lattice part and pi/4-rotated part."""

    v0: Point
    cut: tuple[Point, Point]
    t1: Dissection
    t2: Dissection

    def combined(self, target: Polygon) -> Dissection:
        return Dissection(target, self.t1.placements + self.t2.placements)

    def transform(self, iso) -> "SplitWitness":
        return SplitWitness(
            iso.apply(self.v0),
            (iso.apply(self.cut[0]), iso.apply(self.cut[1])),
            self.t1.transform(iso),
            self.t2.transform(iso),
        )


def group_counts(tan_ids) -> dict[str, int]:
    ids = list(tan_ids)
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate tan id in {ids!r}")
    counts: dict[str, int] = {}
    for tid in ids:
        group = TANS[tid].group
        counts[group] = counts.get(group, 0) + 1
    return counts


def multiset_area2(tan_ids) -> int:
    return sum(TANS[t].area2 for t in tan_ids)


def _candidate_order_key(cand: CandidatePlacement, order_mode: str):
    cells_key = tuple(sorted(cand.cells))
    if order_mode == "default":
        return (GROUP_RANK[cand.group], cells_key)
    if order_mode == "naive":
        return (cells_key, cand.group)
    raise ValueError(f"unknown order mode {order_mode!r}")


def _assign_ids(chosen: list[CandidatePlacement], tan_ids) -> list[tuple[str, CandidatePlacement]]:
    """Give physical ids to chosen placements, identical pieces in lex order."""
    available: dict[str, list[str]] = {}
    for g, members in GROUP_MEMBERS.items():
        present = [m for m in members if m in tan_ids]
        available[g] = present
    out = []
    for cand in sorted(chosen, key=lambda c: tuple(sorted(c.cells))):
        out.append((available[cand.group].pop(0), cand))
    return out


def _solve(region: Region, tan_ids, find_all: bool, order_mode: str,
           engine_override: str | None, cap: int) -> list[Dissection]:
    tan_ids = tuple(tan_ids)
    need = sum(TANS[t].quarter_cell_count for t in tan_ids)
    if len(region.cells) != need or not tan_ids:
        return []
    counts = group_counts(tan_ids)
    groups = sorted(counts, key=GROUP_RANK.get)
    cands = placements_in_region(region, groups)
    cands.sort(key=lambda c: _candidate_order_key(c, order_mode))
    cell_order = sorted(region.cells)
    bit = {c: i for i, c in enumerate(cell_order)}
    masks = []
    for cand in cands:
        m = 0
        for c in cand.cells:
            m |= 1 << bit[c]
        masks.append(m)
    gindex = {g: i for i, g in enumerate(groups)}
    group_of = [gindex[c.group] for c in cands]
    group_mult = [counts[g] for g in groups]
    rows = engine.search(
        len(cell_order), masks, group_of, group_mult, find_all,
        cap=cap, engine=engine_override,
    )
    frame = region.frame
    out = []
    for row in sorted(set(tuple(sorted(r)) for r in rows)):
        chosen = [cands[p] for p in row]
        pls = [
            (tid, frame_placement_to_world(c, tid, frame))
            for tid, c in _assign_ids(chosen, tan_ids)
        ]
        pls.sort(key=lambda item: ALL_TAN_IDS.index(item[0]))
        out.append(Dissection(region.boundary, tuple(pls)))
    return out


def tile(region: Region, tan_ids, *, order_mode: str = "default",
         engine: str | None = None) -> Dissection | None:
    """First dissection of the region by the given tans, or None."""
    found = _solve(region, tan_ids, False, order_mode, engine, cap=1)
    return found[0] if found else None


def tile_all(region: Region, tan_ids, *, order_mode: str = "default",
             engine: str | None = None, cap: int = 1 << 16) -> list[Dissection]:
    """All dissections up to permutation of identical pieces, sorted."""
    return _solve(region, tan_ids, True, order_mode, engine, cap=cap)


def validate(d: Dissection) -> bool:
    """Exact check of the dissection invariants, no rasterization shortcut."""
    ids = d.tan_ids()
    if len(set(ids)) != len(ids):
        return False
    polys = [list(p.vertices) for p in d.polygons()]
    target = list(d.target.vertices)
    total = ZERO
    for _, pl in d.placements:
        total = total + TANS[pl.kind].area() * 2
    if total != d.target.doubled_area():
        return False
    for i in range(len(polys)):
        if not convex_inside_simple(polys[i], target):
            return False
        for j in range(i + 1, len(polys)):
            if convex_intersection_area(polys[i], polys[j]) != ZERO:
                return False
    return True


def classify(d: Dissection) -> str:
    """"lattice" iff all placed tans induce one and the same lattice."""
    lattices = set()
    for _, pl in d.placements:
        parity = DIAGONAL if pl.rot % 2 else AXIS
        lat = lattice_of_points(placed_polygon(pl).vertices, parity)
        assert lat is not None, "an octilinear placement always induces a lattice"
        lattices.add(lat)
    return "lattice" if len(lattices) == 1 else "non-lattice"


def detect_frame(poly: Polygon) -> Lattice | None:
    """Lattice through the polygon's vertices, trying axis parity first."""
    for parity in (AXIS, DIAGONAL):
        lat = lattice_of_points(poly.vertices, parity)
        if lat is not None:
            return lat
    return None


def _partitions_for(area2_t1: int):
    """Sub-multiset splits (counts per group for part 1), larges-first order."""
    ranges = {g: range(len(GROUP_MEMBERS[g]) + 1) for g in GROUP_MEMBERS}
    order = sorted(GROUP_MEMBERS, key=GROUP_RANK.get)
    parts = []
    for combo in product(*(ranges[g] for g in order)):
        take = dict(zip(order, combo))
        if sum(GROUP_AREA2[g] * n for g, n in take.items()) == area2_t1:
            parts.append(take)
    parts.sort(key=lambda take: tuple(-take[g] for g in order))
    return parts


def _ids_for_take(take: dict[str, int]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    first: list[str] = []
    second: list[str] = []
    for g, members in GROUP_MEMBERS.items():
        n = take.get(g, 0)
        first.extend(members[:n])
        second.extend(members[n:])
    return tuple(first), tuple(second)


def _shared_cut(t1: Polygon, t2: Polygon, v0: Point) -> tuple[Point, Point] | None:
    """The overlapping collinear boundary segment of the two parts at v0."""
    def rays(poly: Polygon):
        n = len(poly.vertices)
        for i, v in enumerate(poly.vertices):
            if v == v0:
                yield poly.vertices[(i + 1) % n]
                yield poly.vertices[(i - 1) % n]

    for a in rays(t1):
        da = direction_index(a - v0)
        for b in rays(t2):
            if direction_index(b - v0) != da:
                continue
            la = edge_length(a - v0, da)
            lb = edge_length(b - v0, da)
            return (v0, a if la <= lb else b)
    return None


def solve_split(t1_poly: Polygon, t2_poly: Polygon, v0: Point, *,
                order_mode: str = "default",
                engine: str | None = None) -> SplitWitness | None:
    """Simultaneous tiling of the two parts by a partition of all seven tans.

    Part lattices must exist and differ by a pi/4 rotation; all partitions of
    the tan multiset with matching exact areas are tried, preferring the large
    triangles in the first part.
    """
    a1 = t1_poly.doubled_area()
    a2 = t2_poly.doubled_area()
    if a1 + a2 != 16 or not a1.is_integer():
        return None
    lat1 = detect_frame(t1_poly)
    lat2 = detect_frame(t2_poly)
    if lat1 is None or lat2 is None or lat1.parity == lat2.parity:
        return None
    r1 = polygon_to_region(t1_poly, lat1)
    r2 = polygon_to_region(t2_poly, lat2)
    if r1 is None or r2 is None:
        return None
    cut = _shared_cut(t1_poly, t2_poly, v0)
    if cut is None:
        return None
    for take in _partitions_for(a1.as_integer()):
        ids1, ids2 = _ids_for_take(take)
        d1 = tile(r1, ids1, order_mode=order_mode, engine=engine)
        if d1 is None:
            continue
        d2 = tile(r2, ids2, order_mode=order_mode, engine=engine)
        if d2 is None:
            continue
        return SplitWitness(v0, cut, d1, d2)
    return None
