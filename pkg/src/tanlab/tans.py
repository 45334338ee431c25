"""The seven tans, placements, and quarter-cell rasterization.

A placement is (kind, rotation in eighth-turns, reflection flag, translation).
Within a lattice frame, a placement is alignable iff every transformed vertex
is a lattice point; odd rotations are never alignable, which is what forces
the two-lattice split construction for the non-lattice figures.

The solver's atomic unit is the quarter-cell: one of the four triangles cut
from a unit lattice square by both diagonals.  Any octilinear polygon with
lattice vertices is an exact union of quarter-cells, so rasterization is
lossless.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .geometry import (
    AXIS,
    ORIGIN,
    Isometry,
    Lattice,
    Point,
    Polygon,
    point,
)
from .qfield import QuadraticRational

# quadrant codes: index into _QUAD_NAMES; S is the triangle on the bottom edge
QUAD_S, QUAD_E, QUAD_N, QUAD_W = range(4)
QUAD_NAMES = "SENW"

_HALF = Fraction(1, 2)
_SIXTH = Fraction(1, 6)


class QuarterCell(NamedTuple):
    i: int
    j: int
    quad: int

    def __repr__(self) -> str:
        return f"({self.i},{self.j},{QUAD_NAMES[self.quad]})"


@dataclass(frozen=True)
class TanKind:
    id: str
    group: str
    ref: tuple[tuple[int, int], ...]  # reference pose, CCW, lattice coordinates
    area2: int  # doubled area

    @property
    def quarter_cell_count(self) -> int:
        return 2 * self.area2

    def area(self) -> QuadraticRational:
        return QuadraticRational(Fraction(self.area2, 2))

    def ref_polygon(self) -> Polygon:
        return Polygon([point(x, y) for x, y in self.ref], validate=False)


_SMALL_REF = ((0, 0), (1, 0), (0, 1))
_MEDIUM_REF = ((0, 0), (2, 0), (1, 1))
_LARGE_REF = ((0, 0), (2, 0), (0, 2))
_SQUARE_REF = ((0, 0), (1, 0), (1, 1), (0, 1))
_PARA_REF = ((0, 0), (1, 0), (2, 1), (1, 1))

TANS: dict[str, TanKind] = {
    "SmallTri1": TanKind("SmallTri1", "small", _SMALL_REF, 1),
    "SmallTri2": TanKind("SmallTri2", "small", _SMALL_REF, 1),
    "MediumTri": TanKind("MediumTri", "medium", _MEDIUM_REF, 2),
    "LargeTri1": TanKind("LargeTri1", "large", _LARGE_REF, 4),
    "LargeTri2": TanKind("LargeTri2", "large", _LARGE_REF, 4),
    "Square": TanKind("Square", "square", _SQUARE_REF, 2),
    "Parallelogram": TanKind("Parallelogram", "para", _PARA_REF, 2),
}

ALL_TAN_IDS = tuple(TANS)

# solver piece ordering: the two large triangles dominate feasibility, so
# their placements are branched on first
GROUP_RANK = {"large": 0, "medium": 1, "square": 2, "para": 3, "small": 4}
GROUP_MEMBERS = {
    "large": ("LargeTri1", "LargeTri2"),
    "medium": ("MediumTri",),
    "square": ("Square",),
    "para": ("Parallelogram",),
    "small": ("SmallTri1", "SmallTri2"),
}
GROUP_AREA2 = {g: TANS[members[0]].area2 for g, members in GROUP_MEMBERS.items()}


@dataclass(frozen=True)
class Placement:
    kind: str
    rot: int
    refl: bool
    t: Point

    def isometry(self) -> Isometry:
        return Isometry(self.rot % 8, self.refl, self.t)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "rot": self.rot % 8,
            "refl": self.refl,
            "t": [list(self.t.x.to_ints()), list(self.t.y.to_ints())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Placement:
        return cls(
            obj["kind"],
            int(obj["rot"]) % 8,
            bool(obj["refl"]),
            Point.from_ints(obj["t"]),
        )


def placed_polygon(pl: Placement) -> Polygon:
    """Exact CCW vertex cycle of the placed tan in world coordinates."""
    return TANS[pl.kind].ref_polygon().transform(pl.isometry())


def transform_placement(pl: Placement, iso: Isometry) -> Placement:
    composed = iso.compose(pl.isometry())
    return Placement(pl.kind, composed.rot, composed.refl, composed.t)


# -- integer rasterization ----------------------------------------------------
#
# All tests run on coordinates scaled by 6 so that quadrant centroids become
# integers; a centroid can never fall on an octilinear edge of a lattice
# polygon, so strict point-in-polygon is enough.

_CENTROID6 = {QUAD_S: (3, 1), QUAD_E: (5, 3), QUAD_N: (3, 5), QUAD_W: (1, 3)}


def _pip_int(px: int, py: int, verts: list[tuple[int, int]]) -> bool:
    inside = False
    n = len(verts)
    ax, ay = verts[-1]
    for bx, by in verts:
        if (ay > py) != (by > py):
            num = (bx - ax) * (py - ay) - (px - ax) * (by - ay)
            if (num > 0) == (by > ay):
                inside = not inside
        ax, ay = bx, by
    return inside


def cells_of_lattice_polygon(verts: list[tuple[int, int]]) -> frozenset[QuarterCell]:
    """Quarter-cells covered by a simple octilinear polygon with integer vertices."""
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    scaled = [(6 * x, 6 * y) for x, y in verts]
    cells = set()
    for i in range(min(xs), max(xs)):
        for j in range(min(ys), max(ys)):
            for quad, (cx, cy) in _CENTROID6.items():
                if _pip_int(6 * i + cx, 6 * j + cy, scaled):
                    cells.add(QuarterCell(i, j, quad))
    return frozenset(cells)


def quad_triangle(cell: QuarterCell) -> tuple[Point, Point, Point]:
    """The quarter-cell triangle in frame coordinates, CCW."""
    i, j = cell.i, cell.j
    c = point(Fraction(i) + _HALF, Fraction(j) + _HALF)
    corners = [point(i, j), point(i + 1, j), point(i + 1, j + 1), point(i, j + 1)]
    a = corners[cell.quad]
    b = corners[(cell.quad + 1) % 4]
    return (a, b, c)


def quad_centroid(cell: QuarterCell) -> Point:
    cx, cy = _CENTROID6[cell.quad]
    return point(Fraction(6 * cell.i + cx, 6), Fraction(6 * cell.j + cy, 6))


# -- regions -------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """A polygon together with its exact quarter-cell decomposition."""

    frame: Lattice
    cells: frozenset[QuarterCell]
    boundary: Polygon  # world coordinates

    @property
    def area2(self) -> int:
        # each quarter-cell has area 1/4
        return len(self.cells) // 2

    def frame_polygon_int(self) -> list[tuple[int, int]]:
        out = []
        for v in self.boundary.vertices:
            f = self.frame.world_to_frame(v)
            out.append((f.x.as_integer(), f.y.as_integer()))
        return out


def _frame_int_vertices(poly: Polygon, frame: Lattice) -> list[tuple[int, int]] | None:
    out = []
    for v in poly.vertices:
        f = frame.world_to_frame(v)
        if not f.x.is_integer() or not f.y.is_integer():
            return None
        out.append((f.x.as_integer(), f.y.as_integer()))
    return out


def polygon_to_region(poly: Polygon, frame: Lattice) -> Region | None:
    """Rasterize a polygon into frame quarter-cells; None if misaligned."""
    verts = _frame_int_vertices(poly, frame)
    if verts is None:
        return None
    cells = cells_of_lattice_polygon(verts)
    doubled = poly.doubled_area()
    if not doubled.is_integer() or len(cells) != 2 * doubled.as_integer():
        return None
    return Region(frame, cells, poly)


def rasterize(pl: Placement, frame: Lattice) -> frozenset[QuarterCell] | None:
    """Quarter-cells of a placement, or None if not alignable to the frame."""
    poly = placed_polygon(pl)
    verts = _frame_int_vertices(poly, frame)
    if verts is None:
        return None
    cells = cells_of_lattice_polygon(verts)
    assert len(cells) == TANS[pl.kind].quarter_cell_count
    return cells


# -- alignable pose and placement enumeration ----------------------------------


def _int_pose_vertices(ref, rot: int, refl: bool) -> list[tuple[int, int]] | None:
    pose = [Isometry(rot, refl, ORIGIN).apply(point(x, y)) for x, y in ref]
    out = []
    for p in pose:
        if not p.x.is_integer() or not p.y.is_integer():
            return None
        out.append((p.x.as_integer(), p.y.as_integer()))
    if refl:
        out.reverse()
    return out


class AlignedPose(NamedTuple):
    rot: int
    refl: bool
    anchor_i: int  # translation that anchored the cells at their min corner
    anchor_j: int
    cells: frozenset[QuarterCell]  # normalized: min cell corner at (0, 0)


@lru_cache(maxsize=None)
def aligned_poses(group: str) -> tuple[AlignedPose, ...]:
    """Distinct lattice-aligned poses of a tan group.

    Cells are normalized to the pose's min corner before deduplication, so
    symmetric poses that cover identical cells (all eight for the square)
    collapse to one; otherwise tile_all would count the same cover repeatedly.
    """
    ref = TANS[GROUP_MEMBERS[group][0]].ref
    seen: dict[frozenset[QuarterCell], AlignedPose] = {}
    for refl in (False, True):
        for rot in range(8):
            verts = _int_pose_vertices(ref, rot, refl)
            if verts is None:
                continue
            cells = cells_of_lattice_polygon(verts)
            mi = min(c.i for c in cells)
            mj = min(c.j for c in cells)
            normalized = frozenset(QuarterCell(c.i - mi, c.j - mj, c.quad) for c in cells)
            if normalized not in seen:
                seen[normalized] = AlignedPose(rot, refl, -mi, -mj, normalized)
    return tuple(seen.values())


class CandidatePlacement(NamedTuple):
    group: str
    rot: int
    refl: bool
    ti: int  # frame translation
    tj: int
    cells: frozenset[QuarterCell]


def placements_in_region(region: Region, groups) -> list[CandidatePlacement]:
    """All alignable placements of the given groups inside the region."""
    cells = region.cells
    if not cells:
        return []
    imin = min(c.i for c in cells)
    imax = max(c.i for c in cells)
    jmin = min(c.j for c in cells)
    jmax = max(c.j for c in cells)
    out = []
    for group in groups:
        for pose in aligned_poses(group):
            pimax = max(c.i for c in pose.cells)
            pjmax = max(c.j for c in pose.cells)
            for a in range(imin, imax - pimax + 1):
                for b in range(jmin, jmax - pjmax + 1):
                    shifted = frozenset(
                        QuarterCell(c.i + a, c.j + b, c.quad) for c in pose.cells
                    )
                    if shifted <= cells:
                        out.append(
                            CandidatePlacement(
                                group, pose.rot, pose.refl,
                                a + pose.anchor_i, b + pose.anchor_j, shifted,
                            )
                        )
    return out


def frame_placement_to_world(cand: CandidatePlacement, kind: str, frame: Lattice) -> Placement:
    frame_pl = Placement(kind, cand.rot, cand.refl, point(cand.ti, cand.tj))
    return transform_placement(frame_pl, frame.frame_to_world_iso())


UNIT_AXIS_LATTICE = Lattice(AXIS, QuadraticRational(0), QuadraticRational(0))
