"""Exact octilinear polygon geometry.

Polygons here have edges along the eight directions k*pi/4 and coordinates in
the sqrt(2)-rational field.  Everything is decided with exact predicates:
orientation, point-in-polygon, self-intersection, congruence.  Congruence
classes are keyed by a canonical byte string minimized over the 16-element
symmetry group (8 eighth-turn rotations, with and without reflection).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qfield import ONE, SQRT2, ZERO, QuadraticRational

Q = QuadraticRational

# Unit steps of the eight directions in "lattice steps": axis directions move
# by 1, diagonal directions by (+-1, +-1) (geometric length sqrt(2)).
STEPS: tuple[tuple[int, int], ...] = (
    (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1),
)

_HALF = Fraction(1, 2)
# cos(k*pi/4), sin(k*pi/4) exactly.
_COS8 = (Q(1), Q(0, _HALF), Q(0), Q(0, -_HALF), Q(-1), Q(0, -_HALF), Q(0), Q(0, _HALF))
_SIN8 = (Q(0), Q(0, _HALF), Q(1), Q(0, _HALF), Q(0), Q(0, -_HALF), Q(-1), Q(0, -_HALF))

AXIS = "axis"
DIAGONAL = "diagonal"


class GeometryError(ValueError):
    """Raised when a polygon violates a structural invariant."""


@dataclass(frozen=True, slots=True)
class Point:
    x: QuadraticRational
    y: QuadraticRational

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Point:
        return Point(-self.x, -self.y)

    def to_ints(self) -> tuple:
        return (self.x.to_ints(), self.y.to_ints())

    @classmethod
    def from_ints(cls, pair) -> Point:
        xi, yi = pair
        return cls(Q.from_ints(tuple(xi)), Q.from_ints(tuple(yi)))

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


ORIGIN = Point(ZERO, ZERO)


def point(x, y) -> Point:
    """Point from ints/Fractions/QuadraticRationals."""
    return Point(x if isinstance(x, Q) else Q(x), y if isinstance(y, Q) else Q(y))


def cross(a: Point, b: Point) -> QuadraticRational:
    return a.x * b.y - a.y * b.x


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a->b->c: +1 left, -1 right, 0 collinear."""
    return cross(b - a, c - a).sign()


def rotate_about(p: Point, center: Point, eighth_turns: int) -> Point:
    """Exact rotation by eighth_turns * pi/4 about center."""
    r = eighth_turns % 8
    c, s = _COS8[r], _SIN8[r]
    dx, dy = p.x - center.x, p.y - center.y
    return Point(center.x + c * dx - s * dy, center.y + s * dx + c * dy)


def direction_index(delta: Point) -> int | None:
    """DirectionIndex of a nonzero vector, or None if not octilinear."""
    sx, sy = delta.x.sign(), delta.y.sign()
    if sx == 0 and sy == 0:
        return None
    if sx == 0 or sy == 0:
        pass  # axis direction
    elif abs(delta.x) != abs(delta.y):
        return None
    try:
        return STEPS.index((sx, sy))
    except ValueError:  # pragma: no cover - all sign pairs are in STEPS
        return None


def edge_length(delta: Point, d: int) -> QuadraticRational:
    """Geometric length of an octilinear edge with direction index d."""
    if d % 2 == 0:
        return abs(delta.x) if d in (0, 4) else abs(delta.y)
    return abs(delta.x) * SQRT2


@dataclass(frozen=True, slots=True)
class Isometry:
    """Plane isometry x -> R(rot) * M(refl) * x + t, with M the x-axis mirror."""

    rot: int
    refl: bool
    t: Point

    def apply(self, p: Point) -> Point:
        if self.refl:
            p = Point(p.x, -p.y)
        r = rotate_about(p, ORIGIN, self.rot)
        return r + self.t

    def compose(self, other: Isometry) -> Isometry:
        """self after other (self.apply(other.apply(x)))."""
        rot = (self.rot - other.rot) % 8 if self.refl else (self.rot + other.rot) % 8
        refl = self.refl != other.refl
        t_img = self.apply(other.t)
        return Isometry(rot, refl, t_img)

    @classmethod
    def identity(cls) -> Isometry:
        return cls(0, False, ORIGIN)

    @classmethod
    def translation(cls, t: Point) -> Isometry:
        return cls(0, False, t)

    @classmethod
    def rotation_about(cls, center: Point, eighth_turns: int) -> Isometry:
        moved = rotate_about(ORIGIN, ORIGIN, eighth_turns)
        # x -> R(x - c) + c == R x + (c - R c)
        rc = rotate_about(center, ORIGIN, eighth_turns)
        return cls(eighth_turns % 8, False, center - rc)


def _merge_straight(points: list[Point]) -> list[Point]:
    """Drop vertices where the boundary continues straight on."""
    out = list(points)
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            a = out[i - 1]
            b = out[i]
            c = out[(i + 1) % len(out)]
            if orient(a, b, c) == 0 and cross(b - a, c - b).sign() == 0:
                # collinear; drop b unless it is a U-turn (caught later as k=8)
                d_in = direction_index(b - a)
                d_out = direction_index(c - b)
                if d_in is not None and d_in == d_out:
                    del out[i]
                    changed = True
                    break
    return out


class Polygon:
    """Simple octilinear polygon, counter-clockwise, no straight vertices."""

    __slots__ = ("vertices",)

    vertices: tuple[Point, ...]

    def __init__(self, vertices, *, merge_straight: bool = False, validate: bool = True):
        pts = list(vertices)
        if merge_straight:
            pts = _merge_straight(pts)
        self_vertices = tuple(pts)
        object.__setattr__(self, "vertices", self_vertices)
        if validate:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Polygon is immutable")

    def _validate(self) -> None:
        n = len(self.vertices)
        if n < 3:
            raise GeometryError(f"polygon needs >= 3 vertices, got {n}")
        for i in range(n):
            if self.vertices[i] == self.vertices[(i + 1) % n]:
                raise GeometryError(f"repeated consecutive vertex at index {i}")
        dirs = self.edge_dirs()
        for i, d in enumerate(dirs):
            if d is None:
                raise GeometryError(f"edge {i} is not octilinear")
        if self.doubled_area().sign() <= 0:
            raise GeometryError("vertices must be in counter-clockwise order")
        for i in range(n):
            k = (dirs[i - 1] + 4 - dirs[i]) % 8
            if k == 4:
                raise GeometryError(f"straight vertex at index {i}")
            if k == 0:
                raise GeometryError(f"boundary doubles back at index {i}")
        if not is_simple(self.vertices):
            raise GeometryError("boundary is not simple")

    # -- basic measurements --------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return "Polygon[" + ", ".join(str(v) for v in self.vertices) + "]"

    def doubled_area(self) -> QuadraticRational:
        n = len(self.vertices)
        s = ZERO
        for i in range(n):
            s = s + cross(self.vertices[i], self.vertices[(i + 1) % n])
        return s

    def area(self) -> QuadraticRational:
        return self.doubled_area() / 2

    def edge_dirs(self) -> tuple[int | None, ...]:
        n = len(self.vertices)
        return tuple(
            direction_index(self.vertices[(i + 1) % n] - self.vertices[i])
            for i in range(n)
        )

    def edge_lengths(self) -> tuple[QuadraticRational, ...]:
        n = len(self.vertices)
        dirs = self.edge_dirs()
        return tuple(
            edge_length(self.vertices[(i + 1) % n] - self.vertices[i], dirs[i])
            for i in range(n)
        )

    def angle_codes(self) -> tuple[int, ...]:
        """Interior angle at each vertex as a multiple of pi/4 (1..7)."""
        dirs = self.edge_dirs()
        n = len(self.vertices)
        return tuple((dirs[i - 1] + 4 - dirs[i]) % 8 or 8 for i in range(n))

    def is_convex(self) -> bool:
        return all(k <= 3 for k in self.angle_codes())

    def reflex_indices(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.angle_codes()) if k >= 5)

    def bbox(self) -> tuple[QuadraticRational, QuadraticRational, QuadraticRational, QuadraticRational]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    def transform(self, iso: Isometry) -> Polygon:
        pts = [iso.apply(v) for v in self.vertices]
        if iso.refl:
            pts.reverse()
        return Polygon(pts, validate=False)

    def translate(self, t: Point) -> Polygon:
        return Polygon([v + t for v in self.vertices], validate=False)

    def contains_point(self, p: Point) -> int:
        return point_in_polygon(p, self.vertices)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"vertices": [[list(v.x.to_ints()), list(v.y.to_ints())] for v in self.vertices]}

    @classmethod
    def from_json(cls, obj: dict, *, validate: bool = True) -> Polygon:
        if not isinstance(obj, dict) or "vertices" not in obj:
            raise GeometryError("polygon JSON must be an object with a 'vertices' field")
        raw = obj["vertices"]
        if not isinstance(raw, list) or len(raw) < 3:
            raise GeometryError("'vertices' must be a list of at least 3 points")
        pts = []
        for i, entry in enumerate(raw):
            try:
                xi, yi = entry
                pts.append(Point(Q.from_ints(tuple(xi)), Q.from_ints(tuple(yi))))
            except (TypeError, ValueError) as exc:
                raise GeometryError(f"vertex {i}: {exc}") from exc
        return cls(pts, validate=validate)


# -- spec-level operation names ------------------------------------------------


def polygon_area(poly: Polygon) -> QuadraticRational:
    return poly.area()


def interior_angle_codes(poly: Polygon) -> tuple[int, ...]:
    return poly.angle_codes()


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab."""
    if orient(a, b, p) != 0:
        return False
    if (min(a.x, b.x) - p.x).sign() > 0 or (p.x - max(a.x, b.x)).sign() > 0:
        return False
    if (min(a.y, b.y) - p.y).sign() > 0 or (p.y - max(a.y, b.y)).sign() > 0:
        return False
    return True


def segments_share_point(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    """Exact test: do closed segments p1p2 and p3p4 have any common point?"""
    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    return (
        (d1 == 0 and on_segment(p1, p3, p4))
        or (d2 == 0 and on_segment(p2, p3, p4))
        or (d3 == 0 and on_segment(p3, p1, p2))
        or (d4 == 0 and on_segment(p4, p1, p2))
    )


def is_simple(vertices) -> bool:
    """True iff the closed polyline is a simple polygon boundary.

    Touching at a single point (a non-manifold vertex) counts as non-simple.
    """
    pts = list(vertices)
    n = len(pts)
    if n < 3:
        return False
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = edges[i]
            c, d = edges[j]
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            if adjacent:
                shared = b if j == i + 1 else a
                # The only allowed contact is the shared endpoint.
                other_i = a if j == i + 1 else b
                other_j = d if j == i + 1 else c
                if on_segment(other_j, a, b) and other_j != shared:
                    return False
                if on_segment(other_i, c, d) and other_i != shared:
                    return False
            else:
                if segments_share_point(a, b, c, d):
                    return False
    return True


def point_in_polygon(p: Point, vertices) -> int:
    """Exact location of p: +1 interior, 0 boundary, -1 exterior."""
    pts = list(vertices)
    n = len(pts)
    for i in range(n):
        if on_segment(p, pts[i], pts[(i + 1) % n]):
            return 0
    inside = False
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        a_above = (a.y - p.y).sign() > 0
        b_above = (b.y - p.y).sign() > 0
        if a_above != b_above:
            # p.x < x-coordinate of the crossing, decided without division
            num = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)
            if num.sign() * (b.y - a.y).sign() > 0:
                inside = not inside
    return 1 if inside else -1


# -- congruence canonicalization -------------------------------------------------


def _edge_list(poly: Polygon) -> list[tuple[int, tuple[int, int, int, int]]]:
    dirs = poly.edge_dirs()
    lens = poly.edge_lengths()
    return [(dirs[i], lens[i].to_ints()) for i in range(len(dirs))]


def canonicalize(poly: Polygon) -> tuple[bytes, "Polygon", Isometry]:
    """Canonical key, canonical pose and the isometry original -> pose.

    The key is the lexicographic minimum, over the 16 symmetries and all
    cyclic starting edges, of the (direction, exact length) edge list with the
    directions rewritten by the symmetry.  It is translation-free by
    construction, so two octilinear polygons get equal keys iff congruent.
    """
    base = _edge_list(poly)
    n = len(base)
    # reflected traversal: reverse edge order, direction d -> (4 - d) mod 8
    refl_base = [((4 - d) % 8, ln) for d, ln in reversed(base)]
    best = None
    best_tag = None
    for refl, lst in ((False, base), (True, refl_base)):
        for r in range(8):
            rotated = [((d + r) % 8, ln) for d, ln in lst]
            for s in range(n):
                variant = tuple(rotated[s:] + rotated[:s])
                if best is None or variant < best:
                    best = variant
                    best_tag = (refl, r, s)
    refl, r, s = best_tag
    # start vertex of the winning traversal, in original indexing
    if not refl:
        start = poly.vertices[s]
    else:
        # reflected edge k corresponds to original edge n-1-k; shifted by s the
        # first edge is original edge (n-1-s), whose reflected-path start
        # vertex is the image of original vertex (n-s) mod n.
        start = poly.vertices[(n - s) % n]
    g0 = Isometry(r, refl, ORIGIN)
    iso = Isometry(r, refl, -g0.apply(start))
    pose = poly.transform(iso)
    # rotate the cycle so the pose starts at the origin
    idx = pose.vertices.index(ORIGIN)
    pose = Polygon(pose.vertices[idx:] + pose.vertices[:idx], validate=False)
    return repr(best).encode("ascii"), pose, iso


def canonical_form(poly: Polygon) -> bytes:
    return canonicalize(poly)[0]


# -- lattices -------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Lattice:
    """Unit lattice of one of the two parities, identified by its residue.

    Frame coordinates map lattice points to Z^2: for the diagonal parity the
    frame is the world rotated by -pi/4.  The anchor is the canonical residue
    of the lattice in frame coordinates, both components in [0, 1).
    """

    parity: str
    rx: QuadraticRational
    ry: QuadraticRational

    def world_to_frame(self, p: Point) -> Point:
        if self.parity == DIAGONAL:
            p = rotate_about(p, ORIGIN, -1)
        return Point(p.x - self.rx, p.y - self.ry)

    def frame_to_world(self, p: Point) -> Point:
        p = Point(p.x + self.rx, p.y + self.ry)
        if self.parity == DIAGONAL:
            p = rotate_about(p, ORIGIN, 1)
        return p

    def frame_to_world_iso(self) -> Isometry:
        rot = 1 if self.parity == DIAGONAL else 0
        return Isometry(rot, False, rotate_about(Point(self.rx, self.ry), ORIGIN, rot))

    def contains(self, p: Point) -> bool:
        f = self.world_to_frame(p)
        return f.x.is_integer() and f.y.is_integer()


def lattice_of_points(points, parity: str) -> Lattice | None:
    """The lattice of the given parity through all points, if one exists."""
    pts = list(points)
    if not pts:
        raise ValueError("lattice_of_points needs at least one point")
    if parity == DIAGONAL:
        frame = [rotate_about(p, ORIGIN, -1) for p in pts]
    elif parity == AXIS:
        frame = pts
    else:
        raise ValueError(f"unknown parity {parity!r}")
    p0 = frame[0]
    for p in frame[1:]:
        if not (p.x - p0.x).is_integer() or not (p.y - p0.y).is_integer():
            return None
    return Lattice(parity, p0.x.frac(), p0.y.frac())


def induced_lattice(points, rotation: int) -> Lattice | None:
    """Lattice induced by a tan placed with the given rotation parity."""
    return lattice_of_points(points, DIAGONAL if rotation % 2 else AXIS)


# -- convex clipping (used by exact dissection validation) ----------------------


def _line_intersection(s: Point, e: Point, a: Point, b: Point) -> Point:
    """Intersection of line se with line ab (must not be parallel)."""
    d1 = e - s
    d2 = b - a
    denom = cross(d1, d2)
    t = cross(a - s, d2) / denom
    return Point(s.x + d1.x * t, s.y + d1.y * t)


def clip_convex(subject, clip) -> list[Point]:
    """Sutherland-Hodgman: subject polygon clipped to a convex CCW polygon."""
    out = list(subject)
    m = len(clip)
    for i in range(m):
        a, b = clip[i], clip[(i + 1) % m]
        if not out:
            return []
        inp = out
        out = []
        prev = inp[-1]
        prev_in = orient(a, b, prev) >= 0
        for cur in inp:
            cur_in = orient(a, b, cur) >= 0
            if cur_in:
                if not prev_in:
                    out.append(_line_intersection(prev, cur, a, b))
                out.append(cur)
            elif prev_in:
                out.append(_line_intersection(prev, cur, a, b))
            prev, prev_in = cur, cur_in
    return out


def convex_intersection_area(p, q) -> QuadraticRational:
    """Exact area of the intersection of two convex CCW polygons."""
    pts = clip_convex(list(p), list(q))
    n = len(pts)
    if n < 3:
        return ZERO
    s = ZERO
    for i in range(n):
        s = s + cross(pts[i], pts[(i + 1) % n])
    return abs(s) / 2


def convex_inside_simple(piece, target) -> bool:
    """Exact containment of a convex polygon inside a simple polygon."""
    piece = list(piece)
    target = list(target)
    n, m = len(piece), len(target)
    for v in piece:
        if point_in_polygon(v, target) < 0:
            return False
    # no target vertex strictly inside the piece
    for w in target:
        if point_in_polygon(w, piece) > 0:
            return False
    # no proper boundary crossing
    for i in range(n):
        a, b = piece[i], piece[(i + 1) % n]
        for j in range(m):
            c, d = target[j], target[(j + 1) % m]
            d1 = orient(c, d, a)
            d2 = orient(c, d, b)
            d3 = orient(a, b, c)
            d4 = orient(a, b, d)
            if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
                (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
            ):
                return False
    # an interior point of the piece must be interior to the target
    cx = sum((v.x for v in piece), ZERO) / len(piece)
    cy = sum((v.y for v in piece), ZERO) / len(piece)
    return point_in_polygon(Point(cx, cy), target) > 0
