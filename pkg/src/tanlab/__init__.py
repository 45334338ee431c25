"""tanlab: exact enumeration and verification of pentagonal tangram figures."""

from .qfield import HALF_SQRT2, ONE, SQRT2, ZERO, QuadraticRational
from .geometry import (
    AXIS,
    DIAGONAL,
    ORIGIN,
    GeometryError,
    Isometry,
    Lattice,
    Point,
    Polygon,
    canonical_form,
    canonicalize,
    interior_angle_codes,
    is_simple,
    lattice_of_points,
    point,
    point_in_polygon,
    polygon_area,
    rotate_about,
)
from .tans import (
    ALL_TAN_IDS,
    TANS,
    Placement,
    QuarterCell,
    Region,
    UNIT_AXIS_LATTICE,
    placed_polygon,
    polygon_to_region,
    rasterize,
)
from .solver import (
    Dissection,
    SplitWitness,
    classify,
    solve_split,
    tile,
    tile_all,
    validate,
)
from .enumerator import (
    Catalog,
    CatalogEntry,
    angle_orders_pentagon,
    check_no_nonconvex_quadrangle,
    enumerate_convex,
    enumerate_lattice_pentagons,
    enumerate_nonlattice_pentagons,
    enumerate_t1_candidates,
    enumerate_t2_triangles,
    full_catalog,
    glue,
    solve_pentagon,
)

__version__ = "0.1.0"
