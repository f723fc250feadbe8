"""Dynamic planar half-space (Tukey) depth: point depths, local and global contours."""

from dyndepth.geometry import (
    CollinearTriple,
    DuplicatePoint,
    GeneralPositionError,
    Point,
    PointSet,
    SharedXCoordinate,
    parse_coord,
)

__all__ = [
    "CollinearTriple",
    "DuplicatePoint",
    "GeneralPositionError",
    "Point",
    "PointSet",
    "SharedXCoordinate",
    "parse_coord",
]

__version__ = "0.1.0"
