"""Exact geometric kernel.

Coordinates are ``gmpy2.mpq`` rationals; nothing in this package ever rounds.
Angles are never materialized: directions are ordered by quadrant and an exact
slope ratio, which is equivalent to the counter-clockwise order of their angle
in ``[0, 2*pi)`` measured from the positive x-axis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Union

from gmpy2 import mpq

Coord = type(mpq(0))
CoordLike = Union[int, str, Fraction, "Coord"]

LT, EQ, GT = -1, 0, 1


def coord(value: CoordLike) -> Coord:
    """Convert an int, rational string (``"5/4"``), decimal string or Fraction."""
    if isinstance(value, Coord):
        return value
    if isinstance(value, float):
        raise TypeError("binary floats are not accepted; pass a decimal string")
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_coord(value)
    return mpq(value)


def parse_coord(token: str) -> Coord:
    """Parse ``"1.25"``, ``"-3"``, ``"5/4"`` or ``"1e-3"`` exactly."""
    token = token.strip()
    if not token:
        raise ValueError("empty coordinate")
    try:
        if "/" in token:
            num, den = token.split("/")
            return mpq(int(num), int(den))
        return mpq(Fraction(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad coordinate {token!r}") from exc


def format_coord(c: Coord) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True, slots=True)
class Point:
    x: Coord
    y: Coord
    id: int = -1

    @property
    def xy(self) -> tuple[Coord, Coord]:
        return (self.x, self.y)


def orient(a, b, c) -> int:
    """Sign of (b - a) x (c - a): +1 counter-clockwise, 0 collinear, -1 clockwise."""
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (d > 0) - (d < 0)


def orient_xy(ax, ay, bx, by, cx, cy) -> int:
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


# -- directions --------------------------------------------------------------

def angle_key(dx, dy) -> tuple[float, int, Coord]:
    """Sort key realizing counter-clockwise angle order from the positive x-axis.

    Quadrant ``i`` covers angles ``[i*pi/2, (i+1)*pi/2)``; inside a quadrant
    the ratio ``r`` is nonnegative and grows with the angle.  The leading float
    is ``i + r/(1+r)`` rounded monotonically, so tuple comparison settles most
    orderings without touching the exact ratio.
    """
    if dx > 0 and dy >= 0:
        return _key(0, mpq(dy) / dx)
    if dy > 0 and dx <= 0:
        return _key(1, mpq(-dx) / dy)
    if dx < 0 and dy <= 0:
        return _key(2, mpq(dy) / dx)
    if dy < 0 and dx >= 0:
        return _key(3, mpq(dx) / -dy)
    raise ValueError("zero direction")


def _key(quadrant: int, r: Coord) -> tuple[float, int, Coord]:
    return (float(quadrant + r / (1 + r)), quadrant, r)


def quadrant_start(quadrant: int) -> tuple[float, int, Coord]:
    """Key of the first direction of a quadrant (4 sorts after every key)."""
    return (float(quadrant), quadrant, mpq(0))


def antipode_key(key: tuple) -> tuple[float, int, Coord]:
    q = (key[1] + 2) & 3
    return _key(q, key[2])


def _quadrant(dx, dy) -> int:
    if dx > 0 and dy >= 0:
        return 0
    if dy > 0 and dx <= 0:
        return 1
    if dx < 0 and dy <= 0:
        return 2
    if dy < 0 and dx >= 0:
        return 3
    raise ValueError("zero direction")


class Direction:
    """A nonzero direction vector, ordered by its counter-clockwise angle."""

    __slots__ = ("dx", "dy", "key")

    def __init__(self, dx, dy):
        self.dx = coord(dx)
        self.dy = coord(dy)
        self.key = angle_key(self.dx, self.dy)

    @classmethod
    def between(cls, origin, target) -> "Direction":
        return cls(target.x - origin.x, target.y - origin.y)

    def __repr__(self) -> str:
        return f"Direction({format_coord(self.dx)}, {format_coord(self.dy)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Direction) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "Direction") -> bool:
        return self.key < other.key

    def __le__(self, other: "Direction") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "Direction") -> bool:
        return self.key > other.key

    def __ge__(self, other: "Direction") -> bool:
        return self.key >= other.key


def cmp_angle(u: Direction, v: Direction) -> int:
    """Exact angle comparison by quadrant, then cross product."""
    qu, qv = _quadrant(u.dx, u.dy), _quadrant(v.dx, v.dy)
    if qu != qv:
        return LT if qu < qv else GT
    c = u.dx * v.dy - u.dy * v.dx
    if c > 0:
        return LT
    if c < 0:
        return GT
    return EQ


def antipode(u: Direction) -> Direction:
    return Direction(-u.dx, -u.dy)


def cross(u: Direction, v: Direction):
    return u.dx * v.dy - u.dy * v.dx


def ccw_angle_less_than_pi(u: Direction, v: Direction) -> bool:
    """True iff the counter-clockwise turn from ``u`` to ``v`` is in (0, pi)."""
    return cross(u, v) > 0


# -- duality -----------------------------------------------------------------

class DualLine(NamedTuple):
    slope: Coord
    intercept: Coord

    def at(self, x):
        return self.slope * x + self.intercept


def dual_of_point(p) -> DualLine:
    """(px, py) -> the line y = px * x - py."""
    return DualLine(coord(p.x), -coord(p.y))


def dual_of_line(line: DualLine) -> tuple[Coord, Coord]:
    """y = m x + b -> the point (m, -b)."""
    return (line.slope, -line.intercept)


# -- general position --------------------------------------------------------

class GeneralPositionError(ValueError):
    """Insertion would break general position."""

    def __init__(self, message: str, points: tuple = ()):
        super().__init__(message)
        self.points = points


class DuplicatePoint(GeneralPositionError):
    pass


class CollinearTriple(GeneralPositionError):
    pass


class SharedXCoordinate(GeneralPositionError):
    pass


class UnknownPoint(KeyError):
    pass


def _line_slope_key(dx, dy):
    # Identifies the line through the origin spanned by (dx, dy).
    if dx == 0:
        return None
    return mpq(dy) / dx


class PointSet:
    """Id-indexed dynamic point set that enforces general position.

    ``cover_mode`` additionally forbids two points with the same x-coordinate,
    which the dual-arrangement machinery needs.
    """

    def __init__(self, cover_mode: bool = False):
        self.cover_mode = cover_mode
        self._points: dict[int, Point] = {}
        self._by_xy: dict[tuple, int] = {}
        self._xs: dict = {}
        self._ids = itertools.count()

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points.values())

    def __contains__(self, pid) -> bool:
        return pid in self._points

    def __getitem__(self, pid: int) -> Point:
        try:
            return self._points[pid]
        except KeyError:
            raise UnknownPoint(pid) from None

    @property
    def ids(self) -> list[int]:
        return list(self._points)

    def find(self, x, y) -> int:
        try:
            return self._by_xy[(coord(x), coord(y))]
        except KeyError:
            raise UnknownPoint((x, y)) from None

    def validate_insert(self, x, y) -> None:
        """Raise a :class:`GeneralPositionError` naming the offending points."""
        x, y = coord(x), coord(y)
        if (x, y) in self._by_xy:
            other = self._points[self._by_xy[(x, y)]]
            raise DuplicatePoint(f"duplicate point ({x}, {y})", (other,))
        if self.cover_mode and x in self._xs:
            other = self._points[self._xs[x]]
            raise SharedXCoordinate(f"x-coordinate {x} already used", (other,))
        seen: dict = {}
        for p in self._points.values():
            k = _line_slope_key(p.x - x, p.y - y)
            if k in seen:
                raise CollinearTriple(
                    f"({x}, {y}) is collinear with two existing points",
                    (seen[k], p),
                )
            seen[k] = p

    def add(self, x, y, pid: Optional[int] = None) -> Point:
        """Insert a point; ``pid`` restores a previously issued id."""
        x, y = coord(x), coord(y)
        self.validate_insert(x, y)
        if pid is None:
            pid = next(self._ids)
        else:
            if pid in self._points:
                raise ValueError(f"id {pid} already in use")
            self._next_floor(pid + 1)
        p = Point(x, y, pid)
        self._points[p.id] = p
        self._by_xy[(x, y)] = p.id
        self._xs[x] = p.id
        return p

    def _next_floor(self, floor: int) -> None:
        nxt = next(self._ids)
        self._ids = itertools.count(max(nxt, floor))

    @property
    def next_id(self) -> int:
        nxt = next(self._ids)
        self._ids = itertools.count(nxt)
        return nxt

    def remove(self, pid: int) -> Point:
        p = self[pid]
        del self._points[pid]
        del self._by_xy[(p.x, p.y)]
        if self._xs.get(p.x) == pid:
            del self._xs[p.x]
        return p


def in_general_position(points: Iterable, distinct_x: bool = False) -> bool:
    s = PointSet(cover_mode=distinct_x)
    try:
        for p in points:
            s.add(p[0], p[1]) if isinstance(p, tuple) else s.add(p.x, p.y)
    except GeneralPositionError:
        return False
    return True


def read_points(lines: Iterable[str]) -> list[tuple[Coord, Coord]]:
    """Parse the ``x y`` per-line text format; ``#`` starts a comment line."""
    out = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'x y', got {raw!r}")
        out.append((parse_coord(parts[0]), parse_coord(parts[1])))
    return out


# -- contour results ---------------------------------------------------------

class Contour(NamedTuple):
    """A reported contour: ``kind`` is empty, point, segment or polygon.

    Polygons are strictly convex, counter-clockwise, starting at the lowest
    (then leftmost) vertex; segments list their endpoints in (x, y) order.
    """

    kind: str
    vertices: list

    @classmethod
    def from_ring(cls, ring: Iterable[tuple]) -> "Contour":
        """Normalize a weakly convex counter-clockwise ring."""
        pts: list = []
        for v in ring:
            if not pts or pts[-1] != v:
                pts.append(v)
        while len(pts) > 1 and pts[0] == pts[-1]:
            pts.pop()
        if not pts:
            return cls("empty", [])
        changed = True
        while changed and len(pts) >= 3:
            changed = False
            out = []
            m = len(pts)
            for i in range(m):
                a, b, c = pts[i - 1], pts[i], pts[(i + 1) % m]
                if orient_xy(a[0], a[1], b[0], b[1], c[0], c[1]) != 0:
                    out.append(b)
                else:
                    changed = True
            if changed:
                if len(out) < 3:
                    # everything collinear: keep the extreme points
                    out = [min(pts), max(pts)]
                pts = out
        if len(pts) == 1:
            return cls("point", pts)
        if len(pts) == 2:
            a, b = sorted(pts)
            return cls("segment", [a, b] if a != b else [a])
        i = min(range(len(pts)), key=lambda j: (pts[j][1], pts[j][0]))
        return cls("polygon", pts[i:] + pts[:i])
