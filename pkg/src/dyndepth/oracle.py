"""Brute-force reference implementations.

Everything here trades speed for obviousness and shares nothing with the
dynamic structures except the exact geometric kernel.  Practical limits are
a few hundred points for depths and a few dozen for contours and levels.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from dyndepth.geometry import Point, UnknownPoint, angle_key, orient


class DegenerateAnchor(ValueError):
    pass


def _as_list(points: Iterable[Point]) -> list[Point]:
    return list(points)


def _locate(points: Sequence[Point], p: Point) -> Point:
    for r in points:
        if r.x == p.x and r.y == p.y:
            return r
    raise UnknownPoint((p.x, p.y))


# -- depth -------------------------------------------------------------------

def static_depth_radial(points: Iterable[Point], p: Point) -> int:
    """Sort the others around ``p`` and slide an open semicircle over them."""
    pts = _as_list(points)
    p = _locate(pts, p)
    dirs = sorted(
        ((r.x - p.x, r.y - p.y) for r in pts if r is not p),
        key=lambda d: angle_key(*d),
    )
    m = len(dirs)
    if m == 0:
        return 1
    best = m
    j = 0  # number of directions strictly inside (theta_i, theta_i + pi)
    for i in range(m):
        ax, ay = dirs[i]
        if j < 1:
            j = 1
        while j < m:
            bx, by = dirs[(i + j) % m]
            if ax * by - ay * bx > 0:
                j += 1
            else:
                break
        best = min(best, j - 1)
        j -= 1
    return best + 1


def static_depth_direct(points: Iterable[Point], p: Point) -> int:
    """Minimum over the two closed sides of every line through ``p`` and
    another data point, minus the one boundary point that can be rotated off."""
    pts = _as_list(points)
    p = _locate(pts, p)
    best = None
    for r in pts:
        if r is p:
            continue
        left = right = 0
        for s in pts:
            o = orient(p, r, s)
            if o > 0:
                left += 1
            elif o < 0:
                right += 1
        cand = min(left, right) + 2 - 1
        best = cand if best is None else min(best, cand)
    return 1 if best is None else best


def static_depth(points: Iterable[Point], p: Point, method: str = "radial") -> int:
    if method == "radial":
        return static_depth_radial(points, p)
    if method == "direct":
        return static_depth_direct(points, p)
    raise ValueError(f"unknown method {method!r}")


def static_all_depths(points: Iterable[Point]) -> dict[int, int]:
    pts = _as_list(points)
    return {p.id: static_depth_radial(pts, p) for p in pts}


def point_depth(points: Iterable[Point], x, y) -> int:
    """Tukey depth of an arbitrary location (not necessarily a data point).

    The count of a closed half-plane with ``(x, y)`` on its boundary only
    changes when the boundary passes through a data point, so it suffices to
    probe one generic normal between each pair of consecutive critical ones.
    """
    pts = _as_list(points)
    here = sum(1 for s in pts if s.x == x and s.y == y)
    normals = []
    for s in pts:
        dx, dy = s.x - x, s.y - y
        if dx == 0 and dy == 0:
            continue
        normals.append((-dy, dx))
        normals.append((dy, -dx))
    if not normals:
        return here
    uniq = {}
    for d in normals:
        uniq.setdefault(angle_key(*d), d)
    normals = [uniq[k] for k in sorted(uniq)]
    probes = []
    for a, b in zip(normals, normals[1:] + normals[:1]):
        if a[0] * b[1] - a[1] * b[0] > 0:
            probes.append((a[0] + b[0], a[1] + b[1]))
        else:
            # gap of at least pi: the left normal of a lies strictly inside
            probes.append((-a[1], a[0]))
    best = None
    for ux, uy in probes:
        cnt = sum(1 for s in pts if ux * (s.x - x) + uy * (s.y - y) >= 0)
        best = cnt if best is None else min(best, cnt)
    return best


# -- defining pair -----------------------------------------------------------

class StaticDefiningPair(NamedTuple):
    l1_key: tuple
    l1_partner: int
    l2_key: tuple
    l2_partner: int


def meaningful_counts(points: Iterable[Point], p: Point) -> list[tuple]:
    """Every half-plane bounded by a line through ``p`` and one other point,
    as ``(key, dx, dy, count, is_to, partner_id)`` with closed counts."""
    pts = _as_list(points)
    p = _locate(pts, p)
    out = []
    for r in pts:
        if r is p:
            continue
        for sgn in (1, -1):
            dx, dy = sgn * (r.x - p.x), sgn * (r.y - p.y)
            cnt = sum(1 for s in pts if dx * (s.y - p.y) - dy * (s.x - p.x) <= 0)
            out.append((angle_key(dx, dy), dx, dy, cnt, sgn == 1, r.id))
    out.sort(key=lambda t: t[0])
    return out


def static_defining_pair(points: Iterable[Point], p: Point) -> StaticDefiningPair:
    """The two minimum-count half-planes bounding the anchor's contour edges.

    ``l1`` is the minimum-count vector with every other minimum-count vector
    strictly clockwise of it by less than pi; ``l2`` the one with every other
    strictly counter-clockwise by less than pi.
    """
    hp = meaningful_counts(points, p)
    if not hp:
        raise DegenerateAnchor("single point")
    k1 = min(t[3] for t in hp)
    mins = [t for t in hp if t[3] == k1]

    def cr(a, b):
        return a[1] * b[2] - a[2] * b[1]

    l1 = [a for a in mins if all(cr(a, b) < 0 for b in mins if b is not a)]
    l2 = [a for a in mins if all(cr(a, b) > 0 for b in mins if b is not a)]
    if len(l1) != 1 or len(l2) != 1 or l1[0] is l2[0]:
        raise DegenerateAnchor("minimum-count vectors do not fit in a half-turn")
    a, b = l1[0], l2[0]
    return StaticDefiningPair(a[0], a[5], b[0], b[5])


def is_degenerate(points: Iterable[Point], p: Point) -> bool:
    try:
        static_defining_pair(points, p)
    except DegenerateAnchor:
        return True
    return False


# -- hulls and polygons --------------------------------------------------------

def convex_hull(xy: Iterable[tuple]) -> list[tuple]:
    """Counter-clockwise strict hull, starting from the lowest-leftmost vertex."""
    pts = sorted(set(xy))
    if len(pts) <= 2:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for q in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    for q in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    return lower[:-1] + upper[:-1]


def shape_of(xy: Iterable[tuple]) -> tuple[str, list[tuple]]:
    """Classify a finite point set by the shape of its hull."""
    hull = convex_hull(xy)
    if not hull:
        return ("empty", [])
    if len(hull) == 1:
        return ("point", hull)
    if len(hull) == 2:
        return ("segment", hull)
    return ("polygon", canonical_ring(hull))


def canonical_ring(ring: list[tuple]) -> list[tuple]:
    i = min(range(len(ring)), key=lambda j: (ring[j][1], ring[j][0]))
    return ring[i:] + ring[:i]


def _clip(poly: list[tuple], a, b, c) -> list[tuple]:
    """Keep the part of ``poly`` with a*x + b*y <= c."""
    out = []
    m = len(poly)
    for i in range(m):
        cur, nxt = poly[i], poly[(i + 1) % m]
        fc = a * cur[0] + b * cur[1] - c
        fn = a * nxt[0] + b * nxt[1] - c
        if fc <= 0:
            out.append(cur)
        if (fc < 0 < fn) or (fn < 0 < fc):
            t = fc / (fc - fn)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return out


def qualifying_halfplanes(points: Sequence[Point], k: int) -> list[tuple]:
    """Closed half-planes ``a*x + b*y <= c`` bounded by a line through two data
    points and holding exactly ``n - k + 1`` of them."""
    n = len(points)
    want = n - k + 1
    out = []
    for p, r in combinations(points, 2):
        left = right = 0
        for s in points:
            o = orient(p, r, s)
            if o > 0:
                left += 1
            elif o < 0:
                right += 1
        # left of p->r: cross >= 0  <=>  a*x + b*y <= c with (a, b) below
        a, b = r.y - p.y, -(r.x - p.x)
        c = a * p.x + b * p.y
        if left + 2 == want:
            out.append((a, b, c))
        if right + 2 == want:
            out.append((-a, -b, -c))
    return out


def static_cover_contour(points: Iterable[Point], k: int) -> tuple[str, list[tuple]]:
    """Intersection of every qualifying half-plane, clipped to the data's box."""
    pts = _as_list(points)
    n = len(pts)
    if n == 0:
        return ("empty", [])
    if not 1 <= k <= max(1, (n + 1) // 2):
        raise ValueError(f"k={k} out of range for n={n}")
    if n == 1:
        return ("point", [pts[0].xy])
    xs, ys = [p.x for p in pts], [p.y for p in pts]
    poly = [(min(xs), min(ys)), (max(xs), min(ys)), (max(xs), max(ys)), (min(xs), max(ys))]
    for a, b, c in qualifying_halfplanes(pts, k):
        poly = _clip(poly, a, b, c)
        if not poly:
            return ("empty", [])
    return shape_of(poly)


# -- dual arrangement ----------------------------------------------------------

def static_levels(points: Iterable[Point]) -> dict[int, list[tuple]]:
    """Vertices of every level of the dual arrangement, sorted by x.

    The dual of ``(a, b)`` is ``y = a*x - b``.  A vertex with ``j`` lines
    strictly above it lies on levels ``j + 1`` and ``j + 2`` (level 1 is the
    upper envelope).
    """
    pts = _as_list(points)
    levels: dict[int, list[tuple]] = {i: [] for i in range(1, len(pts) + 1)}
    for p, q in combinations(pts, 2):
        x = (p.y - q.y) / (p.x - q.x)
        y = p.x * x - p.y
        above = sum(1 for r in pts if r.x * x - r.y > y)
        levels[above + 1].append((x, y))
        levels[above + 2].append((x, y))
    for chain in levels.values():
        chain.sort()
    return levels


def cover_contour_by_cells(points: Iterable[Point], k: int) -> tuple[str, list[tuple]]:
    """Second route to the same region: hull of every candidate vertex whose
    depth is at least ``k``.

    Region vertices are data points or crossings of two lines through data
    points, so probing that finite set and keeping the deep ones suffices.
    """
    pts = _as_list(points)
    if not pts:
        return ("empty", [])
    lines = [(p, r) for p, r in combinations(pts, 2)]
    cands = {p.xy for p in pts}
    for (a, b), (c, d) in combinations(lines, 2):
        d1x, d1y = b.x - a.x, b.y - a.y
        d2x, d2y = d.x - c.x, d.y - c.y
        den = d1x * d2y - d1y * d2x
        if den == 0:
            continue
        t = ((c.x - a.x) * d2y - (c.y - a.y) * d2x) / den
        cands.add((a.x + t * d1x, a.y + t * d1y))
    return shape_of(z for z in cands if point_depth(pts, *z) >= k)
