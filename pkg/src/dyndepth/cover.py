"""Cover-based depth contours through the levels of the dual arrangement.

A data point ``(a, b)`` becomes the line ``y = a*x - b``.  Level ``l`` (1 is
the upper envelope) is the x-monotone chain of arrangement segments with
exactly ``l - 1`` lines strictly above them; its vertices are crossings of
two dual lines.  Each level is a join-based AVL tree over its vertices whose
nodes carry Overmars-van Leeuwen hull fragments, so every chain root knows the
upper and lower hull of its vertex set.

Inserting or deleting a point walks its dual line across the arrangement and
re-stitches the chains it crosses with one split and two joins per crossing.
The depth-k cover contour comes back from the upper hull of level n-k+1 and
the lower hull of level k.
"""

from __future__ import annotations

from typing import Iterable, Optional

from dyndepth import avl
from dyndepth import hullqueue as hq
from dyndepth.geometry import Contour, Point, PointSet, coord


class OutOfRange(ValueError):
    pass


class OrderViolation(ValueError):
    pass


class CNode(avl.AVLNode):
    """One vertex of one level chain, with the hull fragments of its subtree."""

    __slots__ = (
        "x", "y", "a", "b",
        "uv", "uH", "uQL", "uQM", "uQR", "uS",
        "lv", "lH", "lQL", "lQM", "lQR", "lS",
    )

    def __init__(self, x, y, a: int, b: int):
        self.left = None
        self.right = None
        self.height = 1
        self.x = x
        self.y = y
        self.a = a
        self.b = b
        self.uv = hq.HNode(x, y)
        self.lv = hq.HNode(x, -y)
        self.uH = self.uQL = self.uQM = self.uQR = self.uS = None
        self.lH = self.lQL = self.lQM = self.lQR = self.lS = None

    def pull(self):
        l, r = self.left, self.right
        if l is None:
            ul = ll = None
        else:
            ul, ll = l.uH, l.lH
            l.uH = l.lH = None
        if r is None:
            ur = lr = None
        else:
            ur, lr = r.uH, r.lH
            r.uH = r.lH = None
        self.uH, self.uQL, self.uQM, self.uQR, self.uS = hq.assemble(ul, self.uv, ur)
        self.lH, self.lQL, self.lQM, self.lQR, self.lS = hq.assemble(ll, self.lv, lr)

    def push(self):
        if self.uH is None:
            return
        ul, self.uv, ur = hq.disassemble(self.uH, self.uQL, self.uQM, self.uQR, self.uS)
        ll, self.lv, lr = hq.disassemble(self.lH, self.lQL, self.lQM, self.lQR, self.lS)
        self.uH = self.uQL = self.uQM = self.uQR = self.uS = None
        self.lH = self.lQL = self.lQM = self.lQR = self.lS = None
        if self.left is not None:
            self.left.uH, self.left.lH = ul, ll
        if self.right is not None:
            self.right.uH, self.right.lH = ur, lr


def _at(x):
    def cmp(node):
        nx = node.x
        return -1 if x < nx else (1 if x > nx else 0)

    return cmp


def _split_le(t, x):
    """Split a chain into the vertices with x <= ``x`` and the rest."""
    if t is None:
        return None, None
    t.push()
    if t.x <= x:
        a, b = _split_le(t.right, x)
        return avl.join(t.left, t, a), b
    a, b = _split_le(t.left, x)
    return a, avl.join(b, t, t.right)


class LevelChain:
    """Read-only view of one level: its vertices and root hulls."""

    __slots__ = ("level", "root")

    def __init__(self, level: int, root: Optional[CNode]):
        self.level = level
        self.root = root

    def __len__(self) -> int:
        return avl.size(self.root)

    def vertices(self) -> list[tuple]:
        return [(n.x, n.y) for n in avl.inorder(self.root)]

    def upper_hull(self) -> list[tuple]:
        return [] if self.root is None else list(hq.items(self.root.uH))

    def lower_hull(self) -> list[tuple]:
        if self.root is None:
            return []
        return [(x, -y) for (x, y) in hq.items(self.root.lH)]


def split_chain(chain: LevelChain, at_x) -> tuple[LevelChain, LevelChain]:
    """Cut a chain by x; a vertex exactly at ``at_x`` stays on the left."""
    at_x = coord(at_x)
    left, right = _split_le(chain.root, at_x)
    return LevelChain(chain.level, left), LevelChain(chain.level, right)


def join_chains(left: LevelChain, vertex: CNode, right: LevelChain) -> LevelChain:
    """Concatenate two chains through a connecting vertex."""
    if left.root is not None and avl.last(left.root).x >= vertex.x:
        raise OrderViolation("left chain reaches past the connecting vertex")
    if right.root is not None and avl.first(right.root).x <= vertex.x:
        raise OrderViolation("right chain starts before the connecting vertex")
    return LevelChain(left.level, avl.join(left.root, vertex, right.root))


class Arrangement:
    """Dynamic dual arrangement of a point set with distinct x-coordinates."""

    def __init__(self):
        self.points = PointSet(cover_mode=True)
        self._levels: list[Optional[CNode]] = []

    def __len__(self) -> int:
        return len(self.points)

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, xy: Iterable[tuple], ids: Optional[Iterable[int]] = None) -> "Arrangement":
        """Static construction: sweep each dual line once, then bulk-build."""
        arr = cls()
        if ids is None:
            for x, y in xy:
                arr.points.add(x, y)
        else:
            for (x, y), pid in zip(xy, ids):
                arr.points.add(x, y, pid)
        arr._levels = [avl.build(v) for v in static_level_nodes(list(arr.points))]
        return arr

    def _crossings(self, q: Point) -> list[tuple]:
        out = []
        for r in self.points:
            if r.id == q.id:
                continue
            xc = (q.y - r.y) / (q.x - r.x)
            out.append((xc, q.x * xc - q.y, r))
        out.sort(key=lambda c: c[0])
        return out

    # -- updates -----------------------------------------------------------

    def insert_point(self, x, y, pid: Optional[int] = None) -> Point:
        q = self.points.add(x, y, pid)
        rest = self._levels
        lvl = 1 + sum(1 for r in self.points if r.x < q.x)
        tcur = None
        for xc, yc, r in self._crossings(q):
            new = lvl - 1 if r.x < q.x else lvl + 1
            s = (lvl if lvl < new else new) - 1
            a, b = _split_le(rest[s], xc)
            rest[s] = avl.join(tcur, CNode(xc, yc, q.id, r.id), b)
            tcur = avl.join(a, CNode(xc, yc, q.id, r.id), None)
            lvl = new
        rest.insert(lvl - 1, tcur)
        return q

    def delete_point(self, pid: int) -> Point:
        q = self.points[pid]
        cross = self._crossings(q)
        lvl = 1 + sum(1 for r in self.points if r.x < q.x)
        steps = []
        for xc, _, r in cross:
            new = lvl - 1 if r.x < q.x else lvl + 1
            steps.append((xc, (lvl if lvl < new else new) - 1))
            lvl = new
        rest = self._levels
        tcur = rest.pop(lvl - 1)
        for xc, s in reversed(steps):
            a, _ = avl.split_last(tcur)
            left, mid, b = avl.split(rest[s], _at(xc))
            assert mid is not None, "crossing vertex missing from its level"
            rest[s] = avl.join2(a, b)
            tcur = left
        assert tcur is None, "leftover chain after removing a line"
        self.points.remove(pid)
        return q

    def delete_at(self, x, y) -> Point:
        return self.delete_point(self.points.find(x, y))

    # -- queries -----------------------------------------------------------

    def chain(self, level: int) -> LevelChain:
        if not 1 <= level <= len(self._levels):
            raise OutOfRange(f"level {level} outside 1..{len(self._levels)}")
        return LevelChain(level, self._levels[level - 1])

    def chains(self) -> list[LevelChain]:
        return [LevelChain(i + 1, r) for i, r in enumerate(self._levels)]

    def report_cover_contour(self, k: int) -> Contour:
        """Boundary of the region of depth at least k/n."""
        n = len(self.points)
        if n == 0:
            return Contour("empty", [])
        if not 1 <= k <= (n + 1) // 2:
            raise OutOfRange(f"k={k} outside 1..{(n + 1) // 2}")
        if n == 1:
            p = next(iter(self.points))
            return Contour("point", [(p.x, p.y)])
        xs = [p.x for p in self.points]
        below = self.chain(n - k + 1).upper_hull()
        above = self.chain(k).lower_hull()
        return contour_between(above, below, min(xs), max(xs))


def static_level_nodes(points: list[Point]) -> list[list[CNode]]:
    """Fresh chain nodes of every level, each list sorted by x."""
    n = len(points)
    levels: list[list] = [[] for _ in range(n)]
    for i, q in enumerate(points):
        cross = []
        for j, r in enumerate(points):
            if j == i:
                continue
            xc = (q.y - r.y) / (q.x - r.x)
            cross.append((xc, j, r))
        cross.sort(key=lambda c: c[0])
        lvl = 1 + sum(1 for r in points if r.x < q.x)
        for xc, j, r in cross:
            new = lvl - 1 if r.x < q.x else lvl + 1
            if j > i:
                lo = lvl if lvl < new else new
                yc = q.x * xc - q.y
                levels[lo - 1].append((xc, yc, q.id, r.id))
                levels[lo].append((xc, yc, q.id, r.id))
            lvl = new
    out = []
    for verts in levels:
        verts.sort(key=lambda v: v[0])
        out.append([CNode(*v) for v in verts])
    return out


# -- contour assembly ----------------------------------------------------------

def _envelope(lines: list[tuple]) -> tuple[list, list]:
    """Breakpoints between consecutive lines ``(slope, intercept)``."""
    breaks = []
    for (m1, c1), (m2, c2) in zip(lines, lines[1:]):
        breaks.append((c2 - c1) / (m1 - m2))
    return lines, breaks


def _eval_sorted(lines, breaks, xs):
    out = []
    i = 0
    for x in xs:
        while i < len(breaks) and breaks[i] < x:
            i += 1
        m, c = lines[i]
        out.append(m * x + c)
    return out


def _eval(lines, x):
    return [m * x + c for m, c in lines]


def contour_between(above_pts: list, below_pts: list, xmin, xmax) -> Contour:
    """Intersect the primal half-planes encoded by two dual hulls.

    ``above_pts`` (lower hull of a level, by slope) are lines the region lies
    above; ``below_pts`` (upper hull) are lines it lies below.  The x-range of
    the data closes the region off.
    """
    if not above_pts or not below_pts:
        return Contour("empty", [])
    # dual vertex (s, t) is the primal line y = s*X - t
    lo_lines, lo_breaks = _envelope([(s, -t) for s, t in above_pts])
    hi_lines, hi_breaks = _envelope([(s, -t) for s, t in reversed(below_pts)])
    xs = sorted(
        {xmin, xmax}
        | {b for b in lo_breaks if xmin < b < xmax}
        | {b for b in hi_breaks if xmin < b < xmax}
    )
    lo = _eval_sorted(lo_lines, lo_breaks, xs)
    hi = _eval_sorted(hi_lines, hi_breaks, xs)
    gap = [h - l for h, l in zip(hi, lo)]
    inside = [i for i, g in enumerate(gap) if g >= 0]
    if not inside:
        return Contour("empty", [])
    i0, i1 = inside[0], inside[-1]

    def root(i, j):
        # zero of the gap on the segment between sample i and sample j
        return xs[i] + (xs[j] - xs[i]) * gap[i] / (gap[i] - gap[j])

    xl = xs[i0] if i0 == 0 else root(i0 - 1, i0)
    xr = xs[i1] if i1 == len(xs) - 1 else root(i1, i1 + 1)
    mid = [i for i in range(len(xs)) if xl < xs[i] < xr]
    ring = [(xl, max(_eval(lo_lines, xl)))]
    ring += [(xs[i], lo[i]) for i in mid]
    ring.append((xr, max(_eval(lo_lines, xr))))
    ring.append((xr, min(_eval(hi_lines, xr))))
    ring += [(xs[i], hi[i]) for i in reversed(mid)]
    ring.append((xl, min(_eval(hi_lines, xl))))
    return Contour.from_ring(ring)
