"""Rank-based depth contours under insertions and deletions.

Every data point owns an :class:`AnchorFan` (and, by default, a defining
half-plane tracker).  Points sit in buckets indexed by depth numerator and in
an x-sorted index, so a rank contour is a bucket walk followed by one linear
hull pass over the pre-sorted points.
"""

from __future__ import annotations

import bisect
import warnings
from typing import Iterator, Optional

from dyndepth.fan import AnchorFan
from dyndepth.geometry import Contour, Point, PointSet, UnknownPoint, coord
from dyndepth.tracker import DefiningTracker


class OutOfRange(ValueError):
    pass


def _turn(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_of_sorted(xy: list) -> list:
    """Monotone chain over points already sorted by (x, y)."""
    if len(xy) <= 2:
        return list(xy)
    lower: list = []
    for q in xy:
        while len(lower) >= 2 and _turn(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    upper: list = []
    for q in reversed(xy):
        while len(upper) >= 2 and _turn(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    return lower[:-1] + upper[:-1]


class RankContours:
    """Depth of every data point plus rank-contour reporting.

    Args:
        track_defining: keep a defining-pair tracker per anchor (the default);
            plain fans suffice for depths alone.
        warn_above: emit a warning once the quadratic-space structure grows
            past this many points.
    """

    def __init__(self, track_defining: bool = True, warn_above: int = 4096):
        self.points = PointSet()
        self.track_defining = track_defining
        self.warn_above = warn_above
        self._fans: dict[int, AnchorFan] = {}
        self._trackers: dict[int, DefiningTracker] = {}
        self._buckets: list[dict[int, None]] = [{}]
        self._bucket_of: dict[int, int] = {}
        self._xindex: list[tuple] = []

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def build(cls, xy, track_defining: bool = True) -> "RankContours":
        """Static construction: one sorted sweep per anchor."""
        rc = cls(track_defining=track_defining)
        for x, y in xy:
            rc.points.add(x, y)
        pts = list(rc.points)
        rc._resize(len(pts))
        for p in pts:
            fan = AnchorFan.build(p, pts)
            rc._fans[p.id] = fan
            if track_defining:
                rc._trackers[p.id] = DefiningTracker(fan)
            rc._place(p.id, fan.depth_numerator)
        rc._xindex = sorted((p.x, p.y, p.id) for p in pts)
        return rc

    # -- updates -----------------------------------------------------------

    def insert_point(self, x, y, pid: Optional[int] = None) -> Point:
        q = self.points.add(coord(x), coord(y), pid)
        n = len(self.points)
        if n == self.warn_above + 1:
            warnings.warn(f"rank structure holds {n} points; space is quadratic")
        self._resize(n)
        for aid, fan in self._fans.items():
            tracker = self._trackers.get(aid)
            if tracker is not None:
                tracker.insert(q)
            else:
                fan.on_point_inserted(q)
            self._move(aid, fan.depth_numerator)
        fan = AnchorFan.build(q, self.points)
        self._fans[q.id] = fan
        if self.track_defining:
            self._trackers[q.id] = DefiningTracker(fan)
        self._place(q.id, fan.depth_numerator)
        bisect.insort(self._xindex, (q.x, q.y, q.id))
        return q

    def delete_point(self, pid: int) -> Point:
        q = self.points.remove(pid)
        del self._fans[pid]
        self._trackers.pop(pid, None)
        self._buckets[self._bucket_of.pop(pid)].pop(pid)
        i = bisect.bisect_left(self._xindex, (q.x, q.y, q.id))
        del self._xindex[i]
        for aid, fan in self._fans.items():
            tracker = self._trackers.get(aid)
            if tracker is not None:
                tracker.delete(q)
            else:
                fan.on_point_deleted(q)
            self._move(aid, fan.depth_numerator)
        self._resize(len(self.points))
        return q

    def delete_at(self, x, y) -> Point:
        return self.delete_point(self.points.find(x, y))

    def _resize(self, n: int) -> None:
        # depth numerators never exceed ceil(n/2) (n = 1 gives 1)
        want = (n + 1) // 2 + 1
        while len(self._buckets) < want:
            self._buckets.append({})
        while len(self._buckets) > want and not self._buckets[-1]:
            self._buckets.pop()

    def _place(self, pid: int, k: int) -> None:
        self._buckets[k][pid] = None
        self._bucket_of[pid] = k

    def _move(self, pid: int, k: int) -> None:
        old = self._bucket_of[pid]
        if old == k:
            return
        assert abs(old - k) == 1, "depth moved by more than one step"
        del self._buckets[old][pid]
        self._place(pid, k)

    # -- queries -----------------------------------------------------------

    def depth_of(self, pid: int) -> tuple[int, int]:
        try:
            return self._bucket_of[pid], len(self.points)
        except KeyError:
            raise UnknownPoint(pid) from None

    def fan(self, pid: int) -> AnchorFan:
        return self._fans[pid]

    def tracker(self, pid: int) -> Optional[DefiningTracker]:
        return self._trackers.get(pid)

    def buckets(self) -> dict[int, list[int]]:
        return {k: list(b) for k, b in enumerate(self._buckets) if b}

    def max_depth(self) -> int:
        for k in range(len(self._buckets) - 1, -1, -1):
            if self._buckets[k]:
                return k
        return 0

    def ranking(self) -> Iterator[int]:
        """Point ids from deepest to shallowest; ties in bucket-entry order."""
        for k in range(len(self._buckets) - 1, -1, -1):
            yield from self._buckets[k]

    def report_rank_contour(self, m: int) -> Contour:
        """Convex hull of the ``m`` deepest points."""
        n = len(self.points)
        if not 1 <= m <= n:
            raise OutOfRange(f"m={m} outside 1..{n}")
        chosen = set()
        for pid in self.ranking():
            if len(chosen) == m:
                break
            chosen.add(pid)
        xy = [(x, y) for (x, y, pid) in self._xindex if pid in chosen]
        return Contour.from_ring(hull_of_sorted(xy))

    def report_fraction(self, alpha) -> Contour:
        """Rank contour enclosing the ``alpha`` most central fraction."""
        n = len(self.points)
        m = max(1, min(n, int(-(-coord(alpha) * n // 1))))
        return self.report_rank_contour(m)
