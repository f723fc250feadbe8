"""Defining half-planes of an anchor and how they move under updates.

Angles below are measured counter-clockwise from the vector of ``l1`` ("rel"
angles).  With ``phi`` the rel angle of ``l2`` (always in ``(pi, 2*pi)``) the
two defining lines cut the plane into

* ``R1``: ``0 < rel < phi - pi`` (outside both half-planes)
* ``R3``: ``phi - pi < rel < pi`` (inside ``H2`` only)
* ``R4``: ``pi < rel < phi`` (inside both)
* ``R2``: ``phi < rel < 2*pi`` (inside ``H1`` only)

In fan terms: let ``M`` be the leaves of minimum count.  The anchor is on a
proper contour exactly when some counter-clockwise gap between consecutive
members of ``M`` exceeds pi.  That gap is unique; it starts at ``l1`` (always
a to-vector) and ends at ``l2`` (always an away-vector).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional


from dyndepth.fan import AnchorFan, FanLeaf, _first, _last, _leaf
from dyndepth.geometry import Point, angle_key, quadrant_start


class DegeneratePair(ValueError):
    pass


class StillDegenerate(ValueError):
    pass


class SearchExhausted(AssertionError):
    pass


class Region(enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    ON_LINE_TOWARD_EDGE = "on-line-toward-edge"
    ON_LINE_AWAY_FROM_EDGE = "on-line-away-from-edge"


class DefiningHalfPlane(NamedTuple):
    key: tuple
    partner_id: int
    dx: object
    dy: object

    @classmethod
    def of(cls, leaf: FanLeaf) -> "DefiningHalfPlane":
        return cls(leaf.key, leaf.pid, leaf.dx, leaf.dy)

    @property
    def antipode_key(self) -> tuple:
        return angle_key(-self.dx, -self.dy)


@dataclass(frozen=True)
class DefiningPair:
    l1: Optional[DefiningHalfPlane] = None
    l2: Optional[DefiningHalfPlane] = None

    @property
    def degenerate(self) -> bool:
        return self.l1 is None

    def as_set(self) -> set:
        return set() if self.degenerate else {self.l1, self.l2}

    def __str__(self) -> str:
        if self.degenerate:
            return "Degenerate"
        return f"NonDegenerate(l1->{self.l1.partner_id}, l2->{self.l2.partner_id})"


DEGENERATE = DefiningPair()


class DepthChange(enum.IntEnum):
    DOWN = -1
    UNCHANGED = 0
    UP = 1


# -- classification ----------------------------------------------------------

def classify(pair: DefiningPair, anchor: Point, q: Point) -> Region:
    if pair.degenerate:
        raise DegeneratePair("anchor is on a degenerate contour")
    dx, dy = q.x - anchor.x, q.y - anchor.y
    if dx == 0 and dy == 0:
        raise ValueError("q coincides with the anchor")
    l1, l2 = pair.l1, pair.l2
    s1 = l1.dx * dy - l1.dy * dx
    s2 = l2.dx * dy - l2.dy * dx
    # l1 points at its partner, l2 points away from its partner; the contour
    # edge on each line runs from the anchor toward the partner
    if s1 == 0:
        toward = l1.dx * dx + l1.dy * dy > 0
    elif s2 == 0:
        toward = l2.dx * dx + l2.dy * dy < 0
    else:
        in1, in2 = s1 < 0, s2 < 0
        if in1:
            return Region.R4 if in2 else Region.R2
        return Region.R3 if in2 else Region.R1
    return Region.ON_LINE_TOWARD_EDGE if toward else Region.ON_LINE_AWAY_FROM_EDGE


def depth_change_query(pair: DefiningPair, anchor: Point, q: Point, op: str) -> DepthChange:
    """Effect of inserting or deleting ``q`` on the anchor's depth numerator."""
    region = classify(pair, anchor, q)
    if op == "insert":
        if region in (Region.ON_LINE_TOWARD_EDGE, Region.ON_LINE_AWAY_FROM_EDGE):
            raise ValueError("inserted point would be collinear with a defining line")
        return DepthChange.UP if region is Region.R4 else DepthChange.UNCHANGED
    if op == "delete":
        if region in (Region.R1, Region.ON_LINE_TOWARD_EDGE):
            return DepthChange.UNCHANGED
        return DepthChange.DOWN
    raise ValueError(f"unknown op {op!r}")


# -- searches ----------------------------------------------------------------

def _need(leaf: Optional[FanLeaf], what: str) -> FanLeaf:
    if leaf is None:
        raise SearchExhausted(what)
    return leaf


def _quadrant_extremes(fan: AnchorFan, k: int) -> list:
    out = []
    for quad in range(4):
        lo, hi = quadrant_start(quad), quadrant_start(quad + 1)
        f = _first(fan.root, 0, lo, True, hi, False, k)
        if f is None:
            continue
        l = _last(fan.root, 0, lo, True, hi, False, k)
        out.append(_leaf(*f))
        if l[0] is not f[0]:
            out.append(_leaf(*l))
    return out


def _big_gap(fan: AnchorFan):
    """The counter-clockwise gap longer than pi between minimum-count leaves."""
    if fan.root is None:
        return None
    ext = _quadrant_extremes(fan, fan.min_depth())
    if len(ext) < 2:
        return None
    for a, b in zip(ext, ext[1:] + ext[:1]):
        if a.dx * b.dy - a.dy * b.dx < 0:
            return a, b
    return None


def degeneracy_test(fan: AnchorFan) -> bool:
    """True iff the anchor sits on a single-point or segment contour."""
    return _big_gap(fan) is None


def recover_defining(fan: AnchorFan) -> DefiningPair:
    gap = _big_gap(fan)
    if gap is None:
        raise StillDegenerate("anchor is still on a degenerate contour")
    a, b = gap
    assert a.to and not b.to, "gap must run from a to-vector to an away-vector"
    return DefiningPair(DefiningHalfPlane.of(a), DefiningHalfPlane.of(b))


def update_on_insert(pair: DefiningPair, fan: AnchorFan, q: Point) -> DefiningPair:
    """New defining pair after ``q`` was inserted (``fan`` already updated)."""
    region = classify(pair, fan.anchor, q)
    l1, l2 = pair.l1, pair.l2
    m = fan.min_depth()
    if region is Region.R1:
        return pair
    if region is Region.R3:
        # l2 gained q; the next minimum leaf past phi takes over
        nl2 = _need(fan.arc_first(l2.key, l1.key, m), "case R3 insert")
        return DefiningPair(l1, DefiningHalfPlane.of(nl2))
    if region is Region.R2:
        nl1 = _need(fan.arc_last(l2.key, l1.key, m), "case R2 insert")
        return DefiningPair(DefiningHalfPlane.of(nl1), l2)
    if region is Region.R4:
        tk, ak = fan.keys_of(q.id)
        x = fan.arc_first(l1.antipode_key, tk, m, False, True)
        y = fan.arc_last(ak, l2.antipode_key, m, True, False)
        if x is not None and y is not None:
            raise SearchExhausted("both defining half-planes moved")
        if x is not None:
            return DefiningPair(l1, DefiningHalfPlane.of(x))
        if y is not None:
            return DefiningPair(DefiningHalfPlane.of(y), l2)
        return pair
    raise ValueError("inserted point lies on a defining line")


def update_on_delete(pair: DefiningPair, fan: AnchorFan, q: Point) -> DefiningPair:
    """New defining pair after ``q`` was deleted (``fan`` already updated)."""
    l1, l2 = pair.l1, pair.l2
    m = fan.min_depth()
    dx, dy = q.x - fan.anchor.x, q.y - fan.anchor.y
    tk, ak = angle_key(dx, dy), angle_key(-dx, -dy)
    if q.id == l1.partner_id:
        y = fan.arc_last(l1.key, l1.antipode_key, m)
        if y is None:
            y = _need(fan.arc_last(l2.key, l1.key, m), "partner of l1 deleted")
        return DefiningPair(DefiningHalfPlane.of(y), l2)
    if q.id == l2.partner_id:
        x = fan.arc_first(l2.antipode_key, l2.key, m)
        if x is None:
            x = _need(fan.arc_first(l2.key, l1.key, m), "partner of l2 deleted")
        return DefiningPair(l1, DefiningHalfPlane.of(x))
    region = classify(pair, fan.anchor, q)
    if region is Region.R4:
        return pair
    if region is Region.R1:
        x = fan.arc_first(l1.antipode_key, ak, m)
        y = fan.arc_last(tk, l2.antipode_key, m)
        if x is not None and y is not None:
            raise SearchExhausted("both defining half-planes moved")
        if x is not None:
            return DefiningPair(l1, DefiningHalfPlane.of(x))
        if y is not None:
            return DefiningPair(DefiningHalfPlane.of(y), l2)
        return pair
    if region is Region.R3:
        nl1 = _need(fan.arc_last(l2.key, ak, m), "case R3 delete")
        return DefiningPair(DefiningHalfPlane.of(nl1), l2)
    if region is Region.R2:
        nl2 = _need(fan.arc_first(tk, l1.key, m), "case R2 delete")
        return DefiningPair(l1, DefiningHalfPlane.of(nl2))
    # Opposite the edge on a defining line needs a third collinear point;
    # fall back to a fresh reconstruction.
    return recover_defining(fan)


class DefiningTracker:
    """Keeps the defining pair of one anchor in step with its fan."""

    def __init__(self, fan: AnchorFan):
        self.fan = fan
        self.pair = DEGENERATE if degeneracy_test(fan) else recover_defining(fan)

    @property
    def anchor(self) -> Point:
        return self.fan.anchor

    def depth_change(self, q: Point, op: str) -> DepthChange:
        return depth_change_query(self.pair, self.anchor, q, op)

    def insert(self, q: Point) -> None:
        old = self.pair
        self.fan.on_point_inserted(q)
        self._settle(old, q, update_on_insert)

    def delete(self, q: Point) -> None:
        old = self.pair
        self.fan.on_point_deleted(q)
        self._settle(old, q, update_on_delete)

    def _settle(self, old: DefiningPair, q: Point, step) -> None:
        if degeneracy_test(self.fan):
            self.pair = DEGENERATE
        elif old.degenerate:
            self.pair = recover_defining(self.fan)
        else:
            self.pair = step(old, self.fan, q)
