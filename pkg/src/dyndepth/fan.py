"""Per-anchor angular structure over the meaningful half-planes.

For an anchor data point ``p`` every other data point ``q`` contributes two
leaves: the vector pointing at ``q`` ("to") and the opposite one ("away").
A leaf with direction ``v`` stands for the closed half-plane of points on the
right of ``v`` (clockwise angle from ``v`` at most pi), and carries the number
of data points in it.  Inserting ``q`` adds one to every leaf whose direction
lies in the closed counter-clockwise arc from ``q_to`` to ``q_away``.

The leaves live in a join-based AVL tree ordered by angle.  Internal nodes
keep subtree minimum and maximum counts plus a pending addition for their
children, so arc updates, the minimum and directional count searches are all
``O(log n)``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple, Optional

from dyndepth import avl
from dyndepth.geometry import Point, angle_key, antipode_key


class EmptyTree(LookupError):
    pass


class DuplicateDirection(ValueError):
    pass


class MissingDirection(KeyError):
    pass


class FanNode(avl.AVLNode):
    """Leaf and internal node at once.

    Nodes point at the shared contributing point and anchor rather than
    holding their own direction; ``dx, dy`` are derived on demand.
    """

    __slots__ = ("key", "pt", "anc", "depth", "to", "mn", "mx", "lazy")

    def __init__(self, key, pt, anc, depth, to):
        self.left = None
        self.right = None
        self.height = 1
        self.key = key
        self.pt = pt
        self.anc = anc
        self.depth = depth
        self.to = to
        self.mn = depth
        self.mx = depth
        self.lazy = 0

    @property
    def pid(self) -> int:
        return self.pt.id

    @property
    def dx(self):
        return self.pt.x - self.anc.x if self.to else self.anc.x - self.pt.x

    @property
    def dy(self):
        return self.pt.y - self.anc.y if self.to else self.anc.y - self.pt.y

    def _add(self, d):
        self.depth += d
        self.mn += d
        self.mx += d
        self.lazy += d

    def push(self):
        d = self.lazy
        if d:
            if self.left is not None:
                self.left._add(d)
            if self.right is not None:
                self.right._add(d)
            self.lazy = 0

    def pull(self):
        # children's summaries are in their own frame; lift them by our lazy
        mn = mx = self.depth
        l, r, d = self.left, self.right, self.lazy
        if l is not None:
            if l.mn + d < mn:
                mn = l.mn + d
            if l.mx + d > mx:
                mx = l.mx + d
        if r is not None:
            if r.mn + d < mn:
                mn = r.mn + d
            if r.mx + d > mx:
                mx = r.mx + d
        self.mn = mn
        self.mx = mx


class FanLeaf(NamedTuple):
    key: tuple
    dx: object
    dy: object
    depth: int
    to: bool
    pid: int


def _leaf(n: FanNode, acc: int) -> FanLeaf:
    return FanLeaf(n.key, n.dx, n.dy, n.depth + acc, n.to, n.pid)


def _key_pair(dx, dy) -> tuple:
    """Keys of ``(dx, dy)`` and its antipode; both share one ratio object."""
    tk = angle_key(dx, dy)
    return tk, antipode_key(tk)


# -- path updates ------------------------------------------------------------

def _add_from(t, key, d, inclusive):
    """Add ``d`` to every leaf with key >= ``key`` (> if not inclusive).

    Pending additions stay where they are; only the path and the right
    siblings hanging off it are touched.
    """
    if t is None:
        return
    if t.key > key or (inclusive and t.key == key):
        t.depth += d
        if t.right is not None:
            t.right._add(d)
        _add_from(t.left, key, d, inclusive)
    else:
        _add_from(t.right, key, d, inclusive)
    t.pull()


# -- searches ----------------------------------------------------------------

def _first(t, acc, lo, lo_incl, hi, hi_incl, k):
    """First node (in key order) with lo <(=) key <(=) hi and depth k."""
    while t is not None:
        if not (t.mn + acc <= k <= t.mx + acc):
            return None
        key = t.key
        child_acc = acc + t.lazy
        if lo is not None and (key < lo or (key == lo and not lo_incl)):
            t, acc = t.right, child_acc
            continue
        if hi is not None and (key > hi or (key == hi and not hi_incl)):
            t, acc = t.left, child_acc
            continue
        found = _first(t.left, child_acc, lo, lo_incl, None, False, k)
        if found is not None:
            return found
        if t.depth + acc == k:
            return (t, acc)
        t, acc, lo = t.right, child_acc, None
    return None


def _last(t, acc, lo, lo_incl, hi, hi_incl, k):
    while t is not None:
        if not (t.mn + acc <= k <= t.mx + acc):
            return None
        key = t.key
        child_acc = acc + t.lazy
        if lo is not None and (key < lo or (key == lo and not lo_incl)):
            t, acc = t.right, child_acc
            continue
        if hi is not None and (key > hi or (key == hi and not hi_incl)):
            t, acc = t.left, child_acc
            continue
        found = _last(t.right, child_acc, None, False, hi, hi_incl, k)
        if found is not None:
            return found
        if t.depth + acc == k:
            return (t, acc)
        t, acc, hi = t.left, child_acc, None
    return None


def _pred(t, key):
    """Last node with key < ``key`` as (node, acc)."""
    best = None
    acc = 0
    while t is not None:
        if t.key < key:
            best = (t, acc)
            acc += t.lazy
            t = t.right
        else:
            acc += t.lazy
            t = t.left
    return best


def _extreme(t, right: bool):
    acc = 0
    while True:
        nxt = t.right if right else t.left
        if nxt is None:
            return t, acc
        acc += t.lazy
        t = nxt


class AnchorFan:
    """Depth structure anchored at one data point."""

    def __init__(self, anchor: Point):
        self.anchor = anchor
        self.root: Optional[FanNode] = None
        self.n = 1
        self._keys: dict[int, tuple] = {}

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, anchor: Point, others: Iterable[Point]) -> "AnchorFan":
        """Sort all vectors around ``anchor`` and label them in one sweep."""
        fan = cls(anchor)
        px, py = anchor.x, anchor.y
        raw = []
        for q in others:
            if q.id == anchor.id:
                continue
            tk, ak = _key_pair(q.x - px, q.y - py)
            raw.append((tk, q, True))
            raw.append((ak, q, False))
            fan._keys[q.id] = (tk, ak)
        fan.n = len(raw) // 2 + 1
        if not raw:
            return fan
        raw.sort(key=lambda r: r[0])
        for i in range(1, len(raw)):
            if raw[i][0] == raw[i - 1][0]:
                raise DuplicateDirection(raw[i][0])
        # Count the first half-plane directly, then walk with the crossing rule.
        _, q0, to0 = raw[0]
        dx0, dy0 = q0.x - px, q0.y - py
        if not to0:
            dx0, dy0 = -dx0, -dy0
        depth = 1 + sum(
            1 for (_, q, to) in raw if to and dx0 * (q.y - py) - dy0 * (q.x - px) <= 0
        )
        nodes = []
        prev_away = False
        for i, (key, q, to) in enumerate(raw):
            if i:
                depth += int(to) - int(prev_away)
            nodes.append(FanNode(key, q, anchor, depth, to))
            prev_away = not to
        fan.root = avl.build(nodes)
        return fan

    # -- primitive operations ---------------------------------------------

    def increment_range(self, left: tuple, right: tuple, delta: int = 1) -> None:
        """Add ``delta`` to every leaf in the closed counter-clockwise arc."""
        if self.root is None:
            raise EmptyTree("fan is empty")
        if left == right:
            raise ValueError("degenerate arc")
        if left < right:
            _add_from(self.root, left, delta, True)
            _add_from(self.root, right, -delta, False)
        else:
            # [left, end] + [start, right] is the complement of (right, left)
            self.root._add(delta)
            _add_from(self.root, right, -delta, False)
            _add_from(self.root, left, delta, True)

    def decrement_range(self, left: tuple, right: tuple) -> None:
        self.increment_range(left, right, -1)

    def insert_vector(self, key, depth: int, to: bool, q: Point) -> None:
        """Add one leaf contributed by ``q`` (its to- or away-direction)."""
        self._insert_node(FanNode(key, q, self.anchor, depth, to))

    def _insert_node(self, node: FanNode) -> None:
        key = node.key
        try:
            self.root = avl.insert(self.root, node, _cmp_key(key))
        except KeyError:
            raise DuplicateDirection(key) from None

    def remove_vector(self, key) -> FanLeaf:
        self.root, match = avl.remove(self.root, _cmp_key(key))
        if match is None:
            raise MissingDirection(key)
        return FanLeaf(match.key, match.dx, match.dy, match.depth, match.to, match.pid)

    def min_depth(self) -> int:
        if self.root is None:
            raise EmptyTree("fan is empty")
        return self.root.mn

    def max_depth(self) -> int:
        if self.root is None:
            raise EmptyTree("fan is empty")
        return self.root.mx

    @property
    def depth_numerator(self) -> int:
        if self.root is None:
            return self.n
        return self.root.mn - 1

    # -- point updates -----------------------------------------------------

    def on_point_inserted(self, q: Point) -> None:
        if q.id == self.anchor.id or q.id in self._keys:
            raise ValueError(f"point {q.id} already tracked")
        tk, ak = _key_pair(q.x - self.anchor.x, q.y - self.anchor.y)
        self.n += 1
        if self.root is None:
            depth_to = 2
        else:
            self.increment_range(tk, ak)
            pred = _pred(self.root, tk)
            node, acc = pred if pred is not None else _extreme(self.root, True)
            # crossing a to-vector counter-clockwise gains its point,
            # crossing an away-vector loses it
            depth_to = node.depth + acc + 1 - (0 if node.to else 1)
        self._insert_node(FanNode(tk, q, self.anchor, depth_to, True))
        self._insert_node(FanNode(ak, q, self.anchor, self.n + 2 - depth_to, False))
        self._keys[q.id] = (tk, ak)

    def on_point_deleted(self, q: Point) -> None:
        try:
            tk, ak = self._keys.pop(q.id)
        except KeyError:
            raise MissingDirection(q.id) from None
        self.decrement_range(tk, ak)
        self.remove_vector(tk)
        self.remove_vector(ak)
        self.n -= 1

    # -- queries -----------------------------------------------------------

    def keys_of(self, pid: int) -> tuple:
        return self._keys[pid]

    def leaves(self) -> Iterator[FanLeaf]:
        """Leaves in counter-clockwise order with effective depths."""
        out = []

        def walk(t, acc):
            if t is None:
                return
            walk(t.left, acc + t.lazy)
            out.append(_leaf(t, acc))
            walk(t.right, acc + t.lazy)

        walk(self.root, 0)
        return iter(out)

    def depth_at(self, key) -> int:
        t, acc = self.root, 0
        while t is not None:
            if key == t.key:
                return t.depth + acc
            acc += t.lazy
            t = t.left if key < t.key else t.right
        raise MissingDirection(key)

    def arc_first(self, a, b, k: int, a_incl: bool = False, b_incl: bool = False):
        """First leaf of depth ``k`` walking counter-clockwise from ``a`` to ``b``.

        ``a == b`` with ``a_incl`` false and ``b_incl`` true is the full turn.
        """
        if self.root is None:
            return None
        if a < b:
            r = _first(self.root, 0, a, a_incl, b, b_incl, k)
        else:
            r = _first(self.root, 0, a, a_incl, None, False, k)
            if r is None:
                r = _first(self.root, 0, None, False, b, b_incl, k)
        return None if r is None else _leaf(*r)

    def arc_last(self, a, b, k: int, a_incl: bool = False, b_incl: bool = False):
        """First leaf of depth ``k`` walking clockwise from ``b`` back to ``a``."""
        if self.root is None:
            return None
        if a < b:
            r = _last(self.root, 0, a, a_incl, b, b_incl, k)
        else:
            r = _last(self.root, 0, None, False, b, b_incl, k)
            if r is None:
                r = _last(self.root, 0, a, a_incl, None, False, k)
        return None if r is None else _leaf(*r)

    def next(self, start, k: int) -> Optional[FanLeaf]:
        """First leaf strictly counter-clockwise after ``start`` with depth ``k``."""
        return self.arc_first(start, start, k, False, True)

    def prev(self, start, k: int) -> Optional[FanLeaf]:
        return self.arc_last(start, start, k, True, False)

    def height(self) -> int:
        return avl.height(self.root)

    def __len__(self) -> int:
        return 2 * (self.n - 1)

    def snapshot(self) -> list[tuple]:
        return [(l.key, l.depth, l.to, l.pid) for l in self.leaves()]

    def flush(self) -> None:
        """Push every pending addition to the leaves and recompute summaries."""

        def walk(t):
            if t is None:
                return
            t.push()
            walk(t.left)
            walk(t.right)
            t.pull()

        walk(self.root)


def _cmp_key(key):
    def cmp(node):
        k = node.key
        return -1 if key < k else (1 if key > k else 0)

    return cmp
