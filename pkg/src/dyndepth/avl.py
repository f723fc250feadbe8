"""Join-based AVL trees.

Every structural operation is expressed through two hooks on the node class:

* ``push()`` -- hand pending state down to the children before the node is
  taken apart (lazy additions, partial hulls, ...);
* ``pull()`` -- recompute the node's summary from its (now final) children.

``join``/``split`` call ``push`` on every node they take apart and ``pull``
on every node they assemble, so any augmentation that can be expressed with
those two hooks rides along for free.  All functions work on roots (``None``
is the empty tree) and return new roots.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional, Sequence, TypeVar

N = TypeVar("N", bound="AVLNode")


class AVLNode:
    __slots__ = ("left", "right", "height")

    def __init__(self):
        self.left = None
        self.right = None
        self.height = 1

    def push(self) -> None:
        pass

    def pull(self) -> None:
        pass


def height(t) -> int:
    return t.height if t is not None else 0


def node(left, n, right):
    """Assemble ``n`` with the given subtrees (no balancing)."""
    n.left = left
    n.right = right
    hl = left.height if left is not None else 0
    hr = right.height if right is not None else 0
    n.height = (hl if hl > hr else hr) + 1
    n.pull()
    return n


def _join_right(tl, k, tr):
    tl.push()
    l, c = tl.left, tl.right
    hr = tr.height if tr is not None else 0
    hc = c.height if c is not None else 0
    hl = l.height if l is not None else 0
    if hc <= hr + 1:
        if (hc if hc > hr else hr) + 1 <= hl + 1:
            return node(l, tl, node(c, k, tr))
        # double rotation: (l, tl, (c, k, tr)) with c becoming the new middle
        c.push()
        return node(node(l, tl, c.left), c, node(c.right, k, tr))
    t2 = _join_right(c, k, tr)
    if t2.height <= hl + 1:
        return node(l, tl, t2)
    # single left rotation at tl
    t2.push()
    return node(node(l, tl, t2.left), t2, t2.right)


def _join_left(tl, k, tr):
    tr.push()
    c, r = tr.left, tr.right
    hl = tl.height if tl is not None else 0
    hc = c.height if c is not None else 0
    hr = r.height if r is not None else 0
    if hc <= hl + 1:
        if (hc if hc > hl else hl) + 1 <= hr + 1:
            return node(node(tl, k, c), tr, r)
        c.push()
        return node(node(tl, k, c.left), c, node(c.right, tr, r))
    t2 = _join_left(tl, k, c)
    if t2.height <= hr + 1:
        return node(t2, tr, r)
    t2.push()
    return node(t2.left, t2, node(t2.right, tr, r))


def join(tl, k, tr):
    """Concatenate ``tl``, the single node ``k`` and ``tr`` (in that order)."""
    hl = tl.height if tl is not None else 0
    hr = tr.height if tr is not None else 0
    if hl > hr + 1:
        return _join_right(tl, k, tr)
    if hr > hl + 1:
        return _join_left(tl, k, tr)
    return node(tl, k, tr)


def _detach(n):
    n.left = n.right = None
    n.height = 1
    return n


def split_last(t):
    """Detach the last node: returns ``(rest, last)``."""
    t.push()
    if t.right is None:
        left = t.left
        return left, _detach(t)
    rest, last = split_last(t.right)
    return join(t.left, t, rest), last


def split_first(t):
    """Detach the first node: returns ``(first, rest)``."""
    t.push()
    if t.left is None:
        right = t.right
        return _detach(t), right
    first, rest = split_first(t.left)
    return first, join(rest, t, t.right)


def join2(tl, tr):
    if tl is None:
        return tr
    if tr is None:
        return tl
    rest, last = split_last(tl)
    return join(rest, last, tr)


def split(t, cmp: Callable) -> tuple:
    """Three-way split around a key.

    ``cmp(node)`` is negative when the key sorts before ``node``, zero when
    equal and positive after.  Returns ``(left, match_or_None, right)``; the
    matching node comes back detached.
    """
    if t is None:
        return None, None, None
    t.push()
    c = cmp(t)
    if c == 0:
        left, right = t.left, t.right
        return left, _detach(t), right
    if c < 0:
        ll, m, lr = split(t.left, cmp)
        return ll, m, join(lr, t, t.right)
    rl, m, rr = split(t.right, cmp)
    return join(t.left, t, rl), m, rr


def split_pred(t, goes_left: Callable) -> tuple:
    """Split so that the left part holds exactly the nodes with ``goes_left``.

    ``goes_left`` must be true on a prefix of the in-order sequence.
    """
    if t is None:
        return None, None
    t.push()
    if goes_left(t):
        rl, rr = split_pred(t.right, goes_left)
        return join(t.left, t, rl), rr
    ll, lr = split_pred(t.left, goes_left)
    return ll, join(lr, t, t.right)


def _fix(n):
    l, r = n.left, n.right
    hl = l.height if l is not None else 0
    hr = r.height if r is not None else 0
    n.height = (hl if hl > hr else hr) + 1
    n.pull()


def _rot_right(t):
    l = t.left
    l.push()
    t.left = l.right
    _fix(t)
    l.right = t
    _fix(l)
    return l


def _rot_left(t):
    r = t.right
    r.push()
    t.right = r.left
    _fix(t)
    r.left = t
    _fix(r)
    return r


def _rebalance(t):
    """Restore balance at ``t`` (already pushed) after one child changed."""
    l, r = t.left, t.right
    hl = l.height if l is not None else 0
    hr = r.height if r is not None else 0
    if hl > hr + 1:
        l.push()
        if height(l.left) < height(l.right):
            t.left = _rot_left(l)
        return _rot_right(t)
    if hr > hl + 1:
        r.push()
        if height(r.right) < height(r.left):
            t.right = _rot_right(r)
        return _rot_left(t)
    t.height = (hl if hl > hr else hr) + 1
    t.pull()
    return t


def insert(t, n, cmp: Callable):
    """Insert the detached node ``n``; ``cmp`` orders it against tree nodes.

    ``cmp(node)`` follows :func:`split`'s convention.  A zero raises
    ``KeyError`` before anything structural has changed.
    """
    if t is None:
        n.left = n.right = None
        n.height = 1
        n.pull()
        return n
    t.push()
    c = cmp(t)
    if c == 0:
        raise KeyError("key already present")
    if c < 0:
        t.left = insert(t.left, n, cmp)
    else:
        t.right = insert(t.right, n, cmp)
    return _rebalance(t)


def _remove_first(t):
    t.push()
    if t.left is None:
        return t.right, _detach(t)
    t.left, m = _remove_first(t.left)
    return _rebalance(t), m


def remove(t, cmp: Callable) -> tuple:
    """Delete the node matching ``cmp``: returns ``(root, node_or_None)``."""
    if t is None:
        return None, None
    t.push()
    c = cmp(t)
    if c < 0:
        t.left, m = remove(t.left, cmp)
    elif c > 0:
        t.right, m = remove(t.right, cmp)
    else:
        l, r = t.left, t.right
        if r is None:
            return l, _detach(t)
        r, s = _remove_first(r)
        s.left, s.right = l, r
        return _rebalance(s), _detach(t)
    if m is None:
        return t, None
    return _rebalance(t), m


def build(nodes: Sequence, lo: int = 0, hi: Optional[int] = None):
    """Balanced tree over ``nodes`` (already in order)."""
    if hi is None:
        hi = len(nodes)
    if lo >= hi:
        return None
    mid = (lo + hi) // 2
    return node(build(nodes, lo, mid), nodes[mid], build(nodes, mid + 1, hi))


def first(t):
    while t.left is not None:
        t = t.left
    return t


def last(t):
    while t.right is not None:
        t = t.right
    return t


def inorder(t) -> Iterator:
    """In-order node iteration without pushing pending state."""
    stack = []
    while stack or t is not None:
        while t is not None:
            stack.append(t)
            t = t.left
        t = stack.pop()
        yield t
        t = t.right


def check_balanced(t) -> int:
    """Validate heights and the AVL balance condition; return the height."""
    if t is None:
        return 0
    hl, hr = check_balanced(t.left), check_balanced(t.right)
    assert abs(hl - hr) <= 1, "AVL balance violated"
    assert t.height == max(hl, hr) + 1, "stale height"
    return t.height


def size(t) -> int:
    return sum(1 for _ in inorder(t))
