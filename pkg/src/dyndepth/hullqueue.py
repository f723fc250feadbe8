"""Concatenable queues holding upper convex hulls, plus bridge finding.

A hull is an AVL tree of :class:`HNode` in x order, threaded with ``prev`` /
``next`` links so a vertex's hull neighbours are O(1) away.  Threads are only
touched at the seams of :func:`split_after`, :func:`split_before` and
:func:`concat`.  Lower hulls reuse everything with negated y.

:func:`assemble` and :func:`disassemble` are the two halves of the
Overmars-van Leeuwen scheme for one tree node: merge the left child's hull,
the node's own vertex and the right child's hull, remembering the discarded
fragments so the merge can be undone exactly.
"""

from __future__ import annotations

from typing import Iterator, Optional

from dyndepth import avl


class HNode(avl.AVLNode):
    __slots__ = ("x", "y", "prev", "next")

    def __init__(self, x, y):
        self.left = None
        self.right = None
        self.height = 1
        self.x = x
        self.y = y
        self.prev = None
        self.next = None


def _first(t):
    while t.left is not None:
        t = t.left
    return t


def _last(t):
    while t.right is not None:
        t = t.right
    return t


def _split_le(t, x):
    """(nodes with key <= x, the rest) without touching threads."""
    if t is None:
        return None, None
    if t.x <= x:
        a, b = _split_le(t.right, x)
        return avl.join(t.left, t, a), b
    a, b = _split_le(t.left, x)
    return a, avl.join(b, t, t.right)


def _split_lt(t, x):
    if t is None:
        return None, None
    if t.x < x:
        a, b = _split_lt(t.right, x)
        return avl.join(t.left, t, a), b
    a, b = _split_lt(t.left, x)
    return a, avl.join(b, t, t.right)


def split_after(t, p: HNode):
    """Split right after vertex ``p`` (which must belong to ``t``)."""
    a, b = _split_le(t, p.x)
    r = p.next
    if r is not None:
        p.next = None
        r.prev = None
    return a, b


def split_before(t, q: HNode):
    a, b = _split_lt(t, q.x)
    l = q.prev
    if l is not None:
        q.prev = None
        l.next = None
    return a, b


def concat(a, b):
    if a is None:
        return b
    if b is None:
        return a
    la, fb = _last(a), _first(b)
    la.next = fb
    fb.prev = la
    if b.left is None and b.right is None:
        return avl.join(a, b, None)
    if a.left is None and a.right is None:
        return avl.join(None, a, b)
    if a.height <= b.height:
        rest, last = avl.split_last(a)
        return avl.join(rest, last, b)
    first, rest = avl.split_first(b)
    return avl.join(a, first, rest)


def pop_last(t):
    rest, last = avl.split_last(t)
    if rest is not None:
        last.prev.next = None
        last.prev = None
    return rest, last


def items(t) -> Iterator[tuple]:
    if t is None:
        return
    n = _first(t)
    while n is not None:
        yield (n.x, n.y)
        n = n.next


def bridge(a, b):
    """Upper common tangent of hulls ``a`` (left) and ``b`` (right).

    Returns the tangent vertices ``(p, q)``.  Collinear hull points are
    resolved toward the outer pair so the merged hull stays strictly convex.
    """
    max_a = _last(a).x
    min_b = _first(b).x
    p, q = a, b
    while True:
        px, py, qx, qy = p.x, p.y, q.x, q.y
        dx, dy = qx - px, qy - py
        pl, pr, ql, qr = p.prev, p.next, q.prev, q.next
        # side(r) > 0 iff r lies strictly above the line through p and q
        p_left = pl is not None and dx * (pl.y - py) - dy * (pl.x - px) >= 0
        p_right = (
            not p_left and pr is not None and dx * (pr.y - py) - dy * (pr.x - px) > 0
        )
        q_right = qr is not None and dx * (qr.y - py) - dy * (qr.x - px) >= 0
        q_left = (
            not q_right and ql is not None and dx * (ql.y - py) - dy * (ql.x - px) > 0
        )
        if p_left or q_right:
            if p_left:
                p = p.left
            if q_right:
                q = q.right
        elif p_right and q_left:
            # both edges leave the tangent line; their crossing tells which
            # side can be dropped
            s1 = (pr.y - py) / (pr.x - px)
            s2 = (qy - ql.y) / (qx - ql.x)
            sx = (qy - py + s1 * px - s2 * qx) / (s1 - s2)
            if sx < min_b:
                p = p.right
            if sx > max_a:
                q = q.left
        elif p_right:
            p = p.right
        elif q_left:
            q = q.left
        else:
            return p, q
        assert p is not None and q is not None, "bridge search left the hull"


def assemble(lh, v: HNode, rh):
    """Merge ``lh`` (left hull), the single vertex ``v`` and ``rh``.

    Returns ``(hull, q_left, q_mid, q_right, split_at)``: the merged hull, the
    fragments cut from the left hull, from the left-plus-vertex hull and from
    the right hull, and the left bridge vertex of the second merge.
    """
    if lh is None:
        h1, ql = v, None
    else:
        p, _ = bridge(lh, v)
        pre, ql = split_after(lh, p)
        h1 = avl.join(pre, v, None)
        p.next = v
        v.prev = p
    if rh is None:
        return h1, ql, None, None, v
    p, q = bridge(h1, rh)
    keep, qm = split_after(h1, p)
    qr, tail = split_before(rh, q)
    return concat(keep, tail), ql, qm, qr, p


def disassemble(h, ql, qm, qr, split_at):
    """Inverse of :func:`assemble`: returns ``(left_hull, v, right_hull)``."""
    keep, tail = split_after(h, split_at)
    h1 = concat(keep, qm)
    rh = concat(qr, tail)
    pre, v = pop_last(h1)
    return concat(pre, ql), v, rh


def upper_hull_static(xy: list) -> list:
    """Strict upper hull of points sorted by x (reference for tests/bulk use)."""
    out: list = []
    for q in xy:
        while len(out) >= 2:
            o, a = out[-2], out[-1]
            if (a[0] - o[0]) * (q[1] - o[1]) - (a[1] - o[1]) * (q[0] - o[0]) >= 0:
                out.pop()
            else:
                break
        out.append(q)
    return out


def check_threads(t) -> Optional[str]:
    """Return a description of the first thread inconsistency, if any."""
    seq = list(avl.inorder(t))
    for i, n in enumerate(seq):
        want_prev = seq[i - 1] if i else None
        want_next = seq[i + 1] if i + 1 < len(seq) else None
        if n.prev is not want_prev or n.next is not want_next:
            return f"bad thread at index {i}"
    return None
