import math

import pytest
from hypothesis import given, strategies as st

from dyndepth import avl


class K(avl.AVLNode):
    """Integer key with a subtree-size summary."""

    __slots__ = ("key", "count")

    def __init__(self, key):
        super().__init__()
        self.key = key
        self.count = 1

    def pull(self):
        self.count = 1 + sum(c.count for c in (self.left, self.right) if c is not None)


def by(key):
    return lambda n: (key > n.key) - (key < n.key)


def keys(t):
    return [n.key for n in avl.inorder(t)]


def check(t):
    h = avl.check_balanced(t)
    n = avl.size(t)
    assert h <= 1.45 * math.log2(n + 2)
    for node in avl.inorder(t):
        want = 1 + sum(c.count for c in (node.left, node.right) if c is not None)
        assert node.count == want


def tree(ks):
    return avl.build([K(k) for k in sorted(ks)])


@given(st.sets(st.integers(-1000, 1000), max_size=80), st.integers(-1000, 1000))
def test_split_then_join(ks, pivot):
    t = tree(ks)
    left, mid, right = avl.split(t, by(pivot))
    check(left)
    check(right)
    assert keys(left) == sorted(k for k in ks if k < pivot)
    assert keys(right) == sorted(k for k in ks if k > pivot)
    assert (mid is not None) == (pivot in ks)
    if mid is not None:
        back = avl.join(left, mid, right)
    else:
        back = avl.join2(left, right)
    check(back)
    assert keys(back) == sorted(ks)


@given(st.lists(st.tuples(st.booleans(), st.integers(0, 60)), max_size=200))
def test_insert_remove_against_set(ops):
    t, ref = None, set()
    for add, k in ops:
        if add:
            if k in ref:
                with pytest.raises(KeyError):
                    avl.insert(t, K(k), by(k))
            else:
                t = avl.insert(t, K(k), by(k))
                ref.add(k)
        else:
            t, m = avl.remove(t, by(k))
            assert (m is not None) == (k in ref)
            ref.discard(k)
        check(t)
        assert keys(t) == sorted(ref)


@given(st.sets(st.integers(0, 500), max_size=60), st.sets(st.integers(501, 1000), max_size=60))
def test_join_of_unequal_heights(a, b):
    left, right = tree(a), tree(b)
    t = avl.join(left, K(500), right) if 500 not in a else avl.join2(left, right)
    check(t)
    assert keys(t) == sorted(a | {500} | b)


@given(st.sets(st.integers(0, 100), max_size=50), st.integers(0, 100))
def test_split_pred(ks, cut):
    l, r = avl.split_pred(tree(ks), lambda n: n.key < cut)
    check(l)
    check(r)
    assert keys(l) == sorted(k for k in ks if k < cut)
    assert keys(r) == sorted(k for k in ks if k >= cut)


def test_first_last_and_split_ends():
    t = tree(range(10))
    assert avl.first(t).key == 0 and avl.last(t).key == 9
    rest, last = avl.split_last(t)
    assert last.key == 9 and keys(rest) == list(range(9))
    first, rest = avl.split_first(rest)
    assert first.key == 0 and keys(rest) == list(range(1, 9))
