import random

import pytest
from hypothesis import assume, settings, strategies as st

from dyndepth.geometry import GeneralPositionError, Point, PointSet

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def general_position(rng: random.Random, n: int, radius: int = 50, cover: bool = False) -> PointSet:
    """``n`` random integer points with no three collinear."""
    ps = PointSet(cover_mode=cover)
    while len(ps) < n:
        try:
            ps.add(rng.randint(-radius, radius), rng.randint(-radius, radius))
        except GeneralPositionError:
            pass
    return ps


def fresh_xy(rng: random.Random, ps: PointSet, radius: int = 50, tries: int = 500):
    for _ in range(tries):
        x, y = rng.randint(-radius, radius), rng.randint(-radius, radius)
        try:
            ps.validate_insert(x, y)
        except GeneralPositionError:
            continue
        return x, y
    return None


@st.composite
def point_sets(draw, min_size=1, max_size=12, radius=40, cover=False):
    """Hypothesis strategy: lists of Points in general position."""
    coords = draw(st.lists(
        st.tuples(st.integers(-radius, radius), st.integers(-radius, radius)),
        min_size=min_size, max_size=max_size * 3,
    ))
    ps = PointSet(cover_mode=cover)
    for x, y in coords:
        if len(ps) == max_size:
            break
        try:
            ps.add(x, y)
        except GeneralPositionError:
            pass
    assume(len(ps) >= min_size)
    return list(ps)


@pytest.fixture
def rng():
    return random.Random(20240607)


def pts(*xy) -> list[Point]:
    ps = PointSet()
    return [ps.add(x, y) for x, y in xy]


def contains(c, v):
    """Closed containment of ``v`` in a reported contour."""
    vs = c.vertices
    if c.kind == "point":
        return v == vs[0]
    if c.kind == "segment":
        (ax, ay), (bx, by) = vs
        cross = (bx - ax) * (v[1] - ay) - (by - ay) * (v[0] - ax)
        return cross == 0 and min(ax, bx) <= v[0] <= max(ax, bx) and min(ay, by) <= v[1] <= max(ay, by)
    m = len(vs)
    return all(
        (vs[(i + 1) % m][0] - vs[i][0]) * (v[1] - vs[i][1])
        - (vs[(i + 1) % m][1] - vs[i][1]) * (v[0] - vs[i][0]) >= 0
        for i in range(m)
    )
