"""Scaling measurements: dynamic update time against static recomputation.

Each row is ``(mode, n, mean_update_s, static_s)``.  A row's structure holds
``n`` seeded uniform points; the update time is the mean over ``reps``
insert/delete pairs of a fresh point (each half counted as one update), best
of ``rounds`` batches to shave scheduler noise.  Static time is the matching
from-scratch construction.
"""

from __future__ import annotations

import csv
import gc
import io
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from dyndepth.cover import Arrangement
from dyndepth.fan import AnchorFan
from dyndepth.geometry import GeneralPositionError, Point, PointSet
from dyndepth.rank import RankContours

GRID = 1 << 31

DEFAULT_SIZES = {
    "fan": [1 << e for e in range(10, 15)],
    "rank": [1 << e for e in range(6, 10)],
    "cover": [1 << e for e in range(7, 11)],
}
DEFAULT_REPS = {"fan": 400, "rank": 24, "cover": 6}


class ConfigError(ValueError):
    pass


@dataclass
class BenchConfig:
    mode: str
    sizes: list[int] = field(default_factory=list)
    seed: int = 0
    reps: int = 0
    rounds: int = 3

    def __post_init__(self):
        if self.mode not in DEFAULT_SIZES:
            raise ConfigError(f"mode must be one of {sorted(DEFAULT_SIZES)}, got {self.mode!r}")
        if not self.sizes:
            self.sizes = list(DEFAULT_SIZES[self.mode])
        if any(n < 3 for n in self.sizes):
            raise ConfigError("sizes must be at least 3")
        if self.reps <= 0:
            self.reps = DEFAULT_REPS[self.mode]
        if self.rounds <= 0:
            raise ConfigError("rounds must be positive")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError("seed must fit in 64 unsigned bits")


def _line_through(ax, ay, bx, by) -> tuple[int, int]:
    dx, dy = bx - ax, by - ay
    g = math.gcd(dx, dy)
    dx, dy = dx // g, dy // g
    return (dx, dy) if (dx, dy) > (0, 0) else (-dx, -dy)


def point_stream(seed: int, n: int) -> list[tuple[int, int]]:
    """``n`` uniform grid points in general position with distinct x.

    Same seed, same points.  The check is quadratic, which is fine for the
    arrangement and rank sizes; fans use :func:`fan_stream` instead.
    """
    rng = random.Random(seed)
    ps = PointSet(cover_mode=True)
    out = []
    while len(out) < n:
        x, y = rng.randrange(GRID), rng.randrange(GRID)
        try:
            ps.add(x, y)
        except GeneralPositionError:
            continue
        out.append((x, y))
    return out


def fan_stream(seed: int, n: int) -> list[tuple[int, int]]:
    """Uniform points whose directions from the first one are pairwise distinct.

    A fan only needs distinct directions around its anchor; collinear triples
    elsewhere do not matter, so the check stays linear.
    """
    rng = random.Random(seed)
    ax, ay = rng.randrange(GRID), rng.randrange(GRID)
    out, lines = [(ax, ay)], set()
    while len(out) < n:
        x, y = rng.randrange(GRID), rng.randrange(GRID)
        if (x, y) == (ax, ay):
            continue
        key = _line_through(ax, ay, x, y)
        if key in lines:
            continue
        lines.add(key)
        out.append((x, y))
    return out


def _timed(fn: Callable[[], object]) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


class _Harness:
    """Uniform interface over the three structures."""

    def __init__(self, mode: str, seed: int, n: int):
        self.mode = mode
        self.rng = random.Random(seed ^ 0x5EED)
        if mode == "fan":
            xy = fan_stream(seed, n)
            self.xy = xy
            self.pts = [Point(x, y, i) for i, (x, y) in enumerate(xy)]
            self.anchor = self.pts[0]
            self.lines = {_line_through(xy[0][0], xy[0][1], x, y) for x, y in xy[1:]}
            self.fan = AnchorFan.build(self.anchor, self.pts)
            return
        self.xy = xy = point_stream(seed, n)
        self.points = PointSet(cover_mode=True)
        for x, y in xy:
            self.points.add(x, y)
        if mode == "rank":
            self.rank = RankContours.build(xy)
        else:
            self.arr = Arrangement.build(xy)

    def fresh(self) -> tuple[int, int]:
        while True:
            x, y = self.rng.randrange(GRID), self.rng.randrange(GRID)
            if self.mode == "fan":
                a = self.anchor
                if (x, y) != (a.x, a.y) and _line_through(int(a.x), int(a.y), x, y) not in self.lines:
                    return x, y
                continue
            try:
                self.points.validate_insert(x, y)
            except GeneralPositionError:
                continue
            return x, y

    def insert(self, x, y) -> Callable[[], object]:
        if self.mode == "fan":
            q = self._last = Point(x, y, len(self.pts) + 1)
            return lambda: self.fan.on_point_inserted(q)
        self.points.add(x, y)
        if self.mode == "rank":
            return lambda: self.rank.insert_point(x, y)
        return lambda: self.arr.insert_point(x, y)

    def delete(self, x, y) -> Callable[[], object]:
        if self.mode == "fan":
            q = self._last
            return lambda: self.fan.on_point_deleted(q)
        self.points.remove(self.points.find(x, y))
        if self.mode == "rank":
            return lambda: self.rank.delete_at(x, y)
        return lambda: self.arr.delete_at(x, y)

    def static(self) -> Callable[[], object]:
        if self.mode == "fan":
            return lambda: AnchorFan.build(self.anchor, self.pts)
        if self.mode == "rank":
            return lambda: RankContours.build(self.xy)
        return lambda: Arrangement.build(self.xy)


def measure(mode: str, n: int, seed: int, reps: int, rounds: int = 3) -> tuple[float, float]:
    """(mean update seconds, static recompute seconds) at size ``n``.

    The same ``reps`` update points are replayed every round, so rounds differ
    only by timing noise; the quietest round is reported.
    """
    h = _Harness(mode, seed, n)
    stream = []
    for _ in range(reps):
        stream.append(h.fresh())
    enabled = gc.isenabled()
    gc.disable()
    try:
        best = float("inf")
        for _ in range(rounds):
            total = 0.0
            for x, y in stream:
                total += _timed(h.insert(x, y))
                total += _timed(h.delete(x, y))
            best = min(best, total / (2 * reps))
        static = min(_timed(h.static()) for _ in range(1 if mode != "fan" else rounds))
    finally:
        if enabled:
            gc.enable()
        gc.collect()
    return best, static


def run(config: BenchConfig, progress: Optional[Callable[[str], None]] = None) -> list[tuple]:
    rows = []
    for n in config.sizes:
        upd, static = measure(config.mode, n, config.seed, config.reps, config.rounds)
        rows.append((config.mode, n, upd, static))
        if progress:
            progress(f"{config.mode} n={n} update={upd:.6f}s static={static:.6f}s")
    return rows


def to_csv(rows: Iterable[tuple]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["mode", "n", "mean_update_s", "static_s"])
    for mode, n, upd, static in rows:
        w.writerow([mode, n, f"{upd:.9f}", f"{static:.9f}"])
    return buf.getvalue()


def ratios(rows: list[tuple]) -> list[float]:
    """time(2n)/time(n) between consecutive rows."""
    return [b[2] / a[2] for a, b in zip(rows, rows[1:])]
