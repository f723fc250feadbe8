"""Command interpreter shared by the CLI: one mutable state, one command at a time."""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Optional

from dyndepth.cover import Arrangement
from dyndepth.fan import AnchorFan
from dyndepth.geometry import (
    Contour,
    GeneralPositionError,
    PointSet,
    SharedXCoordinate,
    UnknownPoint,
    coord,
    format_coord,
    parse_coord,
)
from dyndepth.rank import RankContours

MODES = ("fan", "rank", "cover", "all")


class ScriptError(ValueError):
    """Malformed command (usage problem, reported with its line number)."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class CommandFailed(Exception):
    """A well-formed command hit a geometry violation or unknown point."""

    def __init__(self, lineno: int, command: str, cause: Exception):
        super().__init__(f"line {lineno}: {command!r}: {cause}")
        self.lineno = lineno
        self.command = command
        self.cause = cause


def _xy(v) -> list[str]:
    return [format_coord(v[0]), format_coord(v[1])]


def contour_json(c: Contour) -> dict:
    return {"kind": c.kind, "vertices": [_xy(v) for v in c.vertices]}


def _distinct_shear(xy: list[tuple]):
    """Smallest shear from 0, 1, 1/2, 2, 1/3, 3, ... giving distinct x + s*y."""
    candidates = [coord(0)]
    k = 1
    while True:
        for s in candidates:
            xs = {x + s * y for x, y in xy}
            if len(xs) == len(xy):
                return s
        k += 1
        candidates = [coord(1) / k, coord(k)]


class Engine:
    """Holds the structures selected by ``mode`` and applies commands.

    ``fan`` mode keeps one fan per point whose depth has been asked for;
    ``rank`` keeps every depth; ``cover`` keeps the dual arrangement; ``all``
    keeps rank and cover together.

    The arrangement needs distinct x-coordinates, so it works on sheared
    copies ``(x + s*y, y)`` and contours are mapped back (depth is affine
    invariant).  ``shear=None`` picks ``s`` automatically and re-picks it,
    rebuilding the arrangement, when an insertion would collide; a fixed
    shear turns such a collision into a geometry error instead.
    """

    def __init__(self, mode: str = "all", shear=None):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.auto_shear = shear is None
        self.shear = coord(0 if shear is None else shear)
        self.points = PointSet()
        self.rank = RankContours() if mode in ("rank", "all") else None
        self.cover = Arrangement() if mode in ("cover", "all") else None
        self._fans: dict[int, AnchorFan] = {}

    def _sheared(self, x, y):
        return x + self.shear * y, y

    def _reshear(self, extra: tuple) -> None:
        pts = sorted(self.points, key=lambda p: p.id)
        self.shear = _distinct_shear([(p.x, p.y) for p in pts] + [extra])
        self.cover = Arrangement.build(
            [self._sheared(p.x, p.y) for p in pts], [p.id for p in pts]
        )
        self.cover.points._next_floor(self.points.next_id)

    # -- state changes -----------------------------------------------------

    def insert(self, x, y, pid: Optional[int] = None):
        x, y = coord(x), coord(y)
        self.points.validate_insert(x, y)
        if self.cover is not None:
            sx, sy = self._sheared(x, y)
            try:
                self.cover.points.validate_insert(sx, sy)
            except SharedXCoordinate:
                if not self.auto_shear:
                    raise
                self._reshear((x, y))
        p = self.points.add(x, y, pid)
        if self.rank is not None:
            self.rank.insert_point(x, y, p.id)
        if self.cover is not None:
            self.cover.insert_point(*self._sheared(x, y), p.id)
        for fan in self._fans.values():
            fan.on_point_inserted(p)
        return p

    def delete(self, x, y):
        pid = self.points.find(x, y)
        p = self.points.remove(pid)
        if self.rank is not None:
            self.rank.delete_point(pid)
        if self.cover is not None:
            self.cover.delete_point(pid)
        self._fans.pop(pid, None)
        for fan in self._fans.values():
            fan.on_point_deleted(p)
        return p

    # -- queries -----------------------------------------------------------

    def depth(self, x, y) -> tuple[int, int]:
        pid = self.points.find(x, y)
        n = len(self.points)
        if self.rank is not None:
            return self.rank.depth_of(pid)
        fan = self._fans.get(pid)
        if fan is None:
            fan = AnchorFan.build(self.points[pid], self.points)
            self._fans[pid] = fan
        return fan.depth_numerator, n

    def rank_contour(self, m: int) -> Contour:
        if self.rank is None:
            raise ValueError(f"rank contours need --mode rank or all, not {self.mode}")
        return self.rank.report_rank_contour(m)

    def cover_contour(self, k: int) -> Contour:
        if self.cover is None:
            raise ValueError(f"cover contours need --mode cover or all, not {self.mode}")
        c = self.cover.report_cover_contour(k)
        if not self.shear or not c.vertices:
            return c
        # a shear has determinant 1, so orientation survives the way back
        return Contour.from_ring([(x - self.shear * y, y) for x, y in c.vertices])

    def dump(self) -> dict:
        pts = sorted(self.points, key=lambda p: p.id)
        return {
            "mode": self.mode,
            "shear": None if self.auto_shear else format_coord(self.shear),
            "next_id": self.points.next_id,
            "points": [{"id": p.id, "x": format_coord(p.x), "y": format_coord(p.y)} for p in pts],
        }

    @classmethod
    def from_dump(cls, state: dict, mode: Optional[str] = None) -> "Engine":
        shear = state.get("shear")
        eng = cls(mode or state.get("mode", "all"), None if shear is None else parse_coord(shear))
        for rec in state["points"]:
            eng.insert(parse_coord(rec["x"]), parse_coord(rec["y"]), rec["id"])
        nxt = state.get("next_id", 0)
        eng.points._next_floor(nxt)
        for sub in (eng.rank, eng.cover):
            if sub is not None:
                sub.points._next_floor(nxt)
        return eng

    # -- scripts -----------------------------------------------------------

    def execute(self, line: str, lineno: int = 0) -> Optional[dict]:
        """Run one script line; returns its JSON object (None for blanks)."""
        text = line.strip()
        if not text or text.startswith("#"):
            return None
        parts = text.split()
        cmd, args = parts[0], parts[1:]
        arity = {"insert": 2, "delete": 2, "depth": 2, "rank-contour": 1,
                 "cover-contour": 1, "dump": 0}
        if cmd not in arity:
            raise ScriptError(lineno, f"unknown command {cmd!r}")
        if len(args) != arity[cmd]:
            raise ScriptError(lineno, f"{cmd} takes {arity[cmd]} argument(s)")
        try:
            if cmd in ("insert", "delete", "depth"):
                x, y = parse_coord(args[0]), parse_coord(args[1])
            elif cmd != "dump":
                num = int(args[0])
        except ValueError as exc:
            raise ScriptError(lineno, str(exc)) from None
        try:
            if cmd == "insert":
                p = self.insert(x, y)
                return {"insert": {"id": p.id, "x": format_coord(x), "y": format_coord(y)}}
            if cmd == "delete":
                p = self.delete(x, y)
                return {"delete": {"id": p.id, "x": format_coord(x), "y": format_coord(y)}}
            if cmd == "depth":
                k, n = self.depth(x, y)
                return {"depth": {"num": k, "den": n}}
            if cmd == "rank-contour":
                return {"rank-contour": {"m": num, **contour_json(self.rank_contour(num))}}
            if cmd == "cover-contour":
                return {"cover-contour": {"k": num, **contour_json(self.cover_contour(num))}}
            return {"dump": self.dump()}
        except (GeneralPositionError, UnknownPoint, ValueError) as exc:
            raise CommandFailed(lineno, text, exc) from exc

    def run(self, lines: Iterable[str]) -> Iterator[str]:
        for lineno, line in enumerate(lines, 1):
            out = self.execute(line, lineno)
            if out is not None:
                yield json.dumps(out, separators=(",", ":"))
