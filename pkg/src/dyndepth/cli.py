"""``dyndepth`` command line: replay scripts, benchmark, export SVG."""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from dyndepth import bench, svg
from dyndepth.engine import MODES, CommandFailed, Engine, ScriptError
from dyndepth.geometry import GeneralPositionError, PointSet, parse_coord, read_points

EXIT_OK, EXIT_USAGE, EXIT_GEOMETRY, EXIT_IO = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _coord(text: str):
    try:
        return parse_coord(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sizes(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError("sizes are comma-separated integers") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dyndepth", description="Dynamic half-space depth contours.")
    sub = p.add_subparsers(dest="command", required=True)

    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=MODES, default="all")
    common.add_argument("--input", metavar="FILE", help="points ('x y' lines) or a dump JSON")
    common.add_argument("--shear", type=_coord, default=None, metavar="NUM",
                        help="fixed shear x + NUM*y for the arrangement (default: automatic)")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")

    run = sub.add_parser("run", parents=[common], help="execute a command script")
    run.add_argument("--script", metavar="FILE", help="command script (default: stdin)")

    b = sub.add_parser("bench", help="time dynamic updates against static rebuilds")
    b.add_argument("--mode", choices=sorted(bench.DEFAULT_SIZES), default="fan")
    b.add_argument("--sizes", type=_sizes, default=[], help="comma-separated n values")
    b.add_argument("--seed", type=_u64, default=0)
    b.add_argument("--reps", type=int, default=0, help="insert/delete pairs per size")
    b.add_argument("--rounds", type=int, default=3)
    b.add_argument("--out", metavar="FILE")

    e = sub.add_parser("export-svg", parents=[common], help="render nested contours")
    e.add_argument("--family", choices=("cover", "rank"), default="cover")
    e.add_argument("--seed", type=_u64, help="sample 50 normal points from this seed")
    e.add_argument("--count", type=int, default=50)
    return p


def _load(args) -> Engine:
    mode = getattr(args, "mode", "all")
    if not args.input:
        return Engine(mode, args.shear)
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        # a dump file, or a run transcript whose last dump wins
        state = None
        for line in text.splitlines():
            if line.strip():
                obj = json.loads(line)
                if "dump" in obj:
                    state = obj["dump"]
                elif "points" in obj:
                    state = obj
        if state is None:
            raise ValueError("no dump object in input")
        return Engine.from_dump(state, mode)
    eng = Engine(mode, args.shear)
    for x, y in read_points(text.splitlines()):
        eng.insert(x, y)
    return eng


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args) -> int:
    eng = _load(args)
    if args.script:
        with open(args.script, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = sys.stdin.read().splitlines()
    out = [] if args.out else None
    try:
        for line in eng.run(lines):
            if out is None:
                print(line, flush=True)
            else:
                out.append(line + "\n")
    finally:
        if out is not None:
            _emit("".join(out), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    try:
        cfg = bench.BenchConfig(args.mode, args.sizes, args.seed, args.reps, args.rounds)
    except bench.ConfigError as exc:
        raise _Usage(str(exc)) from None
    rows = bench.run(cfg, progress=lambda m: print(m, file=sys.stderr, flush=True))
    _emit(bench.to_csv(rows), args.out)
    return EXIT_OK


def normal_sample(seed: int, count: int, digits: int = 3) -> list[tuple]:
    """Seeded standard-normal points, rounded to ``digits`` decimals, in general position."""
    rng = random.Random(seed)
    ps = PointSet(cover_mode=True)
    while len(ps) < count:
        x = parse_coord(f"{rng.gauss(0, 1):.{digits}f}")
        y = parse_coord(f"{rng.gauss(0, 1):.{digits}f}")
        try:
            ps.add(x, y)
        except GeneralPositionError:
            continue
    return [(p.x, p.y) for p in sorted(ps, key=lambda p: p.id)]


def contour_family(eng: Engine, family: str) -> list[tuple[str, object]]:
    n = len(eng.points)
    if n == 0:
        return []
    if family == "cover":
        return [(f"k={k}", eng.cover_contour(k)) for k in range(1, (n + 1) // 2 + 1)]
    out = []
    for tenth in range(1, 11):
        m = max(1, -(-tenth * n // 10))
        out.append((f"{tenth * 10}%", eng.rank_contour(m)))
    return out


def _cmd_export_svg(args) -> int:
    if args.seed is not None:
        mode = args.mode if args.mode != "fan" else "all"
        eng = Engine(mode, args.shear)
        for x, y in normal_sample(args.seed, args.count):
            eng.insert(x, y)
    else:
        eng = _load(args)
    pts = [(p.x, p.y) for p in eng.points]
    _emit(svg.render(pts, contour_family(eng, args.family)), args.out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        handler = {"run": _cmd_run, "bench": _cmd_bench, "export-svg": _cmd_export_svg}
        return handler[args.command](args)
    except _Usage as exc:
        print(f"dyndepth: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScriptError as exc:
        print(f"dyndepth: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CommandFailed as exc:
        code = EXIT_GEOMETRY if isinstance(exc.cause, GeneralPositionError) else EXIT_USAGE
        print(f"dyndepth: {exc}", file=sys.stderr)
        return code
    except GeneralPositionError as exc:
        print(f"dyndepth: geometry violation: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except (ValueError, KeyError) as exc:
        print(f"dyndepth: bad input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"dyndepth: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
