import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from dyndepth import bench, svg
from dyndepth.cli import contour_family, main, normal_sample
from dyndepth.engine import Engine, ScriptError
from dyndepth.geometry import Contour

TRIANGLE = ["insert 0 0", "insert 4 0", "insert 0 4"]


def run(tmp_path, lines, *flags, capsys):
    script = tmp_path / "s.txt"
    script.write_text("\n".join(lines) + "\n")
    code = main(["run", "--script", str(script), *flags])
    out, err = capsys.readouterr()
    return code, [json.loads(l) for l in out.splitlines()], err


class TestRun:
    def test_depth_example(self, tmp_path, capsys):
        code, out, _ = run(tmp_path, TRIANGLE + ["depth 0 0"], capsys=capsys)
        assert code == 0
        assert out[-1] == {"depth": {"num": 1, "den": 3}}

    def test_cover_contour_example(self, tmp_path, capsys):
        code, out, _ = run(tmp_path, TRIANGLE + ["cover-contour 1"], capsys=capsys)
        c = out[-1]["cover-contour"]
        assert c == {"k": 1, "kind": "polygon", "vertices": [["0", "0"], ["4", "0"], ["0", "4"]]}

    def test_rank_contour_example(self, tmp_path, capsys):
        lines = ["insert 0 0", "insert 12 0", "insert 0 12", "insert 3 3", "rank-contour 1"]
        _, out, _ = run(tmp_path, lines, capsys=capsys)
        assert out[-1]["rank-contour"] == {"m": 1, "kind": "point", "vertices": [["3", "3"]]}

    @pytest.mark.parametrize("mode", ["fan", "rank", "cover", "all"])
    def test_modes_agree_on_depth(self, tmp_path, capsys, mode):
        lines = TRIANGLE + ["insert 1 1", "depth 1 1", "delete 1 1", "depth 0 0"]
        code, out, _ = run(tmp_path, lines, "--mode", mode, capsys=capsys)
        assert code == 0
        assert out[4] == {"depth": {"num": 2, "den": 4}}
        assert out[-1] == {"depth": {"num": 1, "den": 3}}

    def test_exact_rationals(self, tmp_path, capsys):
        lines = ["insert 1/3 0", "insert 0.5 2", "insert -1 1/7", "cover-contour 1"]
        _, out, _ = run(tmp_path, lines, capsys=capsys)
        assert out[0]["insert"] == {"id": 0, "x": "1/3", "y": "0"}
        assert ["1/2", "2"] in out[-1]["cover-contour"]["vertices"]

    def test_replay_is_byte_identical(self, tmp_path):
        pts = normal_sample(5, 12)
        lines = [f"insert {x} {y}" for x, y in pts] + ["cover-contour 2", "rank-contour 6", "dump"]
        script = tmp_path / "s.txt"
        script.write_text("\n".join(lines) + "\n")
        outs = []
        for _ in range(2):
            assert main(["run", "--script", str(script), "--out", str(tmp_path / "o.txt")]) == 0
            outs.append((tmp_path / "o.txt").read_bytes())
        assert outs[0] == outs[1] and outs[0].count(b"\n") == len(lines)

    def test_dump_round_trip(self, tmp_path, capsys):
        pts = normal_sample(6, 10)
        lines = [f"insert {x} {y}" for x, y in pts] + ["delete %s %s" % pts[3], "dump"]
        _, out, _ = run(tmp_path, lines, capsys=capsys)
        dump = out[-1]["dump"]
        f = tmp_path / "d.json"
        f.write_text(json.dumps(dump))
        probe = ["cover-contour 2", "rank-contour 4", "depth %s %s" % pts[0], "insert 9 9", "dump"]
        _, a, _ = run(tmp_path, lines[:-1] + probe, capsys=capsys)
        _, b, _ = run(tmp_path, probe, "--input", str(f), capsys=capsys)
        assert a[-len(probe):] == b
        assert b[-2]["insert"]["id"] == dump["next_id"]

    def test_points_file_input(self, tmp_path, capsys):
        f = tmp_path / "p.txt"
        f.write_text("# triangle\n0 0\n4 0\n0 4\n")
        _, out, _ = run(tmp_path, ["depth 4 0"], "--input", str(f), capsys=capsys)
        assert out == [{"depth": {"num": 1, "den": 3}}]


class TestExitCodes:
    def test_collinear_is_geometry(self, tmp_path, capsys):
        code, _, err = run(tmp_path, ["insert 0 0", "insert 4 0", "insert 2 0"], capsys=capsys)
        assert code == 2 and "line 3" in err and "insert 2 0" in err

    def test_fixed_shear_collision(self, tmp_path, capsys):
        code, _, _ = run(tmp_path, ["insert 0 0", "insert 0 4"], "--shear", "0", capsys=capsys)
        assert code == 2

    def test_auto_shear_handles_shared_x(self, tmp_path, capsys):
        code, out, _ = run(tmp_path, TRIANGLE + ["cover-contour 1"], "--mode", "cover", capsys=capsys)
        assert code == 0 and out[-1]["cover-contour"]["kind"] == "polygon"

    @pytest.mark.parametrize("line", ["frobnicate", "insert 1", "depth a b", "rank-contour x"])
    def test_parse_errors(self, tmp_path, capsys, line):
        code, _, err = run(tmp_path, ["insert 0 0", line], capsys=capsys)
        assert code == 1 and "line 2" in err

    def test_unknown_point(self, tmp_path, capsys):
        code, _, _ = run(tmp_path, ["insert 0 0", "delete 1 1"], capsys=capsys)
        assert code == 1

    def test_usage(self, capsys):
        assert main(["run", "--mode", "nope"]) == 1
        assert main([]) == 1
        assert main(["bench", "--mode", "fan", "--sizes", "2"]) == 1

    def test_missing_file(self, tmp_path, capsys):
        assert main(["run", "--script", str(tmp_path / "missing")]) == 3

    def test_engine_script_error_has_line(self):
        with pytest.raises(ScriptError) as exc:
            list(Engine().run(["", "# c", "bogus"]))
        assert exc.value.lineno == 3


class TestSvg:
    def test_triangle(self, tmp_path, capsys):
        f = tmp_path / "p.txt"
        f.write_text("0 0\n4 0\n0 4\n")
        assert main(["export-svg", "--input", str(f), "--out", str(tmp_path / "t.svg")]) == 0
        root = ET.parse(tmp_path / "t.svg").getroot()
        ns = "{http://www.w3.org/2000/svg}"
        assert len(root.findall(f".//{ns}polyline")) == 1
        assert len(root.findall(f".//{ns}circle")) == 3

    def test_empty(self):
        root = ET.fromstring(svg.render([], []))
        assert root.tag.endswith("svg")

    def test_fifty_point_families(self, tmp_path):
        eng = Engine()
        for x, y in normal_sample(50, 50):
            eng.insert(x, y)
        cover = contour_family(eng, "cover")
        rank = contour_family(eng, "rank")
        assert len(rank) == 10
        assert len(cover) == 25
        kinds = [c.kind for _, c in cover]
        assert kinds[0] == "polygon"
        assert kinds == sorted(kinds, key=lambda k: k == "empty")
        for family in (cover, rank):
            text = svg.render([(p.x, p.y) for p in eng.points], family)
            ET.fromstring(text)
        assert main(["export-svg", "--seed", "50", "--family", "rank",
                     "--out", str(tmp_path / "r.svg")]) == 0

    def test_open_shapes(self):
        text = svg.render([(0, 0), (1, 1)], [("s", Contour("segment", [(0, 0), (1, 1)]))])
        pl = ET.fromstring(text).find(".//{http://www.w3.org/2000/svg}polyline")
        assert len(pl.get("points").split()) == 2


class TestBench:
    def test_streams_are_deterministic(self):
        assert bench.point_stream(3, 20) == bench.point_stream(3, 20)
        assert bench.fan_stream(3, 50) == bench.fan_stream(3, 50)
        assert bench.point_stream(3, 20) != bench.point_stream(4, 20)

    def test_csv(self, tmp_path, capsys):
        out = tmp_path / "b.csv"
        code = main(["bench", "--mode", "cover", "--sizes", "8,16", "--reps", "2",
                     "--rounds", "1", "--out", str(out)])
        assert code == 0
        rows = out.read_text().splitlines()
        assert rows[0] == "mode,n,mean_update_s,static_s"
        assert [r.split(",")[:2] for r in rows[1:]] == [["cover", "8"], ["cover", "16"]]

    def test_config_errors(self):
        with pytest.raises(bench.ConfigError):
            bench.BenchConfig("nope")
        with pytest.raises(bench.ConfigError):
            bench.BenchConfig("fan", rounds=0)

    def test_module_entry_point(self, tmp_path):
        f = tmp_path / "s.txt"
        f.write_text("\n".join(TRIANGLE + ["depth 0 4"]) + "\n")
        res = subprocess.run([sys.executable, "-m", "dyndepth", "run", "--script", str(f)],
                             capture_output=True, text=True, check=True)
        assert json.loads(res.stdout.splitlines()[-1]) == {"depth": {"num": 1, "den": 3}}
