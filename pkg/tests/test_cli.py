import json
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import jsonschema
import pytest

from cfdyn import cli, verify
from cfdyn.render import render_svg

CHECK_SCHEMA = {
    "type": "object",
    "properties": {
        "suite": {"type": "string"},
        "check": {"type": "string"},
        "samples": {"type": "integer", "minimum": 0},
        "failures": {"type": "integer", "minimum": 0},
        "example": {"type": ["object", "null"]},
    },
    "required": ["suite", "check", "samples", "failures"],
}

SUMMARY_SCHEMA = {
    "type": "object",
    "properties": {
        "suite": {"type": "string"},
        "passed": {"type": "boolean"},
        "failures": {"type": "integer"},
    },
    "required": ["suite", "passed", "failures"],
}

STEP_SCHEMA = {
    "type": "object",
    "properties": {
        "step": {"type": "integer"},
        "x": {"type": "string"},
        "y": {"type": "string"},
        "forward": {"type": "string"},
        "backward": {"type": "string"},
    },
    "required": ["step"],
}


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    lines = [json.loads(line) for line in out.splitlines() if line.strip()]
    return code, lines


class TestExpand:
    def test_rcf(self, capsys):
        code, lines = run_cli(capsys, "expand", "--system", "rcf",
                              "--value", "355/113")
        assert code == 0
        assert lines[0]["leading"] == 3
        assert [l["digit"] for l in lines[1:-1]] == [7, 16]
        assert lines[-1]["terminated"] is True

    def test_rcf_zero(self, capsys):
        code, lines = run_cli(capsys, "expand", "--system", "rcf",
                              "--value", "0")
        assert code == 0 and lines[-1]["terminated"] is True
        assert all("digit" not in l for l in lines[:-1] if "leading" not in l)

    def test_ecf_leading(self, capsys):
        code, lines = run_cli(capsys, "expand", "--system", "ecf",
                              "--value", "7/2")
        assert code == 0
        assert lines[0]["leading"] == [4, -1]
        assert lines[1]["digit"] == [2, 1] and lines[1]["remainder"] == "0"

    def test_surd_period(self, capsys):
        code, lines = run_cli(capsys, "expand", "--system", "rcf",
                              "--value", "sqrt(2)")
        assert code == 0 and lines[-1]["period"] == [2]

    def test_domain_error_exit_2(self, capsys):
        assert cli.main(["expand", "--system", "rcf", "--value", "-3"]) == 2
        assert cli.main(["expand", "--system", "ext-ecf", "--value", "3/2"]) == 2

    def test_parse_error_exit_2(self, capsys):
        assert cli.main(["expand", "--system", "rcf", "--value", "x+y"]) == 2


class TestOrbits:
    def test_fixed_point(self, capsys):
        code, lines = run_cli(capsys, "orbit", "--map", "even-farey",
                              "--x", "1", "--steps", "3")
        assert code == 0
        assert [l["x"] for l in lines] == ["1", "1", "1"]
        for line in lines:
            jsonschema.validate(line, STEP_SCHEMA)

    def test_natext(self, capsys):
        code, lines = run_cli(capsys, "natext", "--map", "even-farey",
                              "--x", "2/5", "--y", "1/3", "--steps", "1")
        assert code == 0 and lines[0] == {"step": 1, "x": "1/2", "y": "3/7"}

    def test_section_orbit(self, capsys):
        code, lines = run_cli(capsys, "section", "--map", "sigma-e",
                              "--forward", "7/2", "--backward", "-1/3",
                              "--steps", "2")
        assert code == 0
        assert (lines[0]["forward"], lines[0]["backward"]) == ("3/2", "-7/3")
        assert (lines[1]["forward"], lines[1]["backward"]) == ("2", "3/13")

    def test_cusp_event(self, capsys):
        code, lines = run_cli(capsys, "section", "--map", "rho",
                              "--forward", "3", "--backward", "-1/2",
                              "--steps", "4")
        assert code == 0 and lines[-1]["event"] == "cusp"

    def test_domain_error(self, capsys):
        assert cli.main(["section", "--map", "rho", "--forward", "1/2",
                         "--backward", "-1/3", "--steps", "1"]) == 2


class TestCutting:
    def test_even_coding(self, capsys):
        code, lines = run_cli(capsys, "cutting", "--forward", "5/2",
                              "--backward", "-1/2", "--window", "8")
        assert code == 0
        payload = lines[0]
        assert payload["symbols"][payload["xi_index"]] == "C"
        for edge in payload["edges"]:
            assert edge["kind"] in ("type1", "type2")

    def test_digit_coding_matches(self, capsys):
        _, even = run_cli(capsys, "cutting", "--forward", "5/2",
                          "--backward", "-1/2", "--window", "8")
        _, digits = run_cli(capsys, "cutting", "--forward", "5/2",
                            "--backward", "-1/2", "--window", "8",
                            "--coding", "even-digits")
        geo, dig = even[0], digits[0]
        fwd_geo = geo["symbols"][geo["xi_index"]:]
        fwd_dig = dig["symbols"][dig["xi_index"]:]
        assert fwd_dig[:len(fwd_geo)] == fwd_geo


class TestVerify:
    def test_all_suites_pass(self, capsys):
        code, lines = run_cli(capsys, "verify", "all", "--samples", "200",
                              "--seed", "7")
        assert code == 0
        summaries = [l for l in lines if "passed" in l]
        assert {s["suite"] for s in summaries} == \
            {"conjugacy", "box", "slowdown", "measure", "coding"}
        for line in lines:
            if "passed" in line:
                jsonschema.validate(line, SUMMARY_SCHEMA)
            else:
                jsonschema.validate(line, CHECK_SCHEMA)

    def test_determinism(self, capsys):
        cli.main(["verify", "conjugacy", "--samples", "150", "--seed", "3"])
        first = capsys.readouterr().out
        cli.main(["verify", "conjugacy", "--samples", "150", "--seed", "3"])
        second = capsys.readouterr().out
        assert first == second

    def test_mutation_exit_code(self, capsys, monkeypatch):
        # a flipped branch constant must drive the exit code to 1
        from cfdyn.section import EndpointPair, T_E

        def mutated(p):
            eps = p.eps
            m = p.fwd if eps > 0 else -p.fwd
            if m > 3:
                return EndpointPair(p.fwd - 2 * eps, p.bwd - 2 * eps, T_E)
            return EndpointPair(1 / (3 * eps - p.fwd),
                                1 / (3 * eps - p.bwd), T_E)

        monkeypatch.setitem(verify.DEFAULT_MAPS, "sigma_e", mutated)
        code, lines = run_cli(capsys, "verify", "conjugacy",
                              "--samples", "120", "--seed", "0")
        assert code == 1
        failing = [l for l in lines if l.get("failures")]
        assert failing and failing[0]["example"] is not None


class TestRender:
    def test_even_tessellation(self, tmp_path, capsys):
        out = tmp_path / "even.svg"
        code = cli.main(["render", "--tessellation", "even",
                         "--max-denominator", "6", "-o", str(out)])
        assert code == 0
        root = ET.parse(out).getroot()
        classes = [el.get("class") for el in root.iter()
                   if el.tag.endswith(("line", "path"))]
        assert "t1" in classes and "t2" in classes and "removed" in classes

    def test_farey_denominator_one(self, tmp_path):
        out = tmp_path / "farey.svg"
        assert cli.main(["render", "--tessellation", "farey",
                         "--max-denominator", "1", "-o", str(out)]) == 0
        root = ET.parse(out).getroot()
        lines = [el for el in root.iter() if el.tag.endswith("line")]
        paths = [el for el in root.iter() if el.tag.endswith("path")]
        assert len(lines) == 9 and len(paths) == 8

    def test_geodesic_overlay_and_determinism(self, tmp_path):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        args = ["render", "--tessellation", "even", "--max-denominator", "6",
                "--geodesic", "5/2:-1/2"]
        assert cli.main(args + ["-o", str(a)]) == 0
        assert cli.main(args + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        text = a.read_text()
        assert "geodesic" in text and ">xi<" in text and ">C<" in text

    def test_unwritable_path(self):
        assert cli.main(["render", "--tessellation", "even",
                         "--max-denominator", "4",
                         "-o", "/nonexistent-dir/x.svg"]) == 2

    def test_edge_census_matches_svg(self, tmp_path):
        out = tmp_path / "census.svg"
        assert cli.main(["render", "--tessellation", "even",
                         "--max-denominator", "8", "--xmin", "-2",
                         "--xmax", "2", "-o", str(out)]) == 0
        root = ET.parse(out).getroot()
        drawn = [el.get("class") for el in root.iter()
                 if el.tag.endswith(("line", "path"))]
        from cfdyn.cutting import even_edges, TYPE2
        from cfdyn.boundary import bp_to_float, INFINITY, _Infinity
        edges = set(even_edges(8, -2, 2))
        visible = 0
        for e in edges:
            if isinstance(e.v, _Infinity):
                if -2 <= bp_to_float(e.u) <= 2:
                    visible += 1
            elif bp_to_float(e.v) >= -2 and bp_to_float(e.u) <= 2:
                visible += 1
        assert len(drawn) == visible
