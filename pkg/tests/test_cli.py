"""CLI contract tests: exit codes, determinism, measurement output."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

CLI = [sys.executable, "-m", "sphconvex.cli"]


def run(args, stdin=None):
    return subprocess.run(CLI + args, input=stdin, capture_output=True, text=True)


class TestGenerate:
    def test_quarter_disk_document(self):
        r = run(["generate", "quarter-disk", "--radius", "0.8"])
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert payload["spec"]["kind"] == "quarter_disk"
        assert payload["spec"]["radius"] == 0.8

    def test_reuleaux_document(self):
        r = run(["generate", "reuleaux", "--n", "3", "--width", "1.8"])
        assert r.returncode == 0
        assert json.loads(r.stdout)["spec"]["kind"] == "reuleaux_odd_gon"

    def test_random_deterministic_bytes(self):
        args = ["generate", "random", "--cap", "0.4", "--points", "12", "--seed", "7"]
        a, b = run(args), run(args)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout
        assert json.loads(a.stdout)["metadata"]["seed"] == 7

    def test_invalid_parameters_exit_2(self):
        r = run(["generate", "disk", "--radius", "3.0"])
        assert r.returncode == 2
        assert "error" in r.stderr

    def test_invalid_reuleaux_width_exit_2(self):
        r = run(["generate", "reuleaux", "--n", "3", "--width", "3.2"])
        assert r.returncode == 2


class TestMeasure:
    def test_quarter_disk_values(self):
        doc = run(["generate", "quarter-disk", "--radius", "1.0"]).stdout
        r = run(["measure", "-"], stdin=doc)
        assert r.returncode == 0
        rec = json.loads(r.stdout)
        assert rec["thickness"] == pytest.approx(1.0, abs=1e-9)
        assert rec["diameter"] == pytest.approx(1.2745557823700884, abs=1e-9)
        assert rec["constant_width"] is False
        assert rec["reducedness_check"] == "pass"

    def test_disk_constant_width(self):
        doc = run(["generate", "disk", "--radius", "0.4"]).stdout
        rec = json.loads(run(["measure", "-"], stdin=doc).stdout)
        assert rec["thickness"] == pytest.approx(0.8, abs=1e-9)
        assert rec["diameter"] == pytest.approx(0.8, abs=1e-9)
        assert rec["constant_width"] is True

    def test_isosceles_diameter_pair_on_edge(self):
        doc = run(["generate", "isosceles", "--arm", "1.7", "--base", "1.0"]).stdout
        rec = json.loads(run(["measure", "--skip-reduced", "-"], stdin=doc).stdout)
        assert rec["diameter"] > 1.7
        [pair] = rec["diameter_pairs"]
        ends = [np.array(p) for p in pair]
        # one end is a vertex (the apex), the other an edge-interior point
        body = json.loads(doc)
        assert body["spec"]["kind"] == "isosceles_triangle"

    def test_parse_failure_exit_2(self):
        r = run(["measure", "-"], stdin="{bad json")
        assert r.returncode == 2

    def test_unknown_field_exit_2(self):
        r = run(["measure", "-"], stdin='{"version":1,"spec":{"kind":"disk","radius":0.4},"x":1}')
        assert r.returncode == 2

    def test_geometric_failure_exit_3(self):
        # well-formed document, but the edge cycle is not a convex body
        doc = ('{"version":1,"body":{"start":[1,0,0],"edges":['
               '{"kind":"geodesic","to":[0,1,0]},'
               '{"kind":"geodesic","to":[%.17g,%.17g,0]},'
               '{"kind":"geodesic","to":[1,0,0]}]}}'
               % (np.cos(2.4), np.sin(2.4)))
        # vertices on one great circle: empty interior
        r = run(["measure", "-"], stdin=doc)
        assert r.returncode == 3

    def test_missing_file_exit_2(self):
        r = run(["measure", "/nonexistent/path.json"])
        assert r.returncode == 2


class TestVerify:
    def test_small_run_passes(self):
        r = run(["verify", "lemma1", "--trials", "500", "--seed", "1"])
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert payload["passed"] is True
        [rep] = payload["reports"]
        assert rep["failures"] == 0
        assert rep["trials"] == 500

    def test_byte_identical_reruns(self):
        args = ["verify", "lemma2", "--trials", "100", "--seed", "1"]
        assert run(args).stdout == run(args).stdout

    def test_byte_identical_across_threads(self):
        a = run(["verify", "theorem", "--trials", "60", "--seed", "2", "--threads", "1"])
        b = run(["verify", "theorem", "--trials", "60", "--seed", "2", "--threads", "3"])
        assert a.stdout == b.stdout

    def test_injected_bug_exit_1_with_witness(self):
        r = run(["verify", "theorem", "--trials", "60", "--seed", "1", "--inject-bound-bug"])
        assert r.returncode == 1
        payload = json.loads(r.stdout)
        assert payload["passed"] is False
        assert payload["reports"][0]["witness"]["violation"] > 0

    def test_unknown_suite_exit_2(self):
        r = run(["verify", "lemma3", "--trials", "10"])
        assert r.returncode == 2

    def test_tolerance_override(self):
        r = run(["verify", "lemma1", "--trials", "200", "--seed", "1", "--tol", "lemma1=1e-3"])
        payload = json.loads(r.stdout)
        assert payload["reports"][0]["tolerance"] == 1e-3


class TestRender:
    def test_svg_output(self, tmp_path):
        doc = run(["generate", "quarter-disk", "--radius", "0.9"]).stdout
        out = tmp_path / "q.svg"
        r = run(["render", "-", "--out", str(out), "--view", "z"], stdin=doc)
        assert r.returncode == 0
        svg = out.read_text()
        assert svg.startswith("<svg")
        assert svg.count("<path") >= 3  # two radius edges plus the arc

    def test_deterministic_bytes(self, tmp_path):
        doc = run(["generate", "reuleaux", "--n", "3", "--width", "1.0"]).stdout
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        run(["render", "-", "--out", str(a)], stdin=doc)
        run(["render", "-", "--out", str(b)], stdin=doc)
        assert a.read_bytes() == b.read_bytes()

    def test_overlay_minimal_lunes(self, tmp_path):
        doc = run(["generate", "quarter-disk", "--radius", "0.8"]).stdout
        plain, overlay = tmp_path / "p.svg", tmp_path / "o.svg"
        run(["render", "-", "--out", str(plain)], stdin=doc)
        run(["render", "-", "--out", str(overlay), "--overlay", "minimal-lunes"], stdin=doc)
        assert overlay.read_text().count("<path") > plain.read_text().count("<path")
        assert "#d0342c" in overlay.read_text()

    def test_back_hemisphere_dashed(self, tmp_path):
        doc = run(["generate", "reuleaux", "--n", "3", "--width", "2.5"]).stdout
        out = tmp_path / "r.svg"
        run(["render", "-", "--out", str(out), "--view", "x"], stdin=doc)
        assert "stroke-dasharray" in out.read_text()

    def test_unwritable_output_exit_4(self, tmp_path):
        doc = run(["generate", "disk", "--radius", "0.4"]).stdout
        r = run(["render", "-", "--out", "/nonexistent-dir/x.svg"], stdin=doc)
        assert r.returncode == 4
