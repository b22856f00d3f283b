import json
import subprocess
import sys

import numpy as np
import pytest

from hellcorr import cli
from hellcorr.errors import DiagnosticsError
from hellcorr.estimator import estimate
from hellcorr.generators import gen_gaussian


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_sample(path, n=60, rho=0.5, seed=0, header=None):
    arr = gen_gaussian(n, rho, seed=seed)
    lines = [] if header is None else [header]
    lines += [f"{a},{b}" for a, b in arr]
    path.write_text("\n".join(lines) + "\n")
    return arr


class TestEstimateCommand:
    def test_json_document(self, capsys):
        code, out, _ = run_cli(
            capsys, "estimate", "--generator", "gaussian:rho=0.6", "--n", "200", "--seed", "3"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "hellcorr/estimate@1"
        assert doc["n"] == 200
        assert 0.0 <= doc["eta"] <= 1.0
        assert doc["cutoffs_policy"] == "cv"
        assert len(doc["cutoffs"]) == 2
        assert doc["seed"] == 3

    def test_reruns_byte_identical(self, capsys):
        args = ("estimate", "--generator", "circle", "--n", "150", "--seed", "9")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_file_input_matches_library(self, capsys, tmp_path):
        f = tmp_path / "data.csv"
        arr = write_sample(f, header="x,y")
        code, out, _ = run_cli(capsys, "estimate", "--input", str(f))
        assert code == 0
        doc = json.loads(out)
        assert doc["eta"] == pytest.approx(estimate(arr).eta, abs=1e-9)
        assert doc["source"] == str(f)

    def test_whitespace_file_no_header(self, capsys, tmp_path):
        f = tmp_path / "data.txt"
        arr = gen_gaussian(40, 0.3, seed=1)
        f.write_text("\n".join(f"{a} {b}" for a, b in arr))
        code, out, _ = run_cli(capsys, "estimate", "--input", str(f))
        assert code == 0
        assert json.loads(out)["n"] == 40

    def test_fixed_cutoffs(self, capsys):
        code, out, _ = run_cli(
            capsys, "estimate", "--generator", "gaussian:rho=0.5", "--n", "100",
            "--k", "1", "--l", "2",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["cutoffs"] == [1, 2]
        assert doc["cutoffs_policy"] == "fixed"

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "estimate", "--generator", "sine", "--n", "100", "--format", "csv"
        )
        assert code == 0
        keys = [line.split(",", 1)[0] for line in out.strip().splitlines()]
        assert keys == sorted(keys)
        assert "eta" in keys


class TestBadInputs:
    def test_too_few_rows(self, capsys, tmp_path):
        f = tmp_path / "tiny.csv"
        f.write_text("1,2\n3,4\n")
        code, _, err = run_cli(capsys, "estimate", "--input", str(f))
        assert code == 2
        assert "error:" in err

    def test_both_sources(self, capsys, tmp_path):
        f = tmp_path / "d.csv"
        write_sample(f)
        code, _, _ = run_cli(capsys, "estimate", "--input", str(f), "--generator", "circle")
        assert code == 2

    def test_neither_source(self, capsys):
        assert run_cli(capsys, "estimate")[0] == 2

    def test_k_without_l(self, capsys):
        code, _, _ = run_cli(capsys, "estimate", "--generator", "circle", "--k", "1")
        assert code == 2

    def test_unknown_generator(self, capsys):
        assert run_cli(capsys, "estimate", "--generator", "hexagon")[0] == 2

    def test_missing_file(self, capsys):
        assert run_cli(capsys, "estimate", "--input", "/nonexistent/x.csv")[0] == 2

    def test_three_column_file(self, capsys, tmp_path):
        f = tmp_path / "wide.csv"
        f.write_text("1,2,3\n4,5,6\n7,8,9\n")
        assert run_cli(capsys, "estimate", "--input", str(f))[0] == 2

    def test_ci_bad_level(self, capsys):
        code, _, _ = run_cli(
            capsys, "ci", "--generator", "circle", "--n", "50", "--level", "1.5",
            "--b1", "10", "--b2", "5",
        )
        assert code == 2

    def test_pvalue_small_m_needs_cache(self, capsys):
        code, _, _ = run_cli(capsys, "pvalue", "--generator", "circle", "--n", "50", "--m", "50")
        assert code == 2


class TestPvalueCommand:
    def test_cache_write_then_reuse(self, capsys, tmp_path):
        cache = tmp_path / "null.json"
        args = (
            "pvalue", "--generator", "gaussian:rho=0.7", "--n", "80",
            "--m", "100", "--seed", "4", "--null-cache", str(cache),
        )
        code, out, _ = run_cli(capsys, *args)
        assert code == 0
        first = json.loads(out)
        assert not first["cache_used"]
        assert cache.exists()
        code, out, _ = run_cli(capsys, *args)
        second = json.loads(out)
        assert second["cache_used"]
        assert second["p"] == first["p"]
        assert second["critical"] == first["critical"]

    def test_cache_size_mismatch(self, capsys, tmp_path):
        cache = tmp_path / "null.json"
        base = (
            "pvalue", "--generator", "gaussian:rho=0.7", "--m", "100",
            "--seed", "4", "--null-cache", str(cache),
        )
        assert run_cli(capsys, *base, "--n", "80")[0] == 0
        assert run_cli(capsys, *base, "--n", "81")[0] == 2

    def test_fields(self, capsys):
        code, out, _ = run_cli(
            capsys, "pvalue", "--generator", "gaussian:rho=0.8", "--n", "100",
            "--m", "100", "--seed", "5",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "hellcorr/pvalue@1"
        assert doc["m"] == 100
        assert 0.0 < doc["p"] <= 1.0
        assert doc["p"] == pytest.approx(1 / 101, abs=1e-12)


class TestCiCommand:
    def test_fields_and_determinism(self, capsys):
        args = (
            "ci", "--generator", "gaussian:rho=0.6", "--n", "60",
            "--b1", "40", "--b2", "8", "--seed", "6",
        )
        code, out, _ = run_cli(capsys, *args)
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "hellcorr/ci@1"
        assert 0.0 <= doc["lower"] <= doc["upper"] <= 1.0
        assert doc["b1"] == 40 and doc["b2"] == 8
        _, again, _ = run_cli(capsys, *args)
        assert json.loads(again) == doc


class TestReproduceCommand:
    def test_table1_desk(self, capsys):
        code, out, _ = run_cli(capsys, "reproduce", "table1", "--seed", "7")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "hellcorr/reproduce@1"
        assert doc["scale"] == "desk"
        assert [r["rho"] for r in doc["rows"]] == [0.4, 0.8]
        assert all(r["replicates"] == 200 for r in doc["rows"])
        assert doc["all_pass"]

    def test_csv_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, "reproduce", "table1", "--seed", "7", "--format", "csv"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 3
        assert "bias" in lines[0].split(",")


class TestExitCodes:
    def test_diagnostics_failure_maps_to_3(self, capsys, monkeypatch):
        def boom(args):
            raise DiagnosticsError("resampling scale collapsed")

        monkeypatch.setattr(cli, "cmd_ci", boom)
        code, _, err = run_cli(
            capsys, "ci", "--generator", "circle", "--n", "50", "--b1", "10", "--b2", "5"
        )
        assert code == 3
        assert "resampling scale collapsed" in err

    def test_version_flag(self):
        proc = subprocess.run(
            [sys.executable, "-m", "hellcorr", "--version"], capture_output=True, text=True
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "1.0.0"
