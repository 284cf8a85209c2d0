import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import numpy as np
import pytest

from metanet.cli import run

DATA = resources.files("metanet.data")
KARATE = str(DATA / "karate.edges")
FACTIONS = str(DATA / "karate_factions.labels")
P3 = {name: str(DATA / "partitions3" / f"{name}.labels")
      for name in ("p1", "p2", "p3", "p4", "p5")}


class TestUsage:
    def test_no_arguments_exits_2(self):
        proc = subprocess.run([sys.executable, "-m", "metanet.cli"],
                              capture_output=True, text=True)
        assert proc.returncode == 2
        assert "usage" in proc.stderr.lower()

    def test_unknown_subcommand_exits_2(self):
        proc = subprocess.run([sys.executable, "-m", "metanet.cli", "frobnicate"],
                              capture_output=True, text=True)
        assert proc.returncode == 2

    def test_runtime_error_exits_1(self, capsys, tmp_path):
        missing = str(tmp_path / "nope.edges")
        rc = run(["bestest", "--graph", missing, "--metadata", FACTIONS,
                  "--permutations", "10", "--seed", "0"])
        assert rc == 1
        assert "error:" in capsys.readouterr().err


class TestMetricsCommand:
    def test_table_s7_value(self, capsys):
        rc = run(["metrics", "nmi", "--a", P3["p2"], "--b", P3["p3"]])
        assert rc == 0
        value = float(capsys.readouterr().out.strip())
        assert abs(value - 0.27) < 0.005

    def test_singletons_column(self, capsys):
        rc = run(["metrics", "nmi", "--a", P3["p2"], "--b", P3["p5"]])
        value = float(capsys.readouterr().out.strip())
        assert rc == 0 and abs(value - 0.76) < 0.005

    def test_ami_table_s8(self, capsys):
        rc = run(["metrics", "ami", "--a", P3["p2"], "--b", P3["p3"]])
        value = float(capsys.readouterr().out.strip())
        assert rc == 0 and abs(value + 0.5) < 1e-6

    def test_vi(self, capsys):
        rc = run(["metrics", "vi", "--a", P3["p1"], "--b", P3["p5"]])
        value = float(capsys.readouterr().out.strip())
        assert rc == 0 and abs(value - np.log2(3)) < 1e-6

    def test_homogeneity_both_spellings(self, capsys, tmp_path):
        rc = run(["homogeneity", "--n", "3"])
        top_level = capsys.readouterr().out
        assert rc == 0 and "group_sizes,mean_ami" in top_level
        out = tmp_path / "h.csv"
        rc = run(["metrics", "homogeneity", "--n", "3", "--out", str(out)])
        assert rc == 0
        assert out.read_text().splitlines()[0] == "group_sizes,mean_ami"


class TestBestestCommand:
    def test_json_output_and_determinism(self, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        null_csv = tmp_path / "null.csv"
        args = ["bestest", "--graph", KARATE, "--metadata", FACTIONS,
                "--model", "sbm", "--permutations", "500", "--seed", "11"]
        assert run(args + ["--out", str(out1), "--dump-null", str(null_csv)]) == 0
        assert run(args + ["--out", str(out2)]) == 0
        a = json.loads(out1.read_text())
        b = json.loads(out2.read_text())
        a["manifest"].pop("timestamp")
        b["manifest"].pop("timestamp")
        a["manifest"].pop("argv")
        b["manifest"].pop("argv")
        assert a == b
        assert a["p_value"] < 0.05
        assert a["observed"]["kind"] == "entropy_bits"
        assert a["observed"]["log_base"] == 2
        assert len(null_csv.read_text().splitlines()) == 500
        assert a["manifest"]["input_digests"][KARATE]

    def test_exhaustive_flag(self, tmp_path):
        edges = tmp_path / "p.edges"
        labels = tmp_path / "p.labels"
        edges.write_text("a b\nb c\n")
        labels.write_text("a g1\nb g2\nc g1\n")
        out = tmp_path / "r.json"
        rc = run(["bestest", "--graph", str(edges), "--metadata", str(labels),
                  "--exhaustive", "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        assert payload["mode"] == "exhaustive"
        assert payload["p_value"] == pytest.approx(1 / 3)


class TestGenerateCommand:
    def test_two_block_files(self, tmp_path):
        prefix = str(tmp_path / "tb")
        rc = run(["generate", "two-block", "--n", "80", "--epsilon", "0.2",
                  "--ell", "0.7", "--mean-degree", "6", "--seed", "3",
                  "--out-prefix", prefix])
        assert rc == 0
        assert Path(f"{prefix}.edges").exists()
        assert Path(f"{prefix}_truth.labels").exists()
        assert Path(f"{prefix}_metadata.labels").exists()
        payload = json.loads(Path(f"{prefix}_run.json").read_text())
        assert payload["n_nodes"] + payload["isolated_nodes_dropped"] == 80

    def test_multi_optimum_files(self, tmp_path):
        prefix = str(tmp_path / "mo")
        rc = run(["generate", "multi-optimum", "--seed", "5",
                  "--out-prefix", prefix])
        assert rc == 0
        payload = json.loads(Path(f"{prefix}_run.json").read_text())
        assert payload["n_nodes"] + payload["isolated_nodes_dropped"] == 200
        assert "calibrated, not from paper" in payload["parameters"]["provenance"]


class TestNeosbmAndLandscape:
    def test_pipeline(self, tmp_path):
        edges = tmp_path / "g.edges"
        labels = tmp_path / "g.labels"
        edges.write_text("a b\nb c\na c\nd e\ne f\nd f\n")
        labels.write_text("a g1\nb g0\nc g0\nd g1\ne g1\nf g1\n")
        out = tmp_path / "neo.json"
        rc = run(["neosbm", "--graph", str(edges), "--metadata", str(labels),
                  "--model", "sbm", "--theta-grid", "0.05:0.45:0.2",
                  "--sweeps", "150", "--restarts", "4", "--seed", "2",
                  "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        assert [round(t, 2) for t in payload["theta_grid"]] == [0.05, 0.25, 0.45]
        assert len(payload["records"]) == 3
        rec = payload["records"][0]
        assert set(rec) == {"theta", "q", "L_base", "partition", "z", "omega"}
        part_dir = tmp_path / "neo_partitions"
        assert (part_dir / "metadata.labels").exists()
        assert (part_dir / "optimum.labels").exists()

        surface = tmp_path / "surface.csv"
        rc = run(["landscape", "--graph", str(edges),
                  "--partitions", str(part_dir), "--model", "sbm",
                  "--samples", "40", "--seed", "4", "--out", str(surface)])
        assert rc == 0
        lines = surface.read_text().splitlines()
        assert lines[0] == "x,y,score,partition_id"
        assert len(lines) >= 41
