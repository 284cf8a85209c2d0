import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

PLOTKIT = Path(__file__).resolve().parent.parent
ROOT = PLOTKIT.parent
ARTIFACTS = ROOT / "artifacts" / "acceptance"



def _cli(*args):
    subprocess.run([sys.executable, "-m", "metanet.cli", *map(str, args)],
                   check=True, capture_output=True, text=True)


def _regenerate(target: Path) -> None:
    """Rebuild reduced-size equivalents of the acceptance exports through
    the metanet command line (the primary's external interface)."""
    target.mkdir(parents=True, exist_ok=True)
    prefix = target / "mo"
    _cli("generate", "multi-optimum", "--seed", "2024", "--out-prefix", prefix)
    _cli("neosbm", "--graph", f"{prefix}.edges",
         "--metadata", f"{prefix}_metadata.labels", "--model", "sbm",
         "--theta-grid", "0.02:0.98:0.08", "--sweeps", "400", "--restarts",
         "4", "--seed", "9", "--out", target / "neopath.json")
    _cli("landscape", "--graph", f"{prefix}.edges",
         "--partitions", target / "neopath_partitions", "--model", "sbm",
         "--samples", "400", "--seed", "13", "--out", target / "surface.csv")
    # schema-conforming sensitivity fixture (values hand-written, used only
    # to exercise rendering when the acceptance run has not happened)
    (target / "sensitivity.csv").write_text(
        "epsilon,ell,mean_p,sd_p,n_reps,n_perm,model\n"
        "0.1,0.0,0.50,0.29,100,999,sbm\n"
        "0.1,0.5,0.22,0.24,100,999,sbm\n"
        "0.1,1.0,0.01,0.01,100,999,sbm\n"
        "1.0,0.0,0.49,0.29,100,999,sbm\n"
        "1.0,0.5,0.51,0.30,100,999,sbm\n"
        "1.0,1.0,0.50,0.28,100,999,sbm\n",
        encoding="utf-8")


@pytest.fixture(scope="session")
def exports(tmp_path_factory):
    """Paths to acceptance-run exports, regenerating a reduced set if the
    primary acceptance suite has not been run."""
    needed = ("sensitivity.csv", "neopath.json", "surface.csv")
    if all((ARTIFACTS / n).exists() for n in needed):
        return {"dir": ARTIFACTS, "from_acceptance": True}
    target = tmp_path_factory.mktemp("exports")
    _regenerate(target)
    return {"dir": target, "from_acceptance": False}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("plotkit.tests.test_render")
    lines = getattr(mod, "REPORT_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria (secondary)")
        for line in lines:
            terminalreporter.write_line(line)
