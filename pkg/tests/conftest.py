import json
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def census_run(tmp_path_factory):
    """One full ``zsym census --family all --max-n 8`` run through the installed CLI."""
    out = tmp_path_factory.mktemp("census") / "census.json"
    cmd = [sys.executable, "-m", "zsym.cli", "census", "--family", "all", "--max-n", "8",
           "--format", "json", "--out", str(out)]
    t0 = time.perf_counter()
    proc = subprocess.run(cmd, capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    doc = json.loads(out.read_text()) if out.exists() else {"cases": []}
    return {"returncode": proc.returncode, "stderr": proc.stderr, "seconds": elapsed,
            "doc": doc, "path": Path(out)}


@pytest.fixture(scope="session")
def census_cases(census_run):
    return census_run["doc"]["cases"]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
