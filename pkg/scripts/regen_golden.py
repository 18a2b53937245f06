"""Rewrite tests/golden/*.json from the current CLI. Inspect the diff before keeping it."""

import contextlib
import io
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from kgraphs.cli import main, without_timing  # noqa: E402
from test_cli import CASES, DATA, GOLDEN  # noqa: E402

for name, (argv, code) in sorted(CASES.items()):
    args = [a if not a.endswith(".json") else str(DATA / a) for a in argv] + ["--json"]
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        got = main(args)
    if got != code:
        sys.exit(f"{name}: exit {got}, expected {code}")
    report = without_timing(json.loads(buf.getvalue()))
    (GOLDEN / f"{name}.json").write_text(
        json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    print("wrote", name)
