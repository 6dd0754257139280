"""Commands covered by the golden-file suite (tests/golden/cli.json).

Regenerate with ``python tests/golden_commands.py`` after an intended
output change, and review the diff.
"""

from __future__ import annotations

import contextlib
import io
import json
import sys
from pathlib import Path

from cactus_expansion.cli import run_cli
from cactus_expansion.generators import FIXTURE_NAMES, fixture

GOLDEN = Path(__file__).parent / "golden" / "cli.json"
SEARCH = ["--fiber-bound", "3", "--max-vertices", "12"]


def commands() -> list[list[str]]:
    out = []
    for name in FIXTURE_NAMES:
        ref = f"fixture:{name}"
        out += [
            ["fixture", name],
            ["fixture", name, "--format", "json"],
            ["check-sc", ref],
            ["check-cactus", ref],
            ["check-cactus", ref, "--format", "json"],
            ["find-dbcp", ref],
            ["find-dbcp", ref, "--format", "json"],
            ["find-expansion", ref, *SEARCH],
            ["find-expansion", ref, *SEARCH, "--format", "json"],
            ["export-dot", ref],
            ["export-dot", ref, "--decompose"],
            ["preorder", ref, "--root", fixture(name).graph.label(0)],
        ]
    out += [
        ["check-dbcp", "fixture:K3S", "p", "q", "--format", "json"],
        ["gen", "digraph", "--n", "5", "--p", "0.4", "--seed", "7"],
        ["gen", "cactus", "--cycles", "4", "--max-len", "4", "--seed", "3", "--format", "json"],
        ["corpus-validate", "--max-n", "3"],
    ]
    return out


def run(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = run_cli(argv)
    return code, buf.getvalue()


def key(argv: list[str]) -> str:
    return " ".join(argv)


if __name__ == "__main__":
    table = {}
    for argv in commands():
        code, out = run(argv)
        table[key(argv)] = {"exit": code, "stdout": out}
    GOLDEN.write_text(json.dumps(table, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {len(table)} entries to {GOLDEN}", file=sys.stderr)
