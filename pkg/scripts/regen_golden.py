"""Rewrite tests/golden/*.out from the current CLI.  Review the diff before committing."""
import contextlib
import io
import shlex
import sys
from pathlib import Path

from chroma.cli import main

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"


def cases():
    for line in (GOLDEN / "cases.txt").read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            name, args = line.split(":", 1)
            yield name.strip(), shlex.split(args)


def run(args) -> str:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(args)
    return f"{out.getvalue()}--- stderr\n{err.getvalue()}--- exit {code}\n"


if __name__ == "__main__":
    import os

    os.chdir(ROOT)
    for name, args in cases():
        (GOLDEN / f"{name}.out").write_text(run(args))
        print(f"wrote {name}.out", file=sys.stderr)
