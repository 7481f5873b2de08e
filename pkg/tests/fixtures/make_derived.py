"""Regenerate derived.json by running each command through the CLI.

    python3 tests/fixtures/make_derived.py
"""

import contextlib
import io
import json
from pathlib import Path

from newtondiag.cli import main

HERE = Path(__file__).parent

COMMANDS = {
    "check_cubic_n2": ["check", "x^3+3*x*y+y^3", "--dim", "2"],
    "check_cubic_n3": ["check", "--dim", "3", "--file", "tests/fixtures/cubic_n3.poly"],
    "quotient_cubic_n2": ["quotient", "x^3+3*x*y+y^3", "--dim", "2"],
    "diagram_cubic_n2": ["diagram", "x^3+3*x*y+y^3", "--dim", "2"],
    "diagram_cubic_n3": ["diagram", "--dim", "3", "--file", "tests/fixtures/cubic_n3.poly"],
    "view_cubic_n3_2_3": ["view", "--dim", "3", "--size", "3", "--from", "2", "--to", "3",
                          "--file", "tests/fixtures/cubic_n3.poly"],
    "view_cubic_n2_1_2": ["view", "x^3+3*x*y+y^3", "--dim", "2", "--from", "1", "--to", "2"],
    "whitney_4_2": ["whitney", "--dim", "4", "--degree", "2"],
    "whitney_3_3": ["whitney", "--dim", "3", "--degree", "3"],
    "crmap_cubic_n3": ["crmap", "--file", "tests/fixtures/cubic_n3.map"],
    "crmap_square_n2": ["crmap", "--file", "tests/fixtures/square_n2.map"],
    "search_3_2": ["search", "--dim", "3", "--size", "2"],
    "search_4_2": ["search", "--dim", "4", "--size", "2", "--audit"],
    "search_symmetric_2": ["search", "--symmetric", "--size", "2"],
    "lemma42_2_2": ["lemma42", "--height", "2", "--width", "2"],
    "faces_whitney_3_2": ["faces", "x^2 + x*y + x*z + y + z", "--dim", "3"],
}


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv + ["--json"])
    return code, json.loads(buf.getvalue())


def build():
    out = {}
    for name, argv in COMMANDS.items():
        code, report = run(argv)
        out[name] = {"command": "newtondiag " + " ".join(argv + ["--json"]), "argv": argv,
                     "exit": code, "report": report}
    return out


if __name__ == "__main__":
    (HERE / "derived.json").write_text(json.dumps(build(), indent=1) + "\n")
