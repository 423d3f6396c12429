"""Drive the command line front end on the bundled fixture files.

Each command is run in process; the same calls work verbatim as
`qperiods <command> ...` from a shell.  Exit code 0 means a definite
answer (Refuted included), 2 an honest Unknown, 1 refused input.
"""

import io
import json
from contextlib import redirect_stdout
from pathlib import Path

from qperiods.cli import main

FIXTURES = Path(__file__).parent.parent / "tests" / "fixtures"


def run(*args):
    args = [str(a) for a in args]
    print("$ qperiods " + " ".join(args))
    out = io.StringIO()
    with redirect_stdout(out):
        code = main(args)
    for line in out.getvalue().splitlines():
        print("  " + line)
    print(f"  (exit {code})")
    return code, out.getvalue()


code, _ = run("period", FIXTURES / "a2_P1.json")
assert code == 0

code, _ = run("certify", FIXTURES / "a2_P1.json",
              "--weights", FIXTURES / "a2_weights.json")
assert code == 0                      # Refuted is a definite answer

code, _ = run("certify", FIXTURES / "loop2_reg.json",
              "--weights", FIXTURES / "loop2_weights.json")
assert code == 2                      # Unknown is honest, not definite

code, _ = run("realize", FIXTURES / "a2_P1.json",
              "--relation", FIXTURES / "a2_relation.json")
assert code == 0

code, out = run("--format", "json", "baker", "--x", "1", "--l", "2", "--n", "0")
assert code == 0
assert json.loads(out)["dim"] == 4
