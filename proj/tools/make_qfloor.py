#!/usr/bin/env python3
"""Regenerate the frozen q-separation floors.

Runs `genproj qscan` with many restarts at each dimension, records the best
residual per q, and writes floor = margin * best into both the test fixture
and the table compiled into the library.

    tools/make_qfloor.py build/tools/genproj
"""
import argparse
import json
import pathlib
import subprocess

ROOT = pathlib.Path(__file__).resolve().parent.parent
DIMS = [2, 3, 4, 8]
Q_GRID = [-2.0, -0.5, 0.5, 2.0]
RESTARTS = 10000
SEED = 20240601
MARGIN = 0.9


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("genproj", help="path to the genproj binary")
    args = ap.parse_args()

    q_arg = "--q=" + ",".join(repr(q) for q in Q_GRID)
    entries = []
    commands = []
    for dim in DIMS:
        cmd = [args.genproj, "qscan", "--dims", str(dim), "--restarts", str(RESTARTS),
               "--seed", str(SEED), q_arg]
        commands.append(" ".join(["genproj"] + cmd[1:]))
        out = json.loads(subprocess.run(cmd, check=True, capture_output=True, text=True).stdout)
        for e in out["scans"][0]["entries"]:
            entries.append({"dim": dim, "q": e["q"], "oracle_min": e["best_residual"],
                            "floor": MARGIN * e["best_residual"]})

    fixture = {"commands": commands, "restarts": RESTARTS, "seed": SEED, "margin": MARGIN,
               "entries": entries}
    (ROOT / "tests" / "fixtures" / "qfloor.json").write_text(json.dumps(fixture, indent=2) + "\n")

    lines = ["// Generated by tools/make_qfloor.py; do not edit by hand.\n"]
    for e in entries:
        lines.append("{%d, %r, %r},\n" % (e["dim"], e["q"], e["floor"]))
    (ROOT / "src" / "qfloor_table.inc").write_text("".join(lines))


if __name__ == "__main__":
    main()
