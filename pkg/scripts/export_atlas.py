#!/usr/bin/env python3
"""Export boundary-graph artifacts (JSON + DOT) for a range of levels.

Usage: python3 scripts/export_atlas.py [--q Q] [--levels N] [--outdir DIR]
"""

import argparse
import pathlib
import sys

from drinfan.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default="2")
    ap.add_argument("--levels", type=int, default=2,
                    help="export graphs for m = 0 .. levels-1")
    ap.add_argument("--outdir", default="atlas-out")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rc = 0
    for m in range(args.levels):
        base = outdir / f"graph-q{args.q}-m{m}"
        rc |= cli_main(["atlas", "graph", "--q", args.q, "--m", str(m),
                        "--dot", str(base.with_suffix(".dot")),
                        "--out", str(base.with_suffix(".json"))])
        print(f"wrote {base}.json and {base}.dot", file=sys.stderr)
    return rc


if __name__ == "__main__":
    sys.exit(main())
