#!/usr/bin/env python3
"""Emit all six figure datasets as CSV files."""

import argparse
import pathlib
import sys

from susy_damp import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figures", help="output directory")
    args = parser.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for n in range(1, 7):
        out = outdir / f"figure{n}.csv"
        rc = cli.main(["figure", str(n), "--out", str(out)])
        if rc != 0:
            return rc
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
