#!/usr/bin/env python3
"""Emit the reproducible CSV series behind the standard plots.

Writes into ./figure_data/ (created on demand).  Every file is exact
integer data with a header row; infinite valuations are blank fields.
The same files are available from the command line, e.g.:

    stirval figure stirling-k --k 126 --n-max 500 --out s126.csv
"""

from pathlib import Path

from stirval import cli

OUT = Path("figure_data")

JOBS = [
    ["figure", "val-n", "--n-max", "256"],
    ["figure", "val-factorial", "--n-max", "256"],
    ["figure", "err-factorial", "--n-max", "256"],
    ["figure", "cohen", "--k", "1", "--n-max", "128"],
    ["figure", "stirling-k", "--k", "75", "--n-max", "500"],
    ["figure", "stirling-k", "--k", "126", "--n-max", "500"],
    ["figure", "wannemacker-diff", "--k", "101", "--n-max", "500"],
    ["figure", "wannemacker-diff", "--k", "129", "--n-max", "500"],
]


def main():
    OUT.mkdir(exist_ok=True)
    for job in JOBS:
        name_bits = [job[1]] + [a.lstrip("-") for a in job[2:]]
        path = OUT / ("_".join(name_bits) + ".csv")
        code = cli.main(job + ["--out", str(path)])
        rows = sum(1 for _ in path.open()) - 1
        print(f"  wrote {path} ({rows} rows, exit {code})")


if __name__ == "__main__":
    main()
