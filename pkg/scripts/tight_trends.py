#!/usr/bin/env python3
"""Emit the largest r_n-tight block diameter of F_n for the bundled specs.

Usage: python scripts/tight_trends.py [depth] [outdir]

Writes one CSV per spec (n, delta) into outdir (default ./trend_tables); a
positive, stabilizing column is the finite-depth signature of an interval in
the achievement set, while identically zero signals a Cantor set.
"""

import json
import sys
from pathlib import Path

from cantorval.classify import resolve_stream
from cantorval.families import spec_from_json
from cantorval.tightness import tight_trend

HERE = Path(__file__).resolve().parent
BUNDLED = [
    "dyadic.json",
    "middle_thirds.json",
    "gn.json",
    "ferens_5432.json",
    "kyiv48.json",
]


def main() -> int:
    depth = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    outdir = Path(sys.argv[2]) if len(sys.argv) > 2 else Path("trend_tables")
    outdir.mkdir(parents=True, exist_ok=True)
    for name in BUNDLED:
        spec = spec_from_json(json.loads((HERE / "specs" / name).read_text()))
        stream, _ = resolve_stream(spec)
        trend = tight_trend(stream, depth)
        path = outdir / f"{Path(name).stem}_trend.csv"
        path.write_text("n,delta\n" + "\n".join(trend.csv_rows()) + "\n")
        print(
            f"{name}: final delta {trend.rows[-1][1]}, "
            f"interval evidence {trend.interval_evidence} -> {path}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
