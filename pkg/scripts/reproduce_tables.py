#!/usr/bin/env python3
"""Recompute every published spectral-integral value and write the comparison.

Writes ``<out>/tables.csv`` (one row per comparison) and ``<out>/tables.json``,
prints the human-readable table, and exits 1 if any gating row fails.
"""

import argparse
import sys
import time
from pathlib import Path

from hspec import QuadratureSpec
from hspec import experiments as ex
from hspec.cli import emit_report


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("out"))
    ap.add_argument("--abs-tol", type=float, default=1e-10)
    ap.add_argument("--rel-tol", type=float, default=1e-9)
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    tables = ex.reproduce_all(QuadratureSpec(abs_tol=args.abs_tol, rel_tol=args.rel_tol))
    elapsed = time.perf_counter() - t0

    args.out.mkdir(parents=True, exist_ok=True)
    for name, fmt in (("tables.csv", "csv"), ("tables.json", "json")):
        with open(args.out / name, "w", encoding="utf-8", newline="") as fh:
            emit_report(tables, fmt, fh)
    emit_report(tables, "human")

    failed = [(t.title, r.label) for t in tables for r in t.rows if r.gating and not r.passed]
    print(f"\n{sum(len(t.rows) for t in tables)} rows in {elapsed:.1f}s, "
          f"{len(failed)} gating row(s) failed; CSV/JSON in {args.out}/")
    for title, label in failed:
        print(f"  FAILED {title}: {label}")
    return 0 if not failed else 1


if __name__ == "__main__":
    sys.exit(main())
