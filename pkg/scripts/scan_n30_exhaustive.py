#!/usr/bin/env python3
"""Exhaustive spectral/tile scan of Z_30.

Enumerates, decides, and records all 4,500,264 canonical classes of
subsets of Z_30 (one representative per class under translation and
unit multiplication).  The acceptance tests run the same scan into a
temporary file; this script is the standalone form that leaves a
persistent record file behind.  Takes a few minutes on one core.

The run is resumable: rerunning with the same --out continues after the
last complete record, so an interrupted run loses at most one line of
work.  Progress can be watched from another shell with `wc -l <out>`.
"""

from __future__ import annotations

import argparse
import sys
import time

from spectile.scan import ScanConfig, fuglede_scan, scan_class_count


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", required=True, help="record file (JSON lines)")
    parser.add_argument("--budget", type=int, default=10**6,
                        help="search-node budget per class (default 1e6)")
    parser.add_argument("--workers", type=int, default=1,
                        help="parallel verdict workers (default 1)")
    args = parser.parse_args(argv)

    total = scan_class_count(30)
    print(f"scanning all {total} classes of Z_30 -> {args.out}")
    start = time.monotonic()
    report = fuglede_scan(
        ScanConfig(
            n=30,
            out=args.out,
            budget=args.budget,
            workers=args.workers,
            class_ceiling=total,
        )
    )
    elapsed = time.monotonic() - start

    print(f"done in {elapsed:.0f}s classes={report.classes}")
    print(
        f"spectral={report.spectral} tiles={report.tiles} "
        f"both={report.both} neither={report.neither}"
    )
    print(f"spectral_only={report.spectral_only} tile_only={report.tile_only}")
    print(
        f"inconclusive_spectrum={report.inconclusive_spectrum} "
        f"inconclusive_tile={report.inconclusive_tile}"
    )
    print(f"counterexamples: {len(report.counterexamples)}")
    for item in report.counterexamples:
        print(f"  flagged: {item}")
    if report.counterexamples:
        return 1
    if report.inconclusive_spectrum or report.inconclusive_tile:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
