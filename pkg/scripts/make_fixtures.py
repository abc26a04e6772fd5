#!/usr/bin/env python3
"""Regenerate the embedded OEIS b-file fixtures from the defining series.

Usage:
    python3 scripts/make_fixtures.py [--terms N] [--check-network]

The sandbox this package is developed in has no OEIS access, so fixtures are
computed, not downloaded; each file records that provenance.  With network
access, --check-network diffs every fixture against the live b-file and
reports discrepancies without touching the files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from fishburn.families import NAMED_IDS, named_entry, named_sequence  # noqa: E402
from fishburn.oeis import OeisSequence, cross_check, fetch, format_bfile  # noqa: E402

DEFAULT_TERMS = 24
TRIANGLES = {"A175579": 36, "A182319": 36}  # 8 full rows


def build(id: str, terms: int) -> OeisSequence:
    count = TRIANGLES.get(id, terms)
    entry = named_entry(id)
    return OeisSequence(id, entry.offset, tuple(named_sequence(id, count)), "embedded")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--terms", type=int, default=DEFAULT_TERMS)
    ap.add_argument("--check-network", action="store_true",
                    help="diff fixtures against live OEIS b-files (needs network)")
    args = ap.parse_args(argv)

    outdir = REPO / "src" / "fishburn" / "fixtures"
    outdir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for id in NAMED_IDS:
        seq = build(id, args.terms)
        note = named_entry(id).note or "defining series"
        comments = [
            f"{id} ({note})",
            "generated by scripts/make_fixtures.py from the package's own series;",
            "regenerate after any change to the series builders.",
        ]
        (outdir / f"{id}.txt").write_text(format_bfile(seq, comments))
        print(f"wrote {id}: {len(seq)} terms from offset {seq.offset}")
        if args.check_network:
            try:
                live = fetch(id, mode="network")
                rep = cross_check(list(seq.values), live, start=seq.offset)
                print(f"  live check: {rep}")
                failures += 0 if rep.ok else 1
            except Exception as exc:  # pragma: no cover - network path
                print(f"  live check failed: {exc}")
                failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
