#!/usr/bin/env python3
"""Run the full identity audit and write the machine-readable report.

Thin wrapper over the library: builds the report document at the requested
precision, writes it to disk, prints a verdict tally, and exits with the
same code the `verify` subcommand would use.
"""

import argparse
import collections
import json
import sys

from stieltjes_audit import cli


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prec", type=int, default=256, help="bits, >= 64")
    ap.add_argument("--jobs", type=int, default=4)
    ap.add_argument("--out", default="audit_report.json")
    args = ap.parse_args(argv)

    cfg = cli.RunConfig(precision_bits=args.prec, jobs=args.jobs)
    doc, reports = cli.build_report_document(cfg)
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")

    tally = collections.Counter(r.verdict for r in reports)
    print(f"wrote {args.out} ({len(reports)} cases at {args.prec} bits)")
    for verdict in ("PASS", "AUDIT_DEVIATION", "FAIL", "ERROR"):
        if tally[verdict]:
            print(f"  {verdict:<16} {tally[verdict]}")
    return cli.exit_code_for(reports)


if __name__ == "__main__":
    sys.exit(main())
