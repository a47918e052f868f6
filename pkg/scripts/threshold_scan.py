#!/usr/bin/env python3
"""Sweep minimum-degree fractions and tabulate colorability pass rates.

For each degree fraction phi, random hosts on n vertices with minimum degree
at least ceil(phi * n) are generated, their exact extremal subgraphs solved,
and the witnesses tested for (k-1)-colorability. Typical use:

    python3 scripts/threshold_scan.py --n 7 --trials 50 \
        --fractions 0,1/2,2/3,4/5,1 --seed 7 --out runs/scan_n7.jsonl

Every failing trial carries a counterexample that is re-validated from
scratch before the table is printed, so a nonzero "failing" column is a real
finding about the fraction, not an artifact.
"""

from __future__ import annotations

import argparse
import sys

from exfree import (
    append_record,
    complete,
    from_graph6,
    parse_pattern,
    threshold_scan,
    validate_failure,
)
from exfree.graphs import as_fraction


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--forbid", default="K3",
                        help="forbidden clique size as K<r>, or a graph6 string")
    parser.add_argument("--pattern", default="K2", help="pattern literal to maximize")
    parser.add_argument("--k", type=int, default=3,
                        help="witnesses are tested for (k-1)-colorability")
    parser.add_argument("--n", type=int, default=7, help="host order")
    parser.add_argument("--fractions", default="0,1/2,2/3,4/5,1",
                        help="comma-separated degree fractions in [0, 1]")
    parser.add_argument("--trials", type=int, default=25, help="hosts per fraction")
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument("--threads", type=int, default=1, help="solver worker cap")
    parser.add_argument("--out", default=None, help="append the record to this file")
    args = parser.parse_args(argv)

    if args.forbid.startswith("K") and args.forbid[1:].isdigit():
        forbidden = complete(int(args.forbid[1:]))
    else:
        forbidden = from_graph6(args.forbid)
    fractions = [as_fraction(tok) for tok in args.fractions.split(",")]

    record = threshold_scan(
        forbidden,
        parse_pattern(args.pattern),
        args.k,
        args.n,
        fractions,
        trials=args.trials,
        seed=args.seed,
        threads=args.threads,
    )

    print("fraction floor passing failing unknown rate")
    for row in record.results["fractions"]:
        print(
            row["fraction"], row["floor"], row["passing"], row["failing"],
            row["unknown"], row["rate"],
        )
    ok, messages = validate_failure(record)
    for message in messages:
        print(message)
    if args.out:
        append_record(args.out, record)
        print(f"record: appended to {args.out}")
    print(f"experiment-id: {record.experiment_id}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
