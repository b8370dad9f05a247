"""Compare every chamber formula with the brute-force partition counts on a box."""
import argparse
import json

from vpf.evaluate import chamber_formulas, partition_table, verify_chamber
from vpf.geometry import chambers
from vpf.pfd import parse_strategy
from vpf.rootsys import positive_roots


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("system", help="e.g. B3")
    ap.add_argument("--box", type=int, default=10)
    ap.add_argument("--strategy", default="minabs")
    ap.add_argument("--json", action="store_true", help="dump the full per-chamber reports")
    args = ap.parse_args()

    rs = positive_roots(args.system[0], int(args.system[1:]))
    vecs = list(rs.positive_roots)
    cc = chambers(vecs)
    fs = chamber_formulas(vecs, parse_strategy(args.strategy, rs.name), cc)
    table = partition_table(vecs, [args.box] * rs.rank)
    reports = [verify_chamber(f, vecs, args.box, i, table) for i, f in enumerate(fs)]
    if args.json:
        print(json.dumps(reports, indent=2))
    bad = sum(len(r["mismatches"]) for r in reports)
    tested = sum(r["points_tested"] for r in reports)
    print(f"{rs.name}: {len(fs)} chambers, {tested} points, {bad} mismatches")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
