"""Check the shipped decomposition tables against the Kostant product and our own decomposition."""
import argparse
import time

from vpf import TABLE_SYSTEMS, reference_table
from vpf.genfunc import FractionSum
from vpf.pfd import decompose, parse_strategy
from vpf.rootsys import positive_roots


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--strategy", default="minabs")
    args = ap.parse_args()
    for name in TABLE_SYSTEMS:
        t0 = time.time()
        rs = positive_roots(name[0], int(name[1:]))
        box = [(0, 8 if rs.rank == 2 else 5)] * rs.rank
        product = FractionSum.product(rs.positive_roots)
        want = product.series(box)
        table = reference_table(name)
        kind = args.strategy if rs.label in "ABCD" else "minabs"  # no classical order for G
        ours = decompose(product, parse_strategy(kind, rs.name)).fractions
        print(f"{name}: table {len(table):4d} fractions {'ok' if table.series(box) == want else 'MISMATCH'}; "
              f"ours {len(ours):4d} fractions {'ok' if ours.series(box) == want else 'MISMATCH'} "
              f"({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
