"""Print the possible period of every chamber formula for a list of root systems.

    python3 scripts/period_table.py A2 B2 C2 G2 A3 B3 C3 A4
"""
import argparse
import time
from math import lcm

from vpf.evaluate import chamber_formulas
from vpf.pfd import parse_strategy
from vpf.quasi import possible_period
from vpf.rootsys import positive_roots


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("systems", nargs="*", default=["A2", "B2", "C2", "G2", "A3", "B3", "C3"])
    ap.add_argument("--strategy", default="minabs")
    args = ap.parse_args()
    print(f"{'system':8} {'chambers':>8} {'period':>6} {'seconds':>8}")
    for name in args.systems:
        t0 = time.time()
        rs = positive_roots(name[0], int(name[1:]))
        fs = chamber_formulas(rs.positive_roots, parse_strategy(args.strategy))
        per = lcm(1, *(possible_period(f.formula) for f in fs))
        print(f"{name:8} {len(fs):8d} {per:6d} {time.time() - t0:8.1f}")


if __name__ == "__main__":
    main()
