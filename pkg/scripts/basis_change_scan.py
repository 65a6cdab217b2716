#!/usr/bin/env python3
"""Scan basis-change experiment parameters and emit the ratio trends as CSV.

Usage: python scripts/basis_change_scan.py [depth] > scan.csv
"""

import sys
from fractions import Fraction

from freegrowth.surgery import basis_change_experiment
from freegrowth.words import ZParams


def main():
    depth = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    grid = [(Fraction(1, 6), 5), (Fraction(1, 7), 6), (Fraction(1, 8), 6)]
    print("epsilon,l,n,g_a,g_b,z,ratio_a,ratio_b")
    for eps, l in grid:
        result = basis_change_experiment(2, ZParams(eps, l), depth)
        for n in range(depth + 1):
            ga = result.series_a.values[n]
            gb = result.series_b.values[n]
            z = result.z_counts[n] if n < len(result.z_counts) else 0
            print(f"{eps},{l},{n},{ga},{gb},{z},"
                  f"{ga / 3 ** n:.6f},{gb / 3 ** n:.6f}")


if __name__ == "__main__":
    main()
