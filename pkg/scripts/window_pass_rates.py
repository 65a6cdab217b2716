#!/usr/bin/env python3
"""Estimate the fraction of reduced words whose prefixes keep near-uniform
letter statistics, across word lengths.

Usage: python scripts/window_pass_rates.py [epsilon] [l] [samples]
"""

import random
import sys
from fractions import Fraction

from freegrowth.words import ZParams, empirical_pass_fraction


def main():
    eps = Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(1, 20)
    l = int(sys.argv[2]) if len(sys.argv) > 2 else 256
    samples = int(sys.argv[3]) if len(sys.argv) > 3 else 200
    rng = random.Random(0)
    print("length,pass_fraction")
    length = l
    for _ in range(6):
        f = empirical_pass_fraction(eps, l, length, 2, samples, rng)
        print(f"{length},{f:.4f}")
        length *= 2


if __name__ == "__main__":
    main()
