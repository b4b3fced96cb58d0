#!/usr/bin/env python3
"""Dimension/rank tables of the frozen-coefficient sequence for small (n, k).

Usage: symbol_table.py [max_n] [seed]
"""

import sys

from cfx.flat import ComplexSpec, check_exactness
from cfx.randgen import SectionGenerator


def main(max_n: int = 2, seed: int = 1) -> int:
    gen = SectionGenerator(seed)
    all_ok = True
    for n in range(1, max_n + 1):
        for k in range(0, 2 * n + 1):
            spec = ComplexSpec(n, k)
            v = gen.spawn(10 * n + k).rational_vector(4 * (n + 1))
            result = check_exactness(spec, v)
            dims = "-".join(map(str, result["dims"]))
            ranks = "-".join(map(str, result["ranks"]))
            status = "exact" if result["exact"] else "RANK DEFECT"
            all_ok = all_ok and result["exact"]
            print(f"n={n} k={k:<2d} dims {dims:<24} ranks {ranks:<20} {status}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    sys.exit(main(max_n, seed))
