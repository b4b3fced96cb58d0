#!/usr/bin/env python3
"""Mass-convergence experiment for the wedge-power operator.

Approximates a convex quadratic from above by u_j = q + (1/j)|x|^2 and
tabulates the inner-region masses of the squared operator; the decaying
successive differences demonstrate a well-defined limit mass.

Usage: ma_convergence.py [steps] [seed] [--csv]
"""

import sys
from fractions import Fraction

from cfx.boundary import TangentFrame
from cfx.groups import GroupSpec
from cfx.ma import Region, convergence_experiment
from cfx.randgen import SectionGenerator


def main(steps: int = 64, seed: int = 7, csv: bool = False) -> int:
    frame = TangentFrame(GroupSpec.right_qh(2))
    gen = SectionGenerator(seed)
    q = gen.psh_quadratic(frame.vars, 8)
    inner = Region.cube(11, Fraction(1, 4))
    frame_report = convergence_experiment(q, frame, inner, steps=steps)
    masses = frame_report["masses"]
    if csv:
        print("j,mass")
        for j, m in enumerate(m for m in masses if not isinstance(m, str)):
            print(f"{j + 1},{m!r}")
    else:
        print(f"quadratic seed {seed}, {steps} steps")
        shown = [m for m in masses if not isinstance(m, str)]
        for j, m in enumerate(shown):
            print(f"  j={j + 1:<3d} mass={m:.10f}")
        print(f"final successive difference: {frame_report['final_difference']:.3e}")
        print(f"monotone decay: {frame_report['monotone']}")
    return 0 if frame_report["pass"] else 1


if __name__ == "__main__":
    args = [a for a in sys.argv[1:] if a != "--csv"]
    steps = int(args[0]) if args else 64
    seed = int(args[1]) if len(args) > 1 else 7
    sys.exit(main(steps, seed, "--csv" in sys.argv))
