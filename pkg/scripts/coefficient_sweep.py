"""Sweep the a coefficient and report how often the contraction condition fails.

    python scripts/coefficient_sweep.py --map halving --b 0.2 --c 0.5
"""
import argparse

import numpy as np

from unifix import Box, BuiltinSpec, ContractionParams, PseudometricFamily, make_builtin, scan

MAPS = {
    "halving": BuiltinSpec("affine_contraction", matrix=0.5),
    "two-branch": BuiltinSpec("scaled_selector", ratios=(0.5, 1 / 3)),
    "multi-affine": BuiltinSpec("multi_affine", branches=((0.5, None), (0.25, None))),
    "identity": BuiltinSpec("identity"),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--map", choices=sorted(MAPS), default="halving")
    ap.add_argument("--b", type=float, default=0.2)
    ap.add_argument("--c", type=float, default=0.5)
    ap.add_argument("--a-min", type=float, default=-1.0)
    ap.add_argument("--a-max", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=21)
    ap.add_argument("--half-width", type=float, default=1.0)
    ap.add_argument("--budget", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    F = make_builtin(MAPS[args.map])
    family = PseudometricFamily.absolute(1.0)
    region = Box((-args.half_width,), (args.half_width,))
    print("a,violations,pairs_checked,fraction")
    for a in np.linspace(args.a_min, args.a_max, args.steps):
        params = ContractionParams.uniform(float(a), args.b, args.c)
        rep = scan(F, params, family, region, args.budget, args.seed)
        print(f"{a:.4f},{len(rep.violations)},{rep.pairs_checked},{len(rep.violations) / rep.pairs_checked:.4f}")


if __name__ == "__main__":
    main()
