#!/usr/bin/env python3
"""Convention sweep: the same kinematic identities hold whatever speed is
declared invariant -- light, sound, or anything else.

For each speed the script prints the light-clock timeline (showing the
midpoint synchronization), the boost matrix, and the agreement between the
radar-derived map and the directly constructed one.

Usage: python scripts/convention_sweep.py [--v-over-c 0.5]
"""

import argparse

import numpy as np

from lightcone import (
    BoostParams,
    RadarScenario,
    boost_x,
    derive_map,
    is_isometry,
    light_clock,
    Metric,
)

SPEEDS = {"one tenth": 0.1, "unity": 1.0, "sound": 343.0, "light": 2.99792458e8}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v-over-c", type=float, default=0.5)
    args = ap.parse_args()

    for name, c in SPEEDS.items():
        v = args.v_over_c * c
        print(f"\n=== invariant speed c = {c:g} ({name}), v = {v:g} ===")
        tl = light_clock(RadarScenario(v=v, c=c, delta_xbar=1.0, t0=0.0))
        print(f"rest frame times:    t0={tl.t0:.6g}  t1={tl.t1:.6g}  t2={tl.t2:.6g}")
        print(f"moving frame times:  t0'={tl.tprime0:.6g}  t1'={tl.tprime1:.6g}  "
              f"t2'={tl.tprime2:.6g}")
        mid = 0.5 * (tl.tprime0 + tl.tprime2)
        print(f"midpoint convention: t1' - (t0'+t2')/2 = {tl.tprime1 - mid:.3e}")

        B = boost_x(BoostParams(v, c)).L
        D = derive_map(v, c).L
        scale = np.maximum(1.0, np.abs(B))
        print(f"boost matrix (gamma = {B[0, 0]:.9g}):")
        for row in B:
            print("   " + "  ".join(f"{x: .6g}" for x in row))
        print(f"radar vs direct construction, worst relative entry: "
              f"{np.max(np.abs(D - B) / scale):.3e}")
        print(f"metric isometry at 1e-9: {is_isometry(B, Metric(4, c))}")


if __name__ == "__main__":
    main()
