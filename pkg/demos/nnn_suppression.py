"""Next-nearest neighbour couplings lower the peak power.

The charger mixes nearest and next-nearest x couplings with J_x2 = J_x1 / r2
and is rescaled to ||H_C|| = N. r2 = inf is the nearest-neighbour chain.
"""

import math

from qbattery import scenarios
from qbattery.runner import run

RATIOS = (math.inf, 4.0, 2.0, 1.5)


def main():
    nn = None
    for r2 in RATIOS:
        rec = run(scenarios.fair_nnn(r2))
        pmax = rec.power.values.max()
        nn = pmax if nn is None else nn
        print(f"r2={r2:<4g} J_x2={rec.couplings['J_x2']:.4f}  Pi_max={pmax:7.3f}  relative {pmax / nn:.3f}")


if __name__ == "__main__":
    main()
