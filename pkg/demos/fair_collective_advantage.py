"""Collective charging at a fixed charger norm.

Every kappa-local charger is rescaled to ||H_C|| = N so that the comparison
is fair. Without a transverse field the peak power grows with kappa and the
fully global charger reaches about N times the parallel value. Adding a
flipping field of equal strength removes the advantage.
"""

from qbattery import scenarios
from qbattery.runner import run_sweep

N = 8


def main():
    kappas = range(1, N + 1)
    for flipping, title in (("none", "h_x = 0"), ("equal", "J_x = h_x")):
        sweep = run_sweep(scenarios.fair_klocal(1, flipping), "kappa", kappas, workers=4)
        base = sweep.summary[0]["Pi_max"]
        print(f"{title}:")
        for row in sweep.summary:
            print(f"  kappa={row['value']}  Pi_max={row['Pi_max']:8.3f}  ratio={row['Pi_max'] / base:6.3f}"
                  f"  QFI peak at t={row['t_peak_QFI']:.3f}")
        print()


if __name__ == "__main__":
    main()
