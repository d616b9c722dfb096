"""The correlation measures on a handful of familiar states."""

import numpy as np

from qbattery.correlations import (
    SegmentPartition,
    abee,
    bee_half_cut,
    concurrence,
    qfi,
    qfi_witness,
    tmi,
)
from qbattery.hamiltonians import build_battery
from qbattery.spin_hilbert import basis_state, reduced_pair

N = 8


def ghz(n):
    psi = np.zeros(2**n, complex)
    psi[0] = psi[-1] = 2**-0.5
    return psi


def w(n):
    psi = np.zeros(2**n, complex)
    psi[[1 << j for j in range(n)]] = n**-0.5
    return psi


def plus(n):
    return np.full(2**n, 2 ** (-n / 2), complex)


def main():
    H_B = build_battery(N, 1.0)
    part = SegmentPartition.quarters(N)
    states = {"all down": basis_state(N, [False] * N), "|+>^N": plus(N), "W": w(N), "GHZ": ghz(N)}
    print(f"{'state':10s} {'C(1,N)':>8s} {'BEE':>8s} {'ABEE':>8s} {'TMI':>8s} {'QFI':>8s}  k")
    for name, psi in states.items():
        F = qfi(H_B, psi)
        print(f"{name:10s} {concurrence(reduced_pair(psi, 0, N - 1)):8.4f} {bee_half_cut(psi):8.4f} "
              f"{abee(psi):8.4f} {tmi(psi, part):8.4f} {F:8.2f}  {qfi_witness(F, N).witnessed_k}")


if __name__ == "__main__":
    main()
