"""Entanglement and correlation measures for pure states of a spin chain.

All entropies use the natural logarithm.  Negative eigenvalues of density matrices
down to ``-NEGATIVE_TOL`` are clamped to zero; anything more negative means
the input was not a density matrix.  Eigenvalues at or below ``ZERO_CUTOFF`` do
not contribute to entropies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .spin_hilbert import (
    SIGMA_Y,
    check_sites,
    check_state,
    partial_trace,
    reduced_batch,
)

NEGATIVE_TOL = 1e-6
ZERO_CUTOFF = 1e-12
# Eigenvalues of a two-qubit density below this (relative to the trace) are numerical zeros.
RANK_CUTOFF = 1e-14

_YY = np.kron(SIGMA_Y, SIGMA_Y)


def _clean_spectrum(evals: np.ndarray) -> np.ndarray:
    evals = np.real(evals)
    if np.min(evals, initial=0.0) < -NEGATIVE_TOL:
        raise ValueError(f"density matrix has eigenvalue {np.min(evals):.3e} < 0")
    return np.clip(evals, 0.0, None)


def _entropy_from_spectrum(p: np.ndarray) -> np.ndarray:
    p = _clean_spectrum(p)
    safe = np.where(p > ZERO_CUTOFF, p, 1.0)
    return 0.0 - np.sum(np.where(p > ZERO_CUTOFF, p * np.log(safe), 0.0), axis=-1)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """``-Tr rho ln rho``."""
    return float(_entropy_from_spectrum(np.linalg.eigvalsh(rho)))


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The decreasing square roots of the eigenvalues of ``rho @ rho_tilde`` are
    obtained as the singular values of ``A.T @ YY @ A`` with ``rho = A A^dagger``,
    which avoids square roots of near-zero eigenvalues.
    """
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 density matrix, got {rho.shape}")
    p, V = np.linalg.eigh(rho)
    p = _clean_spectrum(p)
    p = np.where(p > RANK_CUTOFF * max(p.sum(), 1.0), p, 0.0)
    A = V * np.sqrt(p)
    lam = np.linalg.svd(A.T @ _YY @ A, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def subsystem_entropy(psi: np.ndarray, sites: Sequence[int]) -> float:
    """Entropy of the reduced state of ``psi`` on ``sites``; zero for the full chain."""
    n = check_state(psi)
    sites = tuple(sorted(sites))
    if len(sites) == n:
        return 0.0
    return von_neumann_entropy(partial_trace(psi, sites))


def entropy_series(states: np.ndarray, sites: Sequence[int]) -> np.ndarray:
    """Subsystem entropy for every row of ``states``."""
    n = check_state(states[0])
    sites = check_sites(sorted(sites), n)
    if len(sites) == n:
        return np.zeros(states.shape[0])
    if 2 * len(sites) > n:
        # Spectrum is shared with the complement, which is cheaper to build.
        sites = tuple(s for s in range(n) if s not in sites)
    return _entropy_from_spectrum(np.linalg.eigvalsh(reduced_batch(states, sites)))


def _n_cuts(n: int) -> int:
    if n < 2:
        raise ValueError("need at least two sites")
    return n // 2


def bee_half_cut(psi: np.ndarray) -> float:
    """Entanglement entropy between the left and right halves of the chain."""
    n = check_state(psi)
    if n % 2:
        raise ValueError("half-chain cut needs an even number of sites")
    return subsystem_entropy(psi, range(n // 2))


def abee(psi: np.ndarray) -> float:
    """Mean entropy over the cuts after sites 1, 2, ..., floor(N/2)."""
    n = check_state(psi)
    cuts = _n_cuts(n)
    return float(np.mean([subsystem_entropy(psi, range(x)) for x in range(1, cuts + 1)]))


def mutual_information(psi: np.ndarray, X: Sequence[int], Y: Sequence[int]) -> float:
    """``S_X + S_Y - S_XY``."""
    if set(X) & set(Y):
        raise ValueError("X and Y must be disjoint")
    return (
        subsystem_entropy(psi, X)
        + subsystem_entropy(psi, Y)
        - subsystem_entropy(psi, tuple(X) + tuple(Y))
    )


@dataclass(frozen=True)
class SegmentPartition:
    """Four contiguous, equal segments of a chain whose length is divisible by 4."""

    segments: tuple[tuple[int, ...], ...]

    @classmethod
    def quarters(cls, n_sites: int) -> "SegmentPartition":
        if n_sites < 4 or n_sites % 4:
            raise ValueError("the four-segment partition needs N divisible by 4")
        q = n_sites // 4
        return cls(tuple(tuple(range(i * q, (i + 1) * q)) for i in range(4)))

    def triple(self, choice: Sequence[int] = (0, 1, 2)):
        if len(choice) != 3 or len(set(choice)) != 3 or not set(choice) <= {0, 1, 2, 3}:
            raise ValueError(f"segment choice must be three distinct indices in 0..3, got {choice}")
        return tuple(self.segments[i] for i in choice)


def tmi(psi: np.ndarray, part: SegmentPartition, choice: Sequence[int] = (0, 1, 2)) -> float:
    """Tripartite mutual information ``I2(X:Y) + I2(X:Z) - I2(X:YZ)``."""
    n = check_state(psi)
    if n % 4 or sum(len(s) for s in part.segments) != n:
        raise ValueError("partition does not match a chain with N divisible by 4")
    X, Y, Z = part.triple(choice)
    return (
        mutual_information(psi, X, Y)
        + mutual_information(psi, X, Z)
        - mutual_information(psi, X, Y + Z)
    )


def qfi(H_B: np.ndarray, psi: np.ndarray) -> float:
    """Pure-state quantum Fisher information ``4 Var(H_B)``, clipped at zero."""
    if H_B.shape[0] != psi.shape[0]:
        raise ValueError("dimension mismatch between H_B and state")
    h_psi = H_B @ psi
    mean = float(np.real(np.vdot(psi, h_psi)))
    second = float(np.real(np.vdot(h_psi, h_psi)))
    return max(0.0, 4.0 * (second - mean**2))


def qfi_bound(n_sites: int, k: int) -> int:
    """Largest QFI reachable by k-producible states: ``floor(N/k) k^2 + (N mod k)^2``."""
    if not 1 <= k <= n_sites:
        raise ValueError(f"k={k} must lie in [1, {n_sites}]")
    s = n_sites // k
    return s * k * k + (n_sites - s * k) ** 2


@dataclass(frozen=True)
class WitnessReport:
    qfi_value: float
    witnessed_k: int


def qfi_witness(F: float, n_sites: int, h_z: float = 1.0) -> WitnessReport:
    """Smallest multipartite-entanglement depth certified by a QFI value.

    ``F`` is the QFI for ``h_z * sum sigma^z``; it is rescaled by ``4 h_z**2``
    to the collective-spin generator the floor bound refers to.  A bound is
    violated only when exceeded strictly.
    """
    if F < 0:
        raise ValueError("QFI must be non-negative")
    f = F / (4.0 * h_z**2)
    violated = [k for k in range(1, n_sites + 1) if f > qfi_bound(n_sites, k) + 1e-9]
    return WitnessReport(float(F), 1 + max(violated) if violated else 1)


# Series versions used by the scenario runner.

def concurrence_series(states: np.ndarray, i: int, j: int) -> np.ndarray:
    rhos = reduced_batch(states, (i, j))
    return np.array([concurrence(r) for r in rhos])


def bee_series(states: np.ndarray) -> np.ndarray:
    n = check_state(states[0])
    if n % 2:
        raise ValueError("half-chain cut needs an even number of sites")
    return entropy_series(states, range(n // 2))


def abee_series(states: np.ndarray) -> np.ndarray:
    n = check_state(states[0])
    cuts = _n_cuts(n)
    return np.mean([entropy_series(states, range(x)) for x in range(1, cuts + 1)], axis=0)


def tmi_series(states: np.ndarray, part: SegmentPartition, choice=(0, 1, 2)) -> np.ndarray:
    X, Y, Z = part.triple(choice)
    S = lambda sites: entropy_series(states, sites)  # noqa: E731
    sx = S(X)
    return sx + S(Y) - S(X + Y) + sx + S(Z) - S(X + Z) - (sx + S(Y + Z) - S(X + Y + Z))


def qfi_series(H_B: np.ndarray, states: np.ndarray) -> np.ndarray:
    h = states @ H_B.T
    mean = np.real(np.einsum("ti,ti->t", states.conj(), h))
    second = np.real(np.einsum("ti,ti->t", h.conj(), h))
    return np.clip(4.0 * (second - mean**2), 0.0, None)
