"""Exact unitary evolution through a cached eigendecomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spin_hilbert import check_hermitian, check_state


class NumericalError(RuntimeError):
    pass


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid ``0, dt, 2 dt, ...`` up to ``t_max``."""

    t_max: float = 10.0
    dt: float = 0.005

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.t_max < self.dt:
            raise ValueError("t_max must be at least dt")

    @property
    def count(self) -> int:
        # Guard against t_max/dt landing just below an integer.
        return math.floor(self.t_max / self.dt + 1e-9) + 1

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.count) * self.dt


@dataclass(frozen=True)
class Propagator:
    """Spectral decomposition ``H = V diag(eigenvalues) V^dagger``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T

    def evolve(self, psi0: np.ndarray, t: float) -> np.ndarray:
        return evolve(self, psi0, t)


def diagonalize(H: np.ndarray) -> Propagator:
    check_hermitian(H)
    try:
        evals, evecs = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    evals.setflags(write=False)
    evecs.setflags(write=False)
    return Propagator(evals, evecs)


def _check_dims(p: Propagator, psi0: np.ndarray) -> None:
    check_state(psi0)
    if psi0.shape[0] != p.dim:
        raise ValueError(f"state dimension {psi0.shape[0]} != propagator dimension {p.dim}")


def evolve(p: Propagator, psi0: np.ndarray, t: float) -> np.ndarray:
    """``exp(-i H t) psi0`` for ``t >= 0``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    _check_dims(p, psi0)
    V = p.eigenvectors
    return V @ (np.exp(-1j * p.eigenvalues * t) * (V.conj().T @ psi0))


def evolve_series(p: Propagator, psi0: np.ndarray, grid: TimeGrid) -> np.ndarray:
    """States on every grid point as the rows of a ``(count, dim)`` array."""
    _check_dims(p, psi0)
    V = p.eigenvectors
    coeffs = V.conj().T @ psi0
    phases = np.exp(-1j * np.outer(p.eigenvalues, grid.times))
    states = (phases * coeffs[:, None]).T @ V.T
    states.setflags(write=False)
    return states
