"""Battery and charger Hamiltonians, spectral norms and fair-charging rescaling."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from .spin_hilbert import check_hermitian, pauli_string

CHARGER_KINDS = ("k_local", "nnn_extended", "parallel_field")
DEGENERACY_GAP = 1e-9


class DegenerateGroundStateWarning(UserWarning):
    pass


@dataclass(frozen=True)
class CouplingConfig:
    """Physical parameters of one battery/charger pair (open chain).

    ``nnn`` holds the (nearest, next-nearest) neighbour x couplings used by
    the ``nnn_extended`` charger; it is ignored by the other kinds.
    """

    n_sites: int
    h_z: float = 1.0
    h_x: float = 0.0
    J: tuple[float, float, float] = (0.0, 0.0, 0.0)
    kappa: int = 2
    boundary: str = "open"
    nnn: Optional[tuple[float, float]] = None

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("n_sites must be >= 1")
        if not 1 <= self.kappa <= self.n_sites:
            raise ValueError(f"kappa={self.kappa} must lie in [1, {self.n_sites}]")
        if self.boundary != "open":
            raise ValueError("only open boundary conditions are supported")
        if len(self.J) != 3:
            raise ValueError("J must be a triple (J_x, J_y, J_z)")
        if self.nnn is not None and self.n_sites < 3:
            raise ValueError("next-nearest-neighbour couplings need n_sites >= 3")

    def with_(self, **changes) -> "CouplingConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class ChargerSpec:
    kind: str
    config: CouplingConfig
    norm_target: Optional[float] = None

    def __post_init__(self):
        if self.kind not in CHARGER_KINDS:
            raise ValueError(f"unknown charger kind {self.kind!r}")
        if self.norm_target is not None and self.norm_target <= 0:
            raise ValueError("norm_target must be positive")

    def build(self) -> np.ndarray:
        cfg = self.config
        if self.kind == "k_local":
            op = build_charger_klocal(cfg)
        elif self.kind == "parallel_field":
            op = transverse_field(cfg.n_sites, cfg.h_x)
        else:
            if cfg.nnn is None:
                raise ValueError("nnn_extended charger needs nnn=(J_x1, J_x2)")
            op = build_charger_nnn(cfg.n_sites, *cfg.nnn)
            if cfg.h_x:
                op = op + transverse_field(cfg.n_sites, cfg.h_x)
        if self.norm_target is not None:
            op, _ = normalize_to(op, self.norm_target)
        return op


def _zeros(n_sites: int) -> np.ndarray:
    return np.zeros((2**n_sites, 2**n_sites), dtype=complex)


def build_battery(n_sites: int, h_z: float) -> np.ndarray:
    """``h_z * sum_j sigma^z_j``; diagonal, ground state all spins down."""
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    if h_z <= 0:
        raise ValueError("h_z must be positive so that all-down is the uncharged state")
    index = np.arange(2**n_sites)
    ups = np.array([bin(i).count("1") for i in index])
    return np.diag(h_z * (2 * ups - n_sites)).astype(complex)


def transverse_field(n_sites: int, h_x: float) -> np.ndarray:
    op = _zeros(n_sites)
    if h_x:
        for j in range(n_sites):
            op += h_x * pauli_string(n_sites, [j], "x")
    return op


def interaction_strings(n_sites: int, J, kappa: int) -> np.ndarray:
    """``sum_alpha J_alpha sum_j prod_{k<kappa} sigma^alpha_{j+k}`` on an open chain."""
    if not 1 <= kappa <= n_sites:
        raise ValueError(f"kappa={kappa} must lie in [1, {n_sites}]")
    op = _zeros(n_sites)
    for coupling, axis in zip(J, "xyz"):
        if coupling:
            for j in range(n_sites - kappa + 1):
                op += coupling * pauli_string(n_sites, range(j, j + kappa), axis)
    return op


def build_charger_klocal(config: CouplingConfig) -> np.ndarray:
    """kappa-local charger: contiguous kappa-site strings plus a transverse field."""
    return interaction_strings(config.n_sites, config.J, config.kappa) + transverse_field(
        config.n_sites, config.h_x
    )


def build_charger_nnn(n_sites: int, J_x1: float, J_x2: float) -> np.ndarray:
    """Nearest plus next-nearest neighbour sigma^x sigma^x couplings."""
    if n_sites < 3:
        raise ValueError("next-nearest-neighbour charger needs n_sites >= 3")
    op = _zeros(n_sites)
    for j in range(n_sites - 1):
        op += J_x1 * pauli_string(n_sites, [j, j + 1], "x")
    for j in range(n_sites - 2):
        op += J_x2 * pauli_string(n_sites, [j, j + 2], "x")
    return op


def build_total(H_B: np.ndarray, H_C: np.ndarray) -> np.ndarray:
    if H_B.shape != H_C.shape:
        raise ValueError(f"dimension mismatch: {H_B.shape} vs {H_C.shape}")
    return H_B + H_C


def operator_norm(op: np.ndarray) -> float:
    """Spectral norm (largest absolute eigenvalue) of a Hermitian operator."""
    check_hermitian(op)
    return float(np.max(np.abs(np.linalg.eigvalsh(op))))


def normalize_to(H_C: np.ndarray, target: float) -> tuple[np.ndarray, float]:
    """Rescale ``H_C`` so its spectral norm equals ``target``.

    Returns the rescaled operator and the scale factor applied.
    """
    if target <= 0:
        raise ValueError("target norm must be positive")
    norm = operator_norm(H_C)
    if norm <= 1e-12:
        raise ValueError("cannot normalize a zero operator")
    scale = target / norm
    return scale * H_C, scale


class GroundState(NamedTuple):
    state: np.ndarray
    energy: float
    gap: float
    degenerate: bool


def ground_state(H: np.ndarray) -> GroundState:
    """Lowest eigenvector of ``H`` with a deterministic phase.

    When the lowest level is degenerate (gap < 1e-9) the returned vector is the
    projection of the computational basis state with the largest weight in the
    ground space, which does not depend on the eigensolver's basis choice; a
    ``DegenerateGroundStateWarning`` is issued.
    """
    check_hermitian(H)
    evals, evecs = np.linalg.eigh(H)
    gap = float(evals[1] - evals[0]) if len(evals) > 1 else np.inf
    low = evals <= evals[0] + DEGENERACY_GAP
    degenerate = int(low.sum()) > 1
    if degenerate:
        block = evecs[:, low]
        k = int(np.argmax(np.round(np.sum(np.abs(block) ** 2, axis=1), 12)))
        psi = block @ block[k].conj()
        psi /= np.linalg.norm(psi)
        warnings.warn(
            f"ground state is {int(low.sum())}-fold degenerate (gap {gap:.2e})",
            DegenerateGroundStateWarning,
            stacklevel=2,
        )
    else:
        psi = evecs[:, 0].copy()
    k = int(np.argmax(np.round(np.abs(psi), 12)))
    psi *= np.abs(psi[k]) / psi[k]
    return GroundState(psi, float(evals[0]), gap, degenerate)
