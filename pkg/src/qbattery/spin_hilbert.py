"""Computational-basis states, Pauli strings and partial traces for spin-1/2 chains.

Basis convention: site ``j`` is bit ``j`` of the basis index, and bit value 0
is spin down (sigma^z eigenvalue -1).  The all-down state is index 0.

States and operators are plain numpy arrays; ``n_sites`` is recovered from the
length (``2**n_sites``).
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

# Single-site Pauli matrices in the (|down>, |up>) ordering.
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SIGMA_Z = np.array([[-1, 0], [0, 1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

NORM_TOL = 1e-10
HERMITIAN_TOL = 1e-10


def n_sites_of(array: np.ndarray) -> int:
    """Number of spins for a state vector or square operator."""
    dim = array.shape[0]
    n = int(dim).bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    if array.ndim == 2 and array.shape[1] != dim:
        raise ValueError(f"operator is not square: {array.shape}")
    return n


def check_sites(sites: Iterable[int], n_sites: int, ordered: bool = True) -> tuple[int, ...]:
    """Validate a site set and return it as a tuple.

    With ``ordered=True`` the sites must be strictly increasing; otherwise
    they only need to be distinct.
    """
    sites = tuple(int(s) for s in sites)
    if not sites:
        raise ValueError("site set is empty")
    if len(set(sites)) != len(sites):
        raise ValueError(f"duplicate sites in {sites}")
    if any(s < 0 or s >= n_sites for s in sites):
        raise ValueError(f"sites {sites} out of range for {n_sites} spins")
    if ordered and list(sites) != sorted(sites):
        raise ValueError(f"sites {sites} must be strictly increasing")
    return sites


def basis_state(n_sites: int, bits: Sequence[bool]) -> np.ndarray:
    """Product state with spin ``j`` up where ``bits[j]`` is true."""
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    if len(bits) != n_sites:
        raise ValueError(f"got {len(bits)} bits for {n_sites} spins")
    index = sum(1 << j for j, b in enumerate(bits) if b)
    psi = np.zeros(2**n_sites, dtype=complex)
    psi[index] = 1.0
    return psi


def check_state(psi: np.ndarray) -> int:
    """Validate a normalized state vector; returns its number of sites."""
    if psi.ndim != 1:
        raise ValueError("state must be a 1-d vector")
    n = n_sites_of(psi)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm {norm!r})")
    return n


def is_hermitian(op: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    scale = max(1.0, float(np.max(np.abs(op), initial=0.0)))
    return bool(np.max(np.abs(op - op.conj().T), initial=0.0) <= tol * scale)


def check_hermitian(op: np.ndarray, tol: float = HERMITIAN_TOL) -> int:
    n = n_sites_of(op)
    if not is_hermitian(op, tol):
        raise ValueError("operator is not Hermitian")
    return n


def site_operator(n_sites: int, ops: dict[int, np.ndarray]) -> np.ndarray:
    """Tensor product with ``ops[j]`` on site ``j`` and identity elsewhere."""
    factors = [ops.get(j, IDENTITY) for j in range(n_sites)]
    # Highest site is the most significant bit, so it goes leftmost in the kron.
    return reduce(np.kron, factors[::-1])


def pauli_string(n_sites: int, sites: Iterable[int], axis: str) -> np.ndarray:
    """Product of ``sigma^axis`` over ``sites``, identity on all other spins."""
    if axis not in PAULI:
        raise ValueError(f"axis must be one of x, y, z; got {axis!r}")
    sites = check_sites(sites, n_sites, ordered=False)
    return site_operator(n_sites, {s: PAULI[axis] for s in sites})


def _reduced(psi: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    # keep[0] becomes bit 0 of the reduced index; order is respected as given.
    n = n_sites_of(psi)
    tensor = psi.reshape((2,) * n)
    keep_axes = [n - 1 - s for s in reversed(keep)]
    rest = [a for a in range(n) if a not in keep_axes]
    m = tensor.transpose(keep_axes + rest).reshape(2 ** len(keep), -1)
    return m @ m.conj().T


def partial_trace(psi: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix of a pure state on the sites in ``keep``.

    The reduced matrix uses the same bit convention, with ``keep[i]`` mapped
    to bit ``i``.
    """
    n = check_state(psi)
    keep = check_sites(keep, n)
    if len(keep) == n:
        raise ValueError("keep must be a proper subset of the sites")
    return _reduced(psi, keep)


def reduced_pair(psi: np.ndarray, i: int, j: int) -> np.ndarray:
    """4x4 reduced density matrix of spins ``i`` (bit 0) and ``j`` (bit 1)."""
    if i == j:
        raise ValueError("reduced_pair needs two distinct sites")
    n = check_state(psi)
    check_sites((i, j), n, ordered=False)
    return _reduced(psi, (i, j))


SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def expectation(op: np.ndarray, psi: np.ndarray) -> float:
    """Real part of <psi|op|psi>; ``op`` is assumed Hermitian."""
    return float(np.real(np.vdot(psi, op @ psi)))


def reduced_batch(states: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrices for every row of a ``(T, 2**n)`` array of states."""
    n = n_sites_of(states[0])
    tensor = states.reshape((states.shape[0],) + (2,) * n)
    keep_axes = [1 + n - 1 - s for s in reversed(keep)]
    rest = [a for a in range(1, n + 1) if a not in keep_axes]
    m = tensor.transpose([0] + keep_axes + rest).reshape(states.shape[0], 2 ** len(keep), -1)
    return m @ m.conj().transpose(0, 2, 1)
