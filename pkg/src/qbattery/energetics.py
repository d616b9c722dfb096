"""Stored energy, instantaneous power and peak extraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .spin_hilbert import expectation

IMAG_TOL = 1e-10
# Samples this close to the maximum (relative to max |values|) count as ties.
PEAK_TIE_RTOL = 1e-9


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.shape != values.shape or times.ndim != 1:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if len(times) > 1 and np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.times)

    def at(self, t: float) -> float:
        """Value at the grid point closest to ``t``."""
        return float(self.values[np.argmin(np.abs(self.times - t))])

    def normalized(self) -> "TimeSeries":
        """Divide by the largest absolute value; zero series are returned unchanged."""
        scale = np.max(np.abs(self.values), initial=0.0)
        if scale == 0:
            return self
        return TimeSeries(self.times, self.values / scale, self.label)


@dataclass(frozen=True)
class PeakReport:
    peak_value: float
    peak_time: float
    window: tuple[float, float]


def stored_energy(H_B: np.ndarray, psi_t: np.ndarray, psi_0: np.ndarray) -> float:
    """``<psi_t|H_B|psi_t> - <psi_0|H_B|psi_0>``."""
    if H_B.shape[0] != psi_t.shape[0] or psi_t.shape != psi_0.shape:
        raise ValueError("dimension mismatch between H_B and states")
    return expectation(H_B, psi_t) - expectation(H_B, psi_0)


def _expectation_series(op: np.ndarray, states: np.ndarray) -> np.ndarray:
    if op.shape[0] != states.shape[1]:
        raise ValueError("dimension mismatch between operator and states")
    vals = np.einsum("ti,ti->t", states.conj(), states @ op.T)
    if np.max(np.abs(vals.imag), initial=0.0) > IMAG_TOL * max(1.0, np.max(np.abs(vals.real))):
        raise ValueError("expectation values are not real; operator is not Hermitian")
    return vals.real


def energy_series(H_B: np.ndarray, states: np.ndarray, times: np.ndarray) -> TimeSeries:
    """Stored energy at every row of ``states`` relative to the first row."""
    e = _expectation_series(H_B, states)
    return TimeSeries(times, e - e[0], "W")


def power_finite_difference(energy: TimeSeries) -> TimeSeries:
    """dW/dt by second-order differences (central inside, one-sided at the ends)."""
    t = energy.times
    if len(t) < 3:
        raise ValueError("need at least three samples")
    steps = np.diff(t)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
        raise ValueError("finite differences need a uniform grid")
    return TimeSeries(t, np.gradient(energy.values, steps[0], edge_order=2), "Pi")


def commutator_generator(H_B: np.ndarray, H_C: np.ndarray) -> np.ndarray:
    """Hermitian operator ``i [H_C, H_B]`` whose expectation is the power."""
    if H_B.shape != H_C.shape:
        raise ValueError("dimension mismatch between H_B and H_C")
    return 1j * (H_C @ H_B - H_B @ H_C)


def power_commutator(H_B: np.ndarray, H_C: np.ndarray, psi_t: np.ndarray) -> float:
    """``i <psi_t|[H_C, H_B]|psi_t>``."""
    gen = commutator_generator(H_B, H_C)
    if gen.shape[0] != psi_t.shape[0]:
        raise ValueError("dimension mismatch between Hamiltonians and state")
    val = np.vdot(psi_t, gen @ psi_t)
    if abs(val.imag) > IMAG_TOL * max(1.0, abs(val.real)):
        raise ValueError("commutator expectation is not real")
    return float(val.real)


def power_commutator_series(
    H_B: np.ndarray, H_C: np.ndarray, states: np.ndarray, times: np.ndarray
) -> TimeSeries:
    return TimeSeries(times, _expectation_series(commutator_generator(H_B, H_C), states), "Pi")


def _window_mask(series: TimeSeries, window: Optional[tuple[float, float]]):
    if window is None:
        window = (float(series.times[0]), float(series.times[-1]))
    lo, hi = window
    mask = (series.times >= lo - 1e-12) & (series.times <= hi + 1e-12)
    if not mask.any():
        raise ValueError(f"window {window} does not overlap the series")
    return mask, (float(lo), float(hi))


def peak(series: TimeSeries, window: Optional[tuple[float, float]] = None) -> PeakReport:
    """Global maximum inside ``window`` (default: whole series).

    Periodic signals have crests that agree up to roundoff, so values within
    ``PEAK_TIE_RTOL`` of the maximum are treated as ties and the earliest wins.
    """
    mask, window = _window_mask(series, window)
    t, v = series.times[mask], series.values[mask]
    tol = PEAK_TIE_RTOL * float(np.max(np.abs(v)))
    i = int(np.argmax(v >= np.max(v) - tol))
    return PeakReport(float(v[i]), float(t[i]), window)


def first_local_peak(series: TimeSeries, window: Optional[tuple[float, float]] = None) -> PeakReport:
    """First interior sample that is strictly above its left and not below its right neighbour.

    Falls back to the global maximum when the series has no interior maximum.
    """
    mask, window = _window_mask(series, window)
    t, v = series.times[mask], series.values[mask]
    for i in range(1, len(v) - 1):
        if v[i] > v[i - 1] and v[i] >= v[i + 1]:
            return PeakReport(float(v[i]), float(t[i]), window)
    return peak(series, window)
