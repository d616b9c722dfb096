"""Scenario assembly, runs, sweeps and CSV/config file handling."""

from __future__ import annotations

import csv
import dataclasses
import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import correlations as corr
from .dynamics import TimeGrid, diagonalize, evolve_series
from .energetics import (
    PeakReport,
    TimeSeries,
    energy_series,
    first_local_peak,
    peak,
    power_commutator_series,
    power_finite_difference,
)
from .hamiltonians import (
    CHARGER_KINDS,
    ChargerSpec,
    CouplingConfig,
    DegenerateGroundStateWarning,
    build_battery,
    build_charger_nnn,
    ground_state,
    interaction_strings,
    normalize_to,
    operator_norm,
    transverse_field,
)

log = logging.getLogger(__name__)

MODES = ("charger_interacting", "battery_interacting")
MEASURES = ("W", "Pi", "C1N", "BEE", "TMI", "QFI", "ABEE")
# Measures that may change sign; their peaks are taken on the magnitude.
SIGNED_MEASURES = frozenset({"TMI"})
SWEEP_AXES = ("kappa", "h_x", "J_x", "r", "r2", "N")
# Columns whose largest magnitude is below this are treated as identically zero.
ZERO_SERIES = 1e-12

DEFAULT_FLIP_RATIO = 4.0
DEFAULT_NNN_RATIO = 2.0


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    """One charging experiment.

    ``r`` (J_x / h_x) and ``r2`` (J_x1 / J_x2) are optional ratio overrides:
    when set, ``J_x = r * h_x`` and ``J_x2 = J_x1 / r2`` replace the
    explicit couplings.  ``r2 = inf`` means nearest neighbours only.
    """

    name: str = "scenario"
    mode: str = "charger_interacting"
    n_sites: int = 8
    h_z: float = 1.0
    h_x: float = 0.0
    J_x: float = 0.0
    J_y: float = 0.0
    J_z: float = 0.0
    kappa: int = 2
    boundary: str = "open"
    J_x1: float = 1.0
    J_x2: float = 0.0
    charger_kind: str = "k_local"
    fair: bool = False
    norm_target: Optional[float] = None
    t_max: float = 10.0
    dt: float = 0.005
    measures: tuple[str, ...] = ("W", "Pi")
    normalize_output: bool = False
    tmi_segments: tuple[int, int, int] = (0, 1, 2)
    r: Optional[float] = None
    r2: Optional[float] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.charger_kind not in CHARGER_KINDS:
            raise ConfigError(f"charger_kind must be one of {CHARGER_KINDS}")
        unknown = [m for m in self.measures if m not in MEASURES]
        if unknown or not self.measures:
            raise ConfigError(f"unknown or empty measures {unknown}; choose from {MEASURES}")
        if len(set(self.measures)) != len(self.measures):
            raise ConfigError("measures must not repeat")
        if "TMI" in self.measures and self.n_sites % 4:
            raise ConfigError("TMI needs n_sites divisible by 4")
        if "BEE" in self.measures and self.n_sites % 2:
            raise ConfigError("BEE needs an even number of sites")
        if self.fair and self.effective_norm_target <= 0:
            raise ConfigError("fair charging needs a positive norm_target")
        if self.r is not None and (self.r <= 0 or self.h_x <= 0):
            raise ConfigError("ratio r = J_x/h_x needs r > 0 and h_x > 0")
        if self.r2 is not None and self.r2 <= 0:
            raise ConfigError("ratio r2 = J_x1/J_x2 must be positive")
        try:
            self.coupling
            self.grid
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def effective_norm_target(self) -> float:
        if self.norm_target is None:
            return self.n_sites * self.h_z
        return self.norm_target

    @property
    def couplings(self) -> dict:
        """Coupling values after ratio overrides, before any fair rescaling."""
        J_x = self.J_x if self.r is None else self.r * self.h_x
        J_x2 = self.J_x2 if self.r2 is None else self.J_x1 / self.r2
        return {"J_x": J_x, "J_y": self.J_y, "J_z": self.J_z, "h_x": self.h_x,
                "J_x1": self.J_x1, "J_x2": J_x2}

    @property
    def coupling(self) -> CouplingConfig:
        c = self.couplings
        nnn = (c["J_x1"], c["J_x2"]) if self.charger_kind == "nnn_extended" else None
        return CouplingConfig(
            n_sites=self.n_sites, h_z=self.h_z, h_x=c["h_x"],
            J=(c["J_x"], c["J_y"], c["J_z"]), kappa=self.kappa,
            boundary=self.boundary, nnn=nnn,
        )

    @property
    def grid(self) -> TimeGrid:
        return TimeGrid(self.t_max, self.dt)

    def with_(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)


class Assembly(NamedTuple):
    H_B: np.ndarray
    H_C: np.ndarray
    psi0: np.ndarray
    scale: float
    degenerate: bool


def assemble(config: ScenarioConfig) -> Assembly:
    """Battery Hamiltonian, charger Hamiltonian and initial state for a scenario.

    In ``battery_interacting`` mode the interaction strings belong to the
    battery and the charger is the bare transverse field.
    """
    cfg = config.coupling
    battery = build_battery(cfg.n_sites, cfg.h_z)
    if config.mode == "charger_interacting":
        H_B = battery
        H_C = ChargerSpec(config.charger_kind, cfg).build()
    else:
        if config.charger_kind == "nnn_extended":
            interactions = build_charger_nnn(cfg.n_sites, *cfg.nnn)
        elif config.charger_kind == "parallel_field":
            interactions = np.zeros_like(battery)
        else:
            interactions = interaction_strings(cfg.n_sites, cfg.J, cfg.kappa)
        H_B = battery + interactions
        H_C = transverse_field(cfg.n_sites, cfg.h_x)
    scale = 1.0
    if config.fair:
        try:
            H_C, scale = normalize_to(H_C, config.effective_norm_target)
        except ValueError as exc:
            raise ConfigError(f"fair charging: {exc}") from exc
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateGroundStateWarning)
        gs = ground_state(H_B)
    for w in caught:
        log.warning("%s: %s", config.name, w.message)
    return Assembly(H_B, H_C, gs.state, scale, gs.degenerate)


@dataclass(frozen=True)
class RunRecord:
    """Everything produced by one scenario run.

    ``peaks`` and ``first_peaks`` are taken on the magnitude for measures in
    ``SIGNED_MEASURES`` and on the raw values otherwise.
    """

    scenario_id: str
    config: ScenarioConfig
    series: dict
    peaks: dict
    first_peaks: dict
    energy: TimeSeries
    power: TimeSeries
    power_commutator: TimeSeries
    route_discrepancy: float
    scale: float
    charger_norm: float
    degenerate: bool
    window: tuple[float, float]
    couplings: dict
    max_witnessed_k: Optional[int] = None
    flags: tuple[str, ...] = field(default_factory=tuple)

    @property
    def times(self) -> np.ndarray:
        return self.energy.times


def peak_signal(name: str, series: TimeSeries) -> TimeSeries:
    if name in SIGNED_MEASURES:
        return TimeSeries(series.times, np.abs(series.values), f"|{series.label}|")
    return series


def _measure_values(name, config, asm, states, energy, power):
    if name == "W":
        return energy.values
    if name == "Pi":
        return power.values
    if name == "C1N":
        return corr.concurrence_series(states, 0, config.n_sites - 1)
    if name == "BEE":
        return corr.bee_series(states)
    if name == "TMI":
        part = corr.SegmentPartition.quarters(config.n_sites)
        return corr.tmi_series(states, part, config.tmi_segments)
    if name == "QFI":
        return corr.qfi_series(asm.H_B, states)
    if name == "ABEE":
        return corr.abee_series(states)
    raise ConfigError(f"unknown measure {name!r}")


def run(config: ScenarioConfig, window: Optional[tuple[float, float]] = None) -> RunRecord:
    """Evolve one scenario and evaluate every requested measure on the grid."""
    asm = assemble(config)
    grid = config.grid
    times = grid.times
    prop = diagonalize(asm.H_B + asm.H_C)
    states = evolve_series(prop, asm.psi0, grid)

    energy = energy_series(asm.H_B, states, times)
    p_comm = power_commutator_series(asm.H_B, asm.H_C, states, times)
    flags = []
    if len(times) >= 3:
        power = power_finite_difference(energy)
        discrepancy = float(np.max(np.abs(power.values - p_comm.values)))
    else:
        power, discrepancy = p_comm, math.nan
        flags.append("power_from_commutator")

    series, peaks, first = {}, {}, {}
    for name in config.measures:
        ts = TimeSeries(times, _measure_values(name, config, asm, states, energy, power), name)
        series[name] = ts
        sig = peak_signal(name, ts)
        peaks[name] = peak(sig, window)
        first[name] = first_local_peak(sig, window)

    witnessed = None
    if "QFI" in series and config.mode == "charger_interacting":
        qmax = float(np.max(series["QFI"].values))
        witnessed = corr.qfi_witness(qmax, config.n_sites, config.h_z).witnessed_k

    if asm.degenerate:
        flags.append("degenerate_ground_state")
    return RunRecord(
        scenario_id=config.name,
        config=config,
        series=series,
        peaks=peaks,
        first_peaks=first,
        energy=energy,
        power=power,
        power_commutator=p_comm,
        route_discrepancy=discrepancy,
        scale=asm.scale,
        charger_norm=operator_norm(asm.H_C),
        degenerate=asm.degenerate,
        window=peaks[config.measures[0]].window,
        couplings=config.couplings,
        max_witnessed_k=witnessed,
        flags=tuple(flags),
    )


class PeakOrdering(NamedTuple):
    global_max: list
    first_local: list


def _ordering(peaks: dict) -> list:
    # sorted() is stable, so equal peak times keep the input order.
    return sorted(((m, p.peak_time) for m, p in peaks.items()), key=lambda item: item[1])


def peak_ordering_report(record) -> PeakOrdering:
    """Measures sorted by peak time, under both the global and first-local rules.

    Accepts a ``RunRecord`` or any object with ``peaks`` and ``first_peaks``
    mappings of measure name to ``PeakReport``.
    """
    return PeakOrdering(_ordering(record.peaks), _ordering(record.first_peaks))


def peaks_from_series(series: dict, window=None) -> tuple[dict, dict]:
    """Global and first-local peaks for a mapping of measure name to TimeSeries."""
    g, f = {}, {}
    for name, ts in series.items():
        sig = peak_signal(name, ts)
        g[name], f[name] = peak(sig, window), first_local_peak(sig, window)
    return g, f


# ---------------------------------------------------------------------------
# files

def _fmt(x: float) -> str:
    return f"{x:.12g}"


def emit_csv(record: RunRecord, path, normalize: Optional[bool] = None) -> list[str]:
    """Write the per-time trace of a record.

    Returns the names of columns that were left unnormalized because their
    maximum magnitude is at the round-off level (``ZERO_SERIES``).
    """
    if normalize is None:
        normalize = record.config.normalize_output
    names = list(record.series)
    columns, skipped = [], []
    for name in names:
        ts = record.series[name]
        if normalize:
            if np.max(np.abs(ts.values), initial=0.0) <= ZERO_SERIES:
                skipped.append(name)
            else:
                ts = ts.normalized()
        columns.append(ts.values)
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t"] + names)
        for i, t in enumerate(record.times):
            writer.writerow([_fmt(t)] + [_fmt(col[i]) for col in columns])
    if skipped:
        log.warning("columns %s are identically zero and were not normalized", skipped)
    return skipped


def read_csv(path) -> dict:
    """Read a trace written by :func:`emit_csv` into measure -> TimeSeries."""
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(row for row in fh if not row.startswith("#")))
    if not rows or rows[0][0] != "t":
        raise ConfigError(f"{path}: not a trace CSV (header must start with 't')")
    header, body = rows[0], np.array(rows[1:], dtype=float)
    if body.ndim != 2 or body.shape[0] < 1:
        raise ConfigError(f"{path}: no data rows")
    return {name: TimeSeries(body[:, 0], body[:, k], name) for k, name in enumerate(header) if k}


def emit_report(record: RunRecord, path) -> None:
    """Peak times, scale factor and run metadata as a two-column CSV."""
    order = peak_ordering_report(record)
    rows = [
        ("scenario", record.scenario_id),
        ("mode", record.config.mode),
        ("charger_kind", record.config.charger_kind),
        ("window_t_min", _fmt(record.window[0])),
        ("window_t_max", _fmt(record.window[1])),
        ("dt", _fmt(record.config.dt)),
        ("scale", _fmt(record.scale)),
        ("charger_norm", _fmt(record.charger_norm)),
        ("route_discrepancy", _fmt(record.route_discrepancy)),
        ("dE_max", _fmt(float(np.max(record.energy.values)))),
        ("Pi_max", _fmt(float(np.max(record.power.values)))),
        ("degenerate_ground_state", str(record.degenerate).lower()),
    ]
    rows += [(k, _fmt(v)) for k, v in record.couplings.items()]
    if record.max_witnessed_k is not None:
        rows.append(("max_witnessed_k", str(record.max_witnessed_k)))
    for name, p in record.peaks.items():
        rows.append((f"t_peak_{name}", _fmt(p.peak_time)))
        rows.append((f"peak_{name}", _fmt(p.peak_value)))
        rows.append((f"t_first_peak_{name}", _fmt(record.first_peaks[name].peak_time)))
    rows.append(("order_global", " < ".join(m for m, _ in order.global_max)))
    rows.append(("order_first_local", " < ".join(m for m, _ in order.first_local)))
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(rows)


_FIELDS = {f.name: f for f in dataclasses.fields(ScenarioConfig)}


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    default = _FIELDS[key].default
    if key == "measures":
        return tuple(m.strip() for m in raw.split(",") if m.strip())
    if key == "tmi_segments":
        return tuple(int(v) for v in raw.split(","))
    if key in ("fair", "normalize_output"):
        low = raw.lower()
        if low not in ("true", "false", "1", "0", "yes", "no"):
            raise ConfigError(f"{key}: expected a boolean, got {raw!r}")
        return low in ("true", "1", "yes")
    if key in ("n_sites", "kappa"):
        return int(raw)
    if key in ("norm_target", "r", "r2"):
        return None if raw.lower() in ("", "none") else float(raw)
    if isinstance(default, float):
        return float(raw)
    return raw


def parse_config_text(text: str, source: str = "<config>") -> ScenarioConfig:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _FIELDS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = _parse_value(key, raw)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {exc}") from exc
    if "name" not in values:
        values["name"] = Path(source).stem if source != "<config>" else "scenario"
    return ScenarioConfig(**values)


def load_config(path) -> ScenarioConfig:
    path = Path(path)
    return parse_config_text(path.read_text(), str(path))


def format_config(config: ScenarioConfig) -> str:
    lines = []
    for name in _FIELDS:
        value = getattr(config, name)
        if isinstance(value, tuple):
            value = ",".join(str(v) for v in value)
        elif isinstance(value, bool):
            value = str(value).lower()
        elif value is None:
            value = "none"
        lines.append(f"{name} = {value}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# sweeps

@dataclass(frozen=True)
class SweepResult:
    axis: str
    records: list
    summary: list
    warnings: list

    def summary_header(self) -> list[str]:
        return list(self.summary[0]) if self.summary else ["value", "dE_max", "Pi_max", "t_peak_Pi"]


def _sweep_config(base: ScenarioConfig, axis: str, value) -> ScenarioConfig:
    if axis == "kappa":
        return base.with_(kappa=int(value), name=f"{base.name}_kappa{int(value)}")
    if axis == "N":
        return base.with_(n_sites=int(value), name=f"{base.name}_N{int(value)}")
    value = float(value)
    return base.with_(**{axis: value}, name=f"{base.name}_{axis}{value:g}")


def summary_row(value, record: RunRecord) -> dict:
    row = {
        "value": value,
        "dE_max": float(np.max(record.energy.values)),
        "Pi_max": float(np.max(record.power.values)),
        "t_peak_Pi": peak(record.power).peak_time,
    }
    for name, p in record.peaks.items():
        if name != "Pi":
            row[f"t_peak_{name}"] = p.peak_time
    return row


def run_sweep(base: ScenarioConfig, axis: str, values: Sequence, workers: int = 1) -> SweepResult:
    """Independent runs of ``base`` with ``axis`` set to each of ``values``.

    Values that make an invalid scenario are skipped and reported in
    ``warnings``; output order follows ``values``.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
    configs, notes = [], []
    for v in values:
        try:
            configs.append((v, _sweep_config(base, axis, v)))
        except (ConfigError, ValueError) as exc:
            notes.append(f"{axis}={v}: skipped ({exc})")
            log.warning(notes[-1])
    if workers > 1 and len(configs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda vc: run(vc[1]), configs))
    else:
        records = [run(c) for _, c in configs]
    summary = [summary_row(v, rec) for (v, _), rec in zip(configs, records)]
    return SweepResult(axis, records, summary, notes)


def emit_summary_csv(result: SweepResult, path) -> None:
    header = result.summary_header()
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in result.summary:
            writer.writerow([_fmt(float(row.get(k, math.nan))) for k in header])
