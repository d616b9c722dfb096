"""Ready-made scenario configurations for the charging experiments.

All presets use N = 8, h_z = 1 and the default window t in [0, 10] with
dt = 0.005 unless overridden through ``**overrides``.
"""

from __future__ import annotations

from .runner import DEFAULT_FLIP_RATIO, DEFAULT_NNN_RATIO, MEASURES, ScenarioConfig

# Interaction sets (J_x, J_y, J_z) for the 2-local temporal-ordering runs.
COUPLING_SETS = {"a": (1.0, 0.0, 0.0), "b": (1.0, 1.0, 0.0), "c": (1.0, 1.0, 1.0)}


def temporal_ordering(case: str, mode: str = "charger_interacting", **overrides) -> ScenarioConfig:
    """2-local chain with h_x = h_z = 1 and every measure switched on."""
    J_x, J_y, J_z = COUPLING_SETS[case]
    cfg = ScenarioConfig(
        name=f"ordering_{mode}_{case}", mode=mode, n_sites=8, h_z=1.0, h_x=1.0,
        J_x=J_x, J_y=J_y, J_z=J_z, kappa=2, measures=MEASURES,
    )
    return cfg.with_(**overrides)


def parallel(h_x: float, **overrides) -> ScenarioConfig:
    """Independent spins driven by a transverse field, no norm constraint."""
    cfg = ScenarioConfig(name=f"parallel_hx{h_x:g}", charger_kind="parallel_field", h_x=h_x, kappa=1)
    return cfg.with_(**overrides)


def global_product(J_x: float, **overrides) -> ScenarioConfig:
    """Single N-site sigma^x string charger without transverse field."""
    cfg = ScenarioConfig(name=f"global_Jx{J_x:g}", J_x=J_x, kappa=8, h_x=0.0)
    return cfg.with_(**overrides)


def fair_klocal(kappa: int, flipping: str = "none", **overrides) -> ScenarioConfig:
    """kappa-local charger rescaled to ||H_C|| = N.

    ``flipping`` selects the transverse field: ``"none"`` (h_x = 0),
    ``"equal"`` (J_x = h_x) or ``"strong"`` (J_x = DEFAULT_FLIP_RATIO * h_x).
    """
    if flipping == "none":
        extra = dict(J_x=1.0, h_x=0.0)
    elif flipping == "equal":
        extra = dict(J_x=1.0, h_x=1.0)
    elif flipping == "strong":
        extra = dict(h_x=1.0, r=DEFAULT_FLIP_RATIO)
    else:
        raise ValueError(f"unknown flipping option {flipping!r}")
    cfg = ScenarioConfig(
        name=f"fair_{flipping}_kappa{kappa}", kappa=kappa, fair=True,
        measures=("W", "Pi", "QFI", "ABEE"), **extra,
    )
    return cfg.with_(**overrides)


def fair_nnn(r2: float = DEFAULT_NNN_RATIO, **overrides) -> ScenarioConfig:
    """Nearest plus next-nearest neighbour x couplings at ||H_C|| = N; r2 = inf is NN only."""
    cfg = ScenarioConfig(
        name=f"fair_nnn_r2{r2:g}", charger_kind="nnn_extended", kappa=2,
        J_x1=1.0, r2=r2, fair=True, measures=("W", "Pi"),
    )
    return cfg.with_(**overrides)
