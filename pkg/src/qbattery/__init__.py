"""Exact-diagonalization simulator for spin-chain quantum batteries.

Builds battery and kappa-local charger Hamiltonians, evolves the chain
exactly, and tracks stored energy, instantaneous power and a set of
entanglement measures (concurrence, entropies, tripartite mutual
information, quantum Fisher information).
"""

from .correlations import (
    SegmentPartition,
    WitnessReport,
    abee,
    bee_half_cut,
    concurrence,
    mutual_information,
    qfi,
    qfi_bound,
    qfi_witness,
    tmi,
    von_neumann_entropy,
)
from .dynamics import Propagator, TimeGrid, diagonalize, evolve, evolve_series
from .energetics import (
    PeakReport,
    TimeSeries,
    first_local_peak,
    peak,
    power_commutator,
    power_finite_difference,
    stored_energy,
)
from .hamiltonians import (
    ChargerSpec,
    CouplingConfig,
    build_battery,
    build_charger_klocal,
    build_charger_nnn,
    build_total,
    ground_state,
    normalize_to,
    operator_norm,
)
from .runner import (
    RunRecord,
    ScenarioConfig,
    assemble,
    emit_csv,
    peak_ordering_report,
    run,
    run_sweep,
)
from .spin_hilbert import basis_state, partial_trace, pauli_string, reduced_pair

__version__ = "0.1.0"
