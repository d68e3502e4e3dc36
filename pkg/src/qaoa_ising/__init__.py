"""Ground states of frustrated Ising unit cells: exact enumeration,
one-layer QAOA grid search, simulated-annealing finite-size scaling, and
readout-error mitigation, with a file-emitting CLI."""

from .anneal import (
    AnnealConfig,
    FiniteSizeScan,
    MagnetizationGrid,
    PowerLawFit,
    anneal,
    default_axes,
    finite_size_scan,
    fit_power_law,
    magnetization_grid,
    rmse,
)
from .errors import (
    ContractViolation,
    DegenerateInputError,
    DegenerateScalingError,
    DomainError,
    SizeGuardError,
)
from .ising import (
    GroundStateSet,
    IsingModel,
    PhaseCell,
    PhaseDiagram,
    SpinConfig,
    energy,
    energy_table,
    enumerate_ground_states,
    field_aligned_magnetization,
    magnetization,
    phase_diagram,
    region_label,
)
from .lattice import LatticeKind, UnitCell, build_unit_cell, edge_counts
from .qaoa import (
    GridPoint,
    GridResult,
    GridSpec,
    Objective,
    QaoaAngles,
    ShotCounts,
    apply_mixer,
    apply_phase,
    evolve,
    expectation_energy,
    grid_search,
    initial_state,
    iota,
    p_ground,
    sample,
    sem_energy,
    sem_probability,
)
from .spam import (
    SpamModel,
    apply_channel,
    counts_to_distribution,
    mitigate_clipped,
    mitigate_inverse,
    uniform_symmetric,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AnnealConfig",
    "ContractViolation",
    "DegenerateInputError",
    "DegenerateScalingError",
    "DomainError",
    "FiniteSizeScan",
    "GridPoint",
    "GridResult",
    "GridSpec",
    "GroundStateSet",
    "IsingModel",
    "LatticeKind",
    "MagnetizationGrid",
    "Objective",
    "PhaseCell",
    "PhaseDiagram",
    "PowerLawFit",
    "QaoaAngles",
    "ShotCounts",
    "SizeGuardError",
    "SpamModel",
    "SpinConfig",
    "UnitCell",
    "anneal",
    "apply_channel",
    "apply_mixer",
    "apply_phase",
    "build_unit_cell",
    "counts_to_distribution",
    "default_axes",
    "edge_counts",
    "energy",
    "energy_table",
    "enumerate_ground_states",
    "evolve",
    "expectation_energy",
    "field_aligned_magnetization",
    "finite_size_scan",
    "fit_power_law",
    "grid_search",
    "initial_state",
    "iota",
    "magnetization",
    "magnetization_grid",
    "mitigate_clipped",
    "mitigate_inverse",
    "p_ground",
    "phase_diagram",
    "region_label",
    "rmse",
    "sample",
    "sem_energy",
    "sem_probability",
    "uniform_symmetric",
]
