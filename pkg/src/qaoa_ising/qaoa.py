"""Exact statevector simulation of p-layer QAOA and its observables.

The state lives in a length-2^N complex array whose index is a SpinConfig
label: bit i (least significant first) is site i. One layer applies the
diagonal phase unitary exp(-i * gamma * H) followed by the product mixer
exp(-i * beta * X) on every qubit.

The (gamma_1, beta_1) grid search evaluates every lattice point of a
rectangular window: beta in [-pi/2, pi/2] (201 points by default) and gamma
symmetric about zero with halfwidth 0.55 * pi / iota, where iota is the
average magnitude of the Hamiltonian coefficients (300 points by default).
Both endpoint-inclusive counts multiply to the 60,300 evaluations the default
window performs. The hot loop reuses one per-model energy table and batches
statevectors over the gamma axis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import pi

import numpy as np

from .errors import ContractViolation, DegenerateScalingError, SizeGuardError
from .ising import (
    GroundStateSet,
    IsingModel,
    SpinConfig,
    energy_table,
    enumerate_ground_states,
)
from .lattice import edge_counts

__all__ = [
    "QaoaAngles",
    "GridSpec",
    "GridPoint",
    "GridResult",
    "ShotCounts",
    "Objective",
    "iota",
    "initial_state",
    "apply_phase",
    "apply_mixer",
    "evolve",
    "expectation_energy",
    "p_ground",
    "grid_search",
    "sample",
    "sem_energy",
    "sem_probability",
]

MAX_QUBITS = 24


@dataclass(frozen=True)
class QaoaAngles:
    """Phase angles gamma and mixer angles beta for p layers, in radians."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas) or not self.gammas:
            raise ContractViolation(
                f"need equal-length non-empty angle lists, got "
                f"{len(self.gammas)} gammas / {len(self.betas)} betas"
            )

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def single(cls, gamma: float, beta: float) -> "QaoaAngles":
        return cls((gamma,), (beta,))


@dataclass(frozen=True)
class GridSpec:
    """Search window for the one-layer (gamma_1, beta_1) grid.

    beta points span [-pi/2, pi/2]; gamma points span
    [-gamma_halfwidth_factor * pi / iota, +gamma_halfwidth_factor * pi / iota].
    Endpoints are included on both axes.
    """

    n_beta: int = 201
    n_gamma: int = 300
    gamma_halfwidth_factor: float = 0.55
    keep_surfaces: bool = True

    def __post_init__(self):
        if self.n_beta < 1 or self.n_gamma < 1:
            raise ContractViolation("grid needs at least one point per axis")

    def beta_axis(self) -> np.ndarray:
        return np.linspace(-pi / 2, pi / 2, self.n_beta)

    def gamma_axis(self, iota_value: float) -> np.ndarray:
        halfwidth = self.gamma_halfwidth_factor * pi / iota_value
        return np.linspace(-halfwidth, halfwidth, self.n_gamma)


class Objective(enum.Enum):
    ENERGY = "energy"
    GROUND_PROB = "pground"


@dataclass(frozen=True)
class GridPoint:
    gamma: float
    beta: float
    energy: float
    p_ground: float


@dataclass(frozen=True)
class GridResult:
    """Both optima from one grid pass, plus the evaluated surfaces."""

    objective: Objective
    best_energy_point: GridPoint
    best_prob_point: GridPoint
    gamma_axis: np.ndarray
    beta_axis: np.ndarray
    n_evaluations: int
    energy_surface: np.ndarray | None  # (n_gamma, n_beta)
    p_ground_surface: np.ndarray | None

    @property
    def selected_point(self) -> GridPoint:
        if self.objective is Objective.GROUND_PROB:
            return self.best_prob_point
        return self.best_energy_point


@dataclass(frozen=True)
class ShotCounts:
    """Measurement outcome counts; only observed configs are stored."""

    counts: dict[SpinConfig, int]
    n_shots: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.n_shots:
            raise ContractViolation("counts do not sum to n_shots")

    def count(self, config: SpinConfig) -> int:
        return self.counts.get(config, 0)

    def frequency(self, config: SpinConfig) -> float:
        return self.count(config) / self.n_shots


def iota(model: IsingModel) -> float:
    """Average magnitude of the Hamiltonian coefficients.

    (N*h + J1*E_NN + J2*E_NNN) / (N + E_NN + E_NNN); sets the searched
    gamma window width. Must come out positive to define a window.
    """
    e_nn, e_nnn = edge_counts(model.cell)
    n = model.n_sites
    total_terms = n + e_nn + e_nnn
    if total_terms == 0:
        raise DegenerateScalingError("model has no Hamiltonian terms")
    value = (n * model.h + model.j1 * e_nn + model.j2 * e_nnn) / total_terms
    if value <= 0:
        raise DegenerateScalingError(
            f"coefficient average {value} is not positive; "
            "cannot scale the gamma search window"
        )
    return value


def initial_state(n_qubits: int) -> np.ndarray:
    """Uniform superposition over all 2^N basis states."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise SizeGuardError(f"need 1 <= N <= {MAX_QUBITS}, got {n_qubits}")
    dim = 1 << n_qubits
    return np.full(dim, dim ** -0.5, dtype=np.complex128)


def apply_phase(state: np.ndarray, model: IsingModel, gamma: float) -> np.ndarray:
    """Diagonal phase layer: a_z *= exp(-i * gamma * E(z))."""
    table = energy_table(model)
    if state.shape != table.shape:
        raise ContractViolation(
            f"state dim {state.shape} != 2^N for model with N={model.n_sites}"
        )
    return state * np.exp(-1j * gamma * table)


def _single_qubit_mixer(beta: float) -> np.ndarray:
    c = np.cos(beta)
    s = -1j * np.sin(beta)
    return np.array([[c, s], [s, c]], dtype=np.complex128)


def _apply_one_qubit_gates(batch: np.ndarray, n_qubits: int, gate: np.ndarray) -> np.ndarray:
    """Apply the same 2x2 gate to every qubit of a (..., 2^N) batch."""
    lead = batch.shape[:-1]
    work = batch.reshape(lead + (2,) * n_qubits)
    # axis len(lead) + k holds bit (n_qubits - 1 - k); the mixer is identical
    # on every qubit so the axis <-> site mapping does not matter here
    offset = len(lead)
    for axis in range(offset, offset + n_qubits):
        work = np.tensordot(gate, work, axes=([1], [axis]))
        work = np.moveaxis(work, 0, axis)
    return np.ascontiguousarray(work.reshape(lead + (batch.shape[-1],)))


def apply_mixer(state: np.ndarray, beta: float) -> np.ndarray:
    """Product mixer exp(-i * beta * X) on every qubit."""
    n_qubits = state.shape[-1].bit_length() - 1
    if (1 << n_qubits) != state.shape[-1]:
        raise ContractViolation(f"state dim {state.shape[-1]} is not a power of two")
    return _apply_one_qubit_gates(state, n_qubits, _single_qubit_mixer(beta))


def evolve(model: IsingModel, angles: QaoaAngles) -> np.ndarray:
    """Prepare the p-layer QAOA state for a model."""
    state = initial_state(model.n_sites)
    for gamma, beta in zip(angles.gammas, angles.betas):
        state = apply_phase(state, model, gamma)
        state = apply_mixer(state, beta)
    return state


def expectation_energy(state: np.ndarray, model: IsingModel) -> float:
    """<H> = sum_z |a_z|^2 * E(z)."""
    table = energy_table(model)
    if state.shape != table.shape:
        raise ContractViolation("state/model width mismatch")
    probs = np.abs(state) ** 2
    return float(probs @ table)


def p_ground(state: np.ndarray, ground: GroundStateSet) -> float:
    """Ground-state probability averaged over the degenerate ground set."""
    if not ground.configs:
        raise ContractViolation("empty ground set")
    probs = np.abs(state) ** 2
    idx = [c.bits for c in ground.configs]
    return float(probs[idx].sum() / ground.degeneracy)


def _argbest(values: np.ndarray, abs_gamma: np.ndarray, abs_beta: np.ndarray) -> int:
    """Index of the smallest value; exact ties broken by smallest |gamma|,
    then smallest |beta|, then scan order."""
    order = np.lexsort((abs_beta, abs_gamma, values))
    return int(order[0])


def grid_search(
    model: IsingModel,
    spec: GridSpec | None = None,
    objective: Objective = Objective.ENERGY,
    ground: GroundStateSet | None = None,
) -> GridResult:
    """Evaluate one-layer QAOA at every (gamma_1, beta_1) lattice point.

    Records both the <H>-minimizing point and the P_ground-maximizing point in
    a single pass. The returned result carries the requested objective for
    callers picking one of the two.
    """
    spec = spec or GridSpec()
    if ground is None:
        ground = enumerate_ground_states(model)
    n = model.n_sites
    dim = 1 << n
    table = energy_table(model)
    ground_idx = np.array([c.bits for c in ground.configs])

    gammas = spec.gamma_axis(iota(model))
    betas = spec.beta_axis()

    # phase-evolved batch, one row per gamma; the beta loop applies the mixer
    phase_batch = np.exp(-1j * np.outer(gammas, table)) * dim ** -0.5

    energy_surface = np.empty((spec.n_gamma, spec.n_beta))
    prob_surface = np.empty((spec.n_gamma, spec.n_beta))
    for b, beta in enumerate(betas):
        states = _apply_one_qubit_gates(phase_batch, n, _single_qubit_mixer(beta))
        probs = np.abs(states) ** 2
        energy_surface[:, b] = probs @ table
        prob_surface[:, b] = probs[:, ground_idx].sum(axis=1) / ground.degeneracy
    n_evaluations = spec.n_gamma * spec.n_beta

    # scan order: gamma-major, beta-minor
    abs_gamma = np.repeat(np.abs(gammas), spec.n_beta)
    abs_beta = np.tile(np.abs(betas), spec.n_gamma)
    flat_e = energy_surface.ravel()
    flat_p = prob_surface.ravel()

    def point(flat_index: int) -> GridPoint:
        gi, bi = divmod(flat_index, spec.n_beta)
        return GridPoint(
            gamma=float(gammas[gi]),
            beta=float(betas[bi]),
            energy=float(energy_surface[gi, bi]),
            p_ground=float(prob_surface[gi, bi]),
        )

    best_energy = point(_argbest(flat_e, abs_gamma, abs_beta))
    best_prob = point(_argbest(-flat_p, abs_gamma, abs_beta))

    return GridResult(
        objective=objective,
        best_energy_point=best_energy,
        best_prob_point=best_prob,
        gamma_axis=gammas,
        beta_axis=betas,
        n_evaluations=n_evaluations,
        energy_surface=energy_surface if spec.keep_surfaces else None,
        p_ground_surface=prob_surface if spec.keep_surfaces else None,
    )


def sample(state: np.ndarray, n_shots: int, seed) -> ShotCounts:
    """Multinomial draw of n_shots measurements from |a_z|^2.

    Deterministic for a fixed seed (numpy default_rng / PCG64).
    """
    if n_shots < 1:
        raise ContractViolation(f"need n_shots >= 1, got {n_shots}")
    n_qubits = state.shape[-1].bit_length() - 1
    probs = np.abs(state) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    raw = rng.multinomial(n_shots, probs)
    counts = {
        SpinConfig(int(z), n_qubits): int(c) for z, c in enumerate(raw) if c > 0
    }
    return ShotCounts(counts=counts, n_shots=n_shots)


def sem_energy(state: np.ndarray, model: IsingModel, n_shots: int) -> float:
    """Standard error of the mean energy at n_shots measurements."""
    if n_shots < 1:
        raise ContractViolation(f"need n_shots >= 1, got {n_shots}")
    table = energy_table(model)
    probs = np.abs(state) ** 2
    mean = float(probs @ table)
    second = float(probs @ (table * table))
    var = max(second - mean * mean, 0.0)
    return (var / n_shots) ** 0.5


def sem_probability(p: float, n_shots: int) -> float:
    """sqrt(p * (1 - p) / n_shots)."""
    if not 0.0 <= p <= 1.0:
        raise ContractViolation(f"probability out of range: {p}")
    if n_shots < 1:
        raise ContractViolation(f"need n_shots >= 1, got {n_shots}")
    return (p * (1.0 - p) / n_shots) ** 0.5
