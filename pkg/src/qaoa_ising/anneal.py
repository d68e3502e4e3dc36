"""Simulated-annealing ground-state search and finite-size scaling.

Single-spin-flip Metropolis with a geometric temperature schedule, restarted
from independent random configurations; the best configuration over all
restarts wins. The hot end of the schedule sits above the largest local
field scale, T_hot = J1 * max(1, h + 4*J2), and cools to T_cold = 0.05 * J1.
Each restart spends ``sweeps`` single-flip proposals (default 200 * N).

Determinism: every (cell, restart) task derives its generator from
np.random.SeedSequence((seed, n, cell_index, restart_index)), so results are
independent of thread count and scheduling order.

The scaling workload anneals a field-aligned magnetization grid over
(h, J2) for several lattice sizes, computes the RMSE of each grid against
the largest size, and fits RMSE ~ a * n^exponent on log-log axes.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numba import njit
from scipy.stats import linregress

from .errors import ContractViolation, DegenerateInputError
from .ising import IsingModel, SpinConfig, energy, field_aligned_magnetization
from .lattice import LatticeKind, UnitCell, build_unit_cell

__all__ = [
    "AnnealConfig",
    "MagnetizationGrid",
    "PowerLawFit",
    "FiniteSizeScan",
    "default_axes",
    "anneal",
    "magnetization_grid",
    "rmse",
    "fit_power_law",
    "finite_size_scan",
]

SWEEP_FACTOR = 200  # default proposals per restart = SWEEP_FACTOR * n_sites
T_COLD_FACTOR = 0.05


@dataclass(frozen=True)
class AnnealConfig:
    """Annealing budget and schedule.

    sweeps: single-flip proposals per restart; None means 200 * N.
    t_hot / t_cold: explicit schedule endpoints; None derives them from the
    model (J1 * max(1, h + 4*J2) down to 0.05 * J1).
    """

    sweeps: int | None = None
    restarts: int = 50
    seed: int = 0
    t_hot: float | None = None
    t_cold: float | None = None

    def __post_init__(self):
        if self.restarts < 1:
            raise ContractViolation(f"need restarts >= 1, got {self.restarts}")
        if self.sweeps is not None and self.sweeps < 1:
            raise ContractViolation(f"need sweeps >= 1, got {self.sweeps}")

    def schedule_for(self, model: IsingModel) -> tuple[float, float]:
        hot = self.t_hot if self.t_hot is not None else model.j1 * max(
            1.0, model.h + 4.0 * model.j2
        )
        cold = self.t_cold if self.t_cold is not None else T_COLD_FACTOR * model.j1
        if not hot > cold > 0.0:
            raise ContractViolation(
                f"schedule needs T_hot > T_cold > 0, got ({hot}, {cold})"
            )
        return hot, cold

    def steps_for(self, n_sites: int) -> int:
        return self.sweeps if self.sweeps is not None else SWEEP_FACTOR * n_sites


@dataclass(frozen=True)
class MagnetizationGrid:
    """Field-aligned magnetization of the best annealed config per (h, J2)."""

    n: int
    h_axis: np.ndarray
    j2_axis: np.ndarray
    values: np.ndarray  # shape (len(h_axis), len(j2_axis))

    @property
    def n_cells(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class PowerLawFit:
    """rmse ~ prefactor * n^exponent, least squares on log10-log10 axes."""

    prefactor: float
    exponent: float
    exponent_stderr: float
    r_squared: float


@dataclass(frozen=True)
class FiniteSizeScan:
    kind: LatticeKind
    sizes: tuple[int, ...]
    reference_n: int
    rmse_points: tuple[tuple[int, float], ...]
    fit: PowerLawFit
    grids: tuple[MagnetizationGrid, ...] = field(repr=False, default=())


def default_axes() -> np.ndarray:
    """30 values over [0, 6) with step 0.2."""
    return np.linspace(0.0, 5.8, 30)


@njit(cache=True, nogil=True)
def _metropolis(spins, indptr, indices, weights, h, t_hot, t_cold, sites, uniforms):
    """One restart: anneal in place, return (best energy, best spins).

    The energy is tracked incrementally; callers should recompute the energy
    of the returned configuration exactly.
    """
    n = spins.shape[0]
    e = 0.0
    for i in range(n):
        si = spins[i]
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j > i:
                e += weights[k] * si * spins[j]
        e += h * si
    best_e = e
    best = spins.copy()
    n_steps = sites.shape[0]
    cool = (t_cold / t_hot) ** (1.0 / (n_steps - 1)) if n_steps > 1 else 1.0
    t = t_hot
    for step in range(n_steps):
        i = sites[step]
        si = spins[i]
        local = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            local += weights[k] * spins[indices[k]]
        de = -2.0 * si * (local + h)
        if de <= 0.0 or uniforms[step] < np.exp(-de / t):
            spins[i] = -si
            e += de
            if e < best_e:
                best_e = e
                best[:] = spins
        t *= cool
    return best_e, best


def _adjacency(cell: UnitCell) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """CSR neighbor lists with 0/1 masks marking NN vs NNN bonds."""
    n = cell.n_sites
    nbrs: list[list[tuple[int, bool]]] = [[] for _ in range(n)]
    for (i, j) in cell.nn_edges:
        nbrs[i].append((j, True))
        nbrs[j].append((i, True))
    for (i, j) in cell.nnn_edges:
        nbrs[i].append((j, False))
        nbrs[j].append((i, False))
    indptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        indptr[i + 1] = indptr[i] + len(nbrs[i])
    indices = np.empty(indptr[-1], dtype=np.int64)
    nn_mask = np.zeros(indptr[-1])
    nnn_mask = np.zeros(indptr[-1])
    k = 0
    for i in range(n):
        for j, is_nn in nbrs[i]:
            indices[k] = j
            (nn_mask if is_nn else nnn_mask)[k] = 1.0
            k += 1
    return indptr, indices, nn_mask, nnn_mask


def _spins_to_config(spins: np.ndarray) -> SpinConfig:
    bits = 0
    for i, s in enumerate(spins):
        if s < 0:
            bits |= 1 << i
    return SpinConfig(bits, len(spins))


def _anneal_cell(
    model: IsingModel,
    config: AnnealConfig,
    indptr: np.ndarray,
    indices: np.ndarray,
    weights: np.ndarray,
    cell_index: int,
) -> tuple[SpinConfig, float]:
    n = model.n_sites
    t_hot, t_cold = config.schedule_for(model)
    n_steps = config.steps_for(n)
    best_e = np.inf
    best_spins = None
    for restart in range(config.restarts):
        ss = np.random.SeedSequence((config.seed, n, cell_index, restart))
        rng = np.random.default_rng(ss)
        spins = (rng.integers(0, 2, size=n) * 2 - 1).astype(np.int8)
        sites = rng.integers(0, n, size=n_steps)
        uniforms = rng.random(n_steps)
        e, spins_out = _metropolis(
            spins, indptr, indices, weights, model.h, t_hot, t_cold, sites, uniforms
        )
        if e < best_e:
            best_e = e
            best_spins = spins_out
    cfg = _spins_to_config(best_spins)
    return cfg, energy(model, cfg)


def anneal(model: IsingModel, config: AnnealConfig | None = None) -> tuple[SpinConfig, float]:
    """Best-of-restarts annealed ground-state estimate and its exact energy."""
    config = config or AnnealConfig()
    indptr, indices, nn_mask, nnn_mask = _adjacency(model.cell)
    weights = model.j1 * nn_mask + model.j2 * nnn_mask
    return _anneal_cell(model, config, indptr, indices, weights, cell_index=0)


def magnetization_grid(
    kind: LatticeKind,
    n: int,
    config: AnnealConfig | None = None,
    h_axis: np.ndarray | None = None,
    j2_axis: np.ndarray | None = None,
    j1: float = 1.0,
    threads: int = 1,
) -> MagnetizationGrid:
    """Anneal every (h, J2) cell and record field-aligned magnetization."""
    config = config or AnnealConfig()
    h_axis = default_axes() if h_axis is None else np.asarray(h_axis, dtype=float)
    j2_axis = default_axes() if j2_axis is None else np.asarray(j2_axis, dtype=float)
    cell = build_unit_cell(kind, n)
    indptr, indices, nn_mask, nnn_mask = _adjacency(cell)
    values = np.empty((h_axis.size, j2_axis.size))

    def run(cell_index: int) -> None:
        i, j = divmod(cell_index, j2_axis.size)
        h, j2 = float(h_axis[i]), float(j2_axis[j])
        model = IsingModel(cell=cell, j1=j1, j2=j2, h=h)
        weights = j1 * nn_mask + j2 * nnn_mask
        cfg, _ = _anneal_cell(model, config, indptr, indices, weights, cell_index)
        values[i, j] = float(field_aligned_magnetization(cfg, h))

    tasks = range(h_axis.size * j2_axis.size)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, tasks))
    else:
        for t in tasks:
            run(t)
    return MagnetizationGrid(n=n, h_axis=h_axis, j2_axis=j2_axis, values=values)


def rmse(grid_a: MagnetizationGrid, grid_ref: MagnetizationGrid) -> float:
    """Root-mean-square magnetization difference over matching (h, J2) axes."""
    same_axes = (
        grid_a.h_axis.shape == grid_ref.h_axis.shape
        and grid_a.j2_axis.shape == grid_ref.j2_axis.shape
        and np.allclose(grid_a.h_axis, grid_ref.h_axis)
        and np.allclose(grid_a.j2_axis, grid_ref.j2_axis)
    )
    if not same_axes:
        raise ContractViolation("grids were sampled on different (h, J2) axes")
    diff = grid_a.values - grid_ref.values
    return float(np.sqrt(np.mean(diff * diff)))


def fit_power_law(points: list[tuple[float, float]]) -> PowerLawFit:
    """Fit rmse = a * n^exponent by least squares on (log10 n, log10 rmse).

    Non-positive rmse values cannot be logged; they are dropped with a
    warning. At least three usable points must remain.
    """
    usable = [(s, r) for s, r in points if r > 0.0]
    dropped = len(points) - len(usable)
    if dropped:
        warnings.warn(
            f"dropped {dropped} non-positive rmse point(s) from the fit",
            stacklevel=2,
        )
    if len(usable) < 3:
        raise DegenerateInputError(
            f"power-law fit needs >= 3 positive points, got {len(usable)}"
        )
    log_n = np.log10([s for s, _ in usable])
    log_r = np.log10([r for _, r in usable])
    result = linregress(log_n, log_r)
    return PowerLawFit(
        prefactor=float(10.0 ** result.intercept),
        exponent=float(result.slope),
        exponent_stderr=float(result.stderr),
        r_squared=float(result.rvalue**2),
    )


def finite_size_scan(
    kind: LatticeKind,
    sizes: list[int],
    config: AnnealConfig | None = None,
    h_axis: np.ndarray | None = None,
    j2_axis: np.ndarray | None = None,
    j1: float = 1.0,
    threads: int = 1,
    keep_grids: bool = False,
) -> FiniteSizeScan:
    """Magnetization grids for several sizes, RMSE against the largest,
    and the fitted power law. The reference size is excluded from the fit
    (its RMSE is identically zero)."""
    if len(sizes) < 4:
        raise ContractViolation(
            "scan needs >= 4 sizes: three fit points plus the reference"
        )
    sizes = sorted(sizes)
    reference_n = sizes[-1]
    grids = [
        magnetization_grid(kind, s, config, h_axis, j2_axis, j1, threads)
        for s in sizes
    ]
    reference = grids[-1]
    points = [(s, rmse(g, reference)) for s, g in zip(sizes[:-1], grids[:-1])]
    fit = fit_power_law([(float(s), r) for s, r in points])
    return FiniteSizeScan(
        kind=kind,
        sizes=tuple(sizes),
        reference_n=reference_n,
        rmse_points=tuple(points),
        fit=fit,
        grids=tuple(grids) if keep_grids else (),
    )
