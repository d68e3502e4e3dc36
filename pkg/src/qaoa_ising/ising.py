"""Exact classical energetics for Ising unit cells.

The Hamiltonian is

    E(s) = J1 * sum_{(i,j) in NN} s_i s_j
         + J2 * sum_{(i,j) in NNN} s_i s_j
         + h  * sum_i s_i

with spins s_i in {+1, -1} encoded as bits: s_i = 1 - 2 * z_i, so z_i = 0
means spin up. Basis index bit i (least significant bit first) is site i in
row-major order.

With positive h the field term favors s_i = -1, so the reported
"field-aligned" magnetization flips the sign of the raw magnetization for
h != 0: spins that lower the field energy count positive.

Everything here is exhaustive and exact; a size guard rejects N > 24.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ContractViolation, SizeGuardError
from .lattice import LatticeKind, UnitCell, build_unit_cell

__all__ = [
    "IsingModel",
    "SpinConfig",
    "GroundStateSet",
    "PhaseCell",
    "PhaseDiagram",
    "energy",
    "energy_table",
    "magnetization",
    "field_aligned_magnetization",
    "enumerate_ground_states",
    "phase_diagram",
    "region_label",
]

MAX_EXHAUSTIVE_SITES = 24
DEGENERACY_ATOL = 1e-9


@dataclass(frozen=True)
class IsingModel:
    """Unit cell plus coefficients. The single source of energy truth."""

    cell: UnitCell
    j1: float
    j2: float
    h: float

    @property
    def n_sites(self) -> int:
        return self.cell.n_sites


@dataclass(frozen=True, order=True)
class SpinConfig:
    """A basis label: bit i of `bits` is z_i for site i (row-major)."""

    bits: int
    width: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.width):
            raise ContractViolation(
                f"bits {self.bits} out of range for width {self.width}"
            )

    def bit(self, i: int) -> int:
        return (self.bits >> i) & 1

    def spin(self, i: int) -> int:
        """s_i = 1 - 2 * z_i, in {+1, -1}."""
        return 1 - 2 * self.bit(i)

    def spins(self) -> np.ndarray:
        z = (self.bits >> np.arange(self.width)) & 1
        return (1 - 2 * z).astype(np.int8)

    def complement(self) -> "SpinConfig":
        return SpinConfig(self.bits ^ ((1 << self.width) - 1), self.width)

    def to01(self) -> str:
        """Length-N string of '0'/'1', site 0 first."""
        return "".join(str(self.bit(i)) for i in range(self.width))

    @classmethod
    def from01(cls, text: str) -> "SpinConfig":
        bits = 0
        for i, ch in enumerate(text):
            if ch not in "01":
                raise ContractViolation(f"not a 0/1 string: {text!r}")
            bits |= int(ch) << i
        return cls(bits, len(text))


@dataclass(frozen=True)
class GroundStateSet:
    """All exact minimizers of a model, from an exhaustive scan."""

    energy: float
    configs: tuple[SpinConfig, ...]

    @property
    def degeneracy(self) -> int:
        return len(self.configs)


@dataclass(frozen=True)
class PhaseCell:
    h: float
    j2: float
    mean_field_aligned_m: Fraction
    region_id: str
    degeneracy: int
    energy: float


@dataclass(frozen=True)
class PhaseDiagram:
    h_axis: tuple[float, ...]
    j2_axis: tuple[float, ...]
    cells: tuple[tuple[PhaseCell, ...], ...]  # cells[i][j] at (h_axis[i], j2_axis[j])

    def iter_cells(self):
        for row in self.cells:
            yield from row


@lru_cache(maxsize=8)
def _spin_matrix(width: int) -> np.ndarray:
    """(2^width, width) matrix of spins s_i = +/-1 for every basis index."""
    z = (np.arange(1 << width)[:, None] >> np.arange(width)) & 1
    return (1 - 2 * z).astype(np.int8)


def _check_width(model: IsingModel, config: SpinConfig) -> None:
    if config.width != model.n_sites:
        raise ContractViolation(
            f"config width {config.width} != model sites {model.n_sites}"
        )


def energy(model: IsingModel, config: SpinConfig) -> float:
    """Evaluate the Hamiltonian term-by-term in canonical edge order."""
    _check_width(model, config)
    nn = 0.0
    for (i, j) in model.cell.nn_edges:
        nn += config.spin(i) * config.spin(j)
    nnn = 0.0
    for (i, j) in model.cell.nnn_edges:
        nnn += config.spin(i) * config.spin(j)
    field = 0.0
    for i in range(config.width):
        field += config.spin(i)
    return model.j1 * nn + model.j2 * nnn + model.h * field


def energy_table(model: IsingModel) -> np.ndarray:
    """Energies of all 2^N configs, indexed by basis label.

    Accumulates per-edge terms in canonical edge order so entries match the
    scalar `energy` path bit for bit.
    """
    n = model.n_sites
    if n > MAX_EXHAUSTIVE_SITES:
        raise SizeGuardError(f"exhaustive table needs N <= {MAX_EXHAUSTIVE_SITES}, got {n}")
    s = _spin_matrix(n)
    nn = np.zeros(1 << n)
    for (i, j) in model.cell.nn_edges:
        nn += s[:, i] * s[:, j]
    nnn = np.zeros(1 << n)
    for (i, j) in model.cell.nnn_edges:
        nnn += s[:, i] * s[:, j]
    field = np.zeros(1 << n)
    for i in range(n):
        field += s[:, i]
    return model.j1 * nn + model.j2 * nnn + model.h * field


def magnetization(config: SpinConfig) -> Fraction:
    """(1/N) * sum_i s_i as an exact rational."""
    total = config.width - 2 * bin(config.bits).count("1")
    return Fraction(total, config.width)


def field_aligned_magnetization(config: SpinConfig, h: float) -> Fraction:
    """Magnetization with spins lowering the field energy counted positive.

    For h > 0 the field term +h*s_i favors s_i = -1, so the sign is flipped;
    at h = 0 the raw magnetization is returned.
    """
    m = magnetization(config)
    if h > 0:
        return -m
    if h < 0:
        return m
    return m


def enumerate_ground_states(model: IsingModel) -> GroundStateSet:
    """Exhaustive scan of all 2^N configs for the exact minimum and minimizers.

    Energies within DEGENERACY_ATOL of the minimum are treated as degenerate,
    absorbing float summation-order noise.
    """
    table = energy_table(model)
    emin = float(table.min())
    idx = np.nonzero(table <= emin + DEGENERACY_ATOL)[0]
    n = model.n_sites
    configs = tuple(SpinConfig(int(z), n) for z in idx)
    return GroundStateSet(energy=emin, configs=configs)


def region_label(index: int) -> str:
    """0 -> A, 1 -> B, ..., 25 -> Z, 26 -> AA, ... (spreadsheet order)."""
    label = ""
    index += 1
    while index > 0:
        index, rem = divmod(index - 1, 26)
        label = chr(ord("A") + rem) + label
    return label


def phase_diagram(
    kind: LatticeKind,
    n: int,
    h_axis,
    j2_axis,
    j1: float = 1.0,
    threads: int = 1,
) -> PhaseDiagram:
    """Exhaustive (h, J2) sweep with region labeling.

    Each cell's magnetization is the mean field-aligned magnetization over its
    degenerate ground set (an exact rational). Cells whose ground sets are
    identical share a region id; labels are assigned in row-major scan order
    over (h, j2), first encounter first.
    """
    h_axis = tuple(float(x) for x in h_axis)
    j2_axis = tuple(float(x) for x in j2_axis)
    if not h_axis or not j2_axis:
        raise ContractViolation("phase diagram axes must be non-empty")
    cell = build_unit_cell(kind, n)
    if cell.n_sites > MAX_EXHAUSTIVE_SITES:
        raise SizeGuardError(
            f"exhaustive phase diagram needs n^2 <= {MAX_EXHAUSTIVE_SITES}, got {cell.n_sites}"
        )

    def solve(h: float, j2: float):
        model = IsingModel(cell=cell, j1=j1, j2=j2, h=h)
        ground = enumerate_ground_states(model)
        mean_m = sum(
            (field_aligned_magnetization(c, h) for c in ground.configs),
            Fraction(0),
        ) / ground.degeneracy
        return ground, mean_m

    points = [(h, j2) for h in h_axis for j2 in j2_axis]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            solved = list(pool.map(lambda p: solve(*p), points))
    else:
        solved = [solve(*p) for p in points]

    # deterministic post-pass: region ids keyed by the exact config set
    labels: dict[tuple[int, ...], str] = {}
    rows = []
    k = 0
    for i, h in enumerate(h_axis):
        row = []
        for j, j2 in enumerate(j2_axis):
            ground, mean_m = solved[k]
            k += 1
            key = tuple(c.bits for c in ground.configs)
            if key not in labels:
                labels[key] = region_label(len(labels))
            row.append(
                PhaseCell(
                    h=h,
                    j2=j2,
                    mean_field_aligned_m=mean_m,
                    region_id=labels[key],
                    degeneracy=ground.degeneracy,
                    energy=ground.energy,
                )
            )
        rows.append(tuple(row))
    return PhaseDiagram(h_axis=h_axis, j2_axis=j2_axis, cells=tuple(rows))
