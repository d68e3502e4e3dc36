"""Independent reference implementations used only by tests.

These deliberately avoid the package's fast paths: dense matrix exponentials
for the circuit evolution, a different iteration order for exhaustive energy
scans, and explicitly materialized Kronecker products for the readout
channel. Agreement between the two code paths is the point.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from qaoa_ising.ising import IsingModel, SpinConfig


def brute_force_energy(model: IsingModel, bits: int) -> float:
    """Energy of one config, summing sites/edges in reversed order."""
    n = model.n_sites
    s = [1 - 2 * ((bits >> i) & 1) for i in range(n)]
    total = 0.0
    for i in reversed(range(n)):
        total += model.h * s[i]
    for (i, j) in reversed(model.cell.nnn_edges):
        total += model.j2 * s[i] * s[j]
    for (i, j) in reversed(model.cell.nn_edges):
        total += model.j1 * s[i] * s[j]
    return total


def brute_force_ground(model: IsingModel, atol: float = 1e-9):
    """(min energy, sorted minimizer bit labels), scanning configs downward."""
    n = model.n_sites
    best = np.inf
    for z in reversed(range(1 << n)):
        e = brute_force_energy(model, z)
        if e < best:
            best = e
    minimizers = [
        z for z in range(1 << n) if brute_force_energy(model, z) <= best + atol
    ]
    return best, minimizers


def _site_operator(op: np.ndarray, site: int, n: int) -> np.ndarray:
    """Embed a single-qubit operator on `site` with bit 0 = least significant."""
    full = np.eye(1)
    for i in reversed(range(n)):
        full = np.kron(full, op if i == site else np.eye(2))
    return full


def dense_evolve(model: IsingModel, gammas, betas) -> np.ndarray:
    """Reference circuit: explicit 2^N x 2^N matrix exponentials."""
    n = model.n_sites
    dim = 1 << n
    diag = np.array([brute_force_energy(model, z) for z in range(dim)])
    hamiltonian = np.diag(diag).astype(complex)
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    mixer = sum(_site_operator(x, i, n) for i in range(n)).astype(complex)
    psi = np.full(dim, dim ** -0.5, dtype=complex)
    for gamma, beta in zip(gammas, betas):
        psi = expm(-1j * gamma * hamiltonian) @ psi
        psi = expm(-1j * beta * mixer) @ psi
    return psi


def dense_spam_matrix(model) -> np.ndarray:
    """Full 2^N x 2^N confusion matrix, built by explicit Kronecker products."""
    full = np.eye(1)
    for i in reversed(range(model.n_qubits)):
        full = np.kron(full, model.matrix(i))
    return full


def config(bits: int, width: int) -> SpinConfig:
    return SpinConfig(bits, width)
