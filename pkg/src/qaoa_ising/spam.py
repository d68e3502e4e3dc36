"""Readout (SPAM) bit-flip errors: forward channel and two mitigators.

Each qubit i gets an independent 2x2 confusion matrix

    A_i = [[1 - p01_i, p10_i],
           [p01_i,     1 - p10_i]]

whose columns are true states and rows observed states: p01 is
P(read 1 | prepared 0), p10 is P(read 0 | prepared 1). The full-register
channel is the tensor product of the A_i, applied one qubit axis at a time;
the 2^N x 2^N matrix is never formed.

Inverse mitigation multiplies by the exact A_i^-1 factors and may return
(small) negative quasi-probabilities; the clipped variant zeroes those and
renormalizes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, DegenerateInputError
from .ising import SpinConfig

__all__ = [
    "SpamModel",
    "uniform_symmetric",
    "apply_channel",
    "mitigate_inverse",
    "mitigate_clipped",
    "counts_to_distribution",
]

DEFAULT_RETENTION = 0.96


@dataclass(frozen=True)
class SpamModel:
    """Per-qubit readout flip probabilities, each in [0, 0.5)."""

    p01: tuple[float, ...]
    p10: tuple[float, ...]

    def __post_init__(self):
        if len(self.p01) != len(self.p10) or not self.p01:
            raise ContractViolation("p01 and p10 must be equal-length and non-empty")
        for name, probs in (("p01", self.p01), ("p10", self.p10)):
            for i, p in enumerate(probs):
                if not 0.0 <= p < 0.5:
                    raise ContractViolation(
                        f"{name}[{i}] = {p} outside [0, 0.5); the per-qubit "
                        "matrix must stay invertible with positive determinant"
                    )

    @property
    def n_qubits(self) -> int:
        return len(self.p01)

    def matrix(self, i: int) -> np.ndarray:
        """Confusion matrix of qubit i (columns = true state)."""
        a, b = self.p01[i], self.p10[i]
        return np.array([[1 - a, b], [a, 1 - b]])

    def inverse_matrix(self, i: int) -> np.ndarray:
        a, b = self.p01[i], self.p10[i]
        det = 1.0 - a - b
        return np.array([[1 - b, -b], [-a, 1 - a]]) / det

    def to_json(self) -> str:
        return json.dumps({"p01": list(self.p01), "p10": list(self.p10)})

    @classmethod
    def from_json(cls, text: str) -> "SpamModel":
        data = json.loads(text)
        try:
            return cls(p01=tuple(data["p01"]), p10=tuple(data["p10"]))
        except (KeyError, TypeError) as exc:
            raise ContractViolation(f"bad SPAM model payload: {exc}") from exc


def uniform_symmetric(n_qubits: int, retention: float = DEFAULT_RETENTION) -> SpamModel:
    """Same symmetric flip probability q on every qubit, chosen so an
    error-free register survives readout with the given probability:
    (1 - q)^N = retention."""
    if not 0.0 < retention <= 1.0:
        raise ContractViolation(f"retention must be in (0, 1], got {retention}")
    q = 1.0 - retention ** (1.0 / n_qubits)
    return SpamModel(p01=(q,) * n_qubits, p10=(q,) * n_qubits)


def _check(dist: np.ndarray, model: SpamModel) -> int:
    n = model.n_qubits
    if dist.shape != (1 << n,):
        raise ContractViolation(
            f"distribution length {dist.shape} != 2^{n} for the SPAM model"
        )
    return n


def _apply_factored(dist: np.ndarray, model: SpamModel, inverse: bool) -> np.ndarray:
    """Multiply by the tensor-product channel one qubit at a time, O(N * 2^N)."""
    n = _check(dist, model)
    # C-order reshape to (2,)*n places bit i (site i) on axis n - 1 - i
    work = np.asarray(dist, dtype=float).reshape((2,) * n)
    for i in range(n):
        mat = model.inverse_matrix(i) if inverse else model.matrix(i)
        axis = n - 1 - i
        work = np.tensordot(mat, work, axes=([1], [axis]))
        work = np.moveaxis(work, 0, axis)
    return work.reshape(1 << n)


def apply_channel(dist: np.ndarray, model: SpamModel) -> np.ndarray:
    """Forward readout channel: true distribution -> observed distribution."""
    return _apply_factored(dist, model, inverse=False)


def mitigate_inverse(dist: np.ndarray, model: SpamModel) -> np.ndarray:
    """Exact inverse of the channel.

    On finite-shot frequencies the output is a quasi-probability vector: it
    sums to one but individual entries may be negative. Callers that need a
    proper distribution should follow with the clipped variant's semantics.
    """
    return _apply_factored(dist, model, inverse=True)


def mitigate_clipped(dist: np.ndarray, model: SpamModel) -> tuple[np.ndarray, float]:
    """Inverse mitigation followed by clipping negatives to zero and
    renormalizing. Returns (distribution, clamped_mass) where clamped_mass
    is the total negative weight removed before renormalization."""
    quasi = mitigate_inverse(dist, model)
    clipped = np.clip(quasi, 0.0, None)
    clamped_mass = float(-quasi[quasi < 0].sum())
    total = clipped.sum()
    if total <= 0.0:
        raise DegenerateInputError(
            "mitigated distribution has no positive weight to renormalize"
        )
    return clipped / total, clamped_mass


def counts_to_distribution(counts: dict[SpinConfig, int], n_qubits: int) -> np.ndarray:
    """Observed shot counts -> empirical frequency vector of length 2^N."""
    dist = np.zeros(1 << n_qubits)
    total = 0
    for config, c in counts.items():
        if config.width != n_qubits:
            raise ContractViolation(
                f"config width {config.width} != register width {n_qubits}"
            )
        if c < 0:
            raise ContractViolation(f"negative count for {config.to01()}")
        dist[config.bits] += c
        total += c
    if total == 0:
        raise ContractViolation("no shots in counts")
    return dist / total
