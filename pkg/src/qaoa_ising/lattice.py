"""Unit-cell geometries as explicit edge lists.

Sites of an n x n cell are indexed row-major: site = row * n + col. All cells
use open boundary conditions. Nearest-neighbor (NN) edges are the horizontal
and vertical grid bonds; next-nearest-neighbor (NNN) edges are plaquette
diagonals whose placement depends on the geometry:

* square: no diagonals.
* triangular: one diagonal per plaquette, all with the same "up" orientation
  (lower-left corner to upper-right corner).
* shastry_sutherland: diagonals on the checkerboard of plaquettes with
  (row + col) even; orientation is "up" on even rows and "down" on odd rows,
  so diagonal-adjacent dimers are orthogonal. This is the fixed convention
  for the whole codebase; it pins the 9-spin fixtures used in tests.

Edge lists are canonically ordered: each pair stored as (min, max), the list
sorted lexicographically. Two calls with the same arguments produce the same
object content.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import SizeGuardError

__all__ = ["LatticeKind", "UnitCell", "build_unit_cell", "edge_counts"]


class LatticeKind(enum.Enum):
    SQUARE = "square"
    SHASTRY_SUTHERLAND = "shastry_sutherland"
    TRIANGULAR = "triangular"


@dataclass(frozen=True)
class UnitCell:
    """An n x n cell with explicit NN and NNN edge lists.

    Attributes:
        kind: geometry variant.
        n: sites per side.
        nn_edges: grid bonds, canonical order.
        nnn_edges: diagonal bonds, canonical order.
    """

    kind: LatticeKind
    n: int
    nn_edges: tuple[tuple[int, int], ...]
    nnn_edges: tuple[tuple[int, int], ...]

    @property
    def n_sites(self) -> int:
        return self.n * self.n

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "nn_edges": [list(e) for e in self.nn_edges],
            "nnn_edges": [list(e) for e in self.nnn_edges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "UnitCell":
        return cls(
            kind=LatticeKind(data["kind"]),
            n=int(data["n"]),
            nn_edges=tuple(tuple(e) for e in data["nn_edges"]),
            nnn_edges=tuple(tuple(e) for e in data["nnn_edges"]),
        )


def _canonical(edges: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((min(i, j), max(i, j)) for (i, j) in edges))


def _grid_edges(n: int) -> list[tuple[int, int]]:
    edges = []
    for r in range(n):
        for c in range(n):
            i = r * n + c
            if c + 1 < n:
                edges.append((i, i + 1))
            if r + 1 < n:
                edges.append((i, i + n))
    return edges


def _up_diagonal(n: int, r: int, c: int) -> tuple[int, int]:
    # lower-left to upper-right of the plaquette whose top-left corner is (r, c)
    return ((r + 1) * n + c, r * n + c + 1)


def _down_diagonal(n: int, r: int, c: int) -> tuple[int, int]:
    return (r * n + c, (r + 1) * n + c + 1)


def build_unit_cell(kind: LatticeKind, n: int) -> UnitCell:
    """Construct the unit cell for a geometry at side length n >= 2.

    Raises:
        SizeGuardError: if n < 2 (no plaquette exists below 2 x 2).
    """
    if n < 2:
        raise SizeGuardError(f"unit cell needs n >= 2 sites per side, got n={n}")

    nn = _grid_edges(n)
    nnn: list[tuple[int, int]] = []
    if kind is LatticeKind.TRIANGULAR:
        for r in range(n - 1):
            for c in range(n - 1):
                nnn.append(_up_diagonal(n, r, c))
    elif kind is LatticeKind.SHASTRY_SUTHERLAND:
        for r in range(n - 1):
            for c in range(n - 1):
                if (r + c) % 2 == 0:
                    if r % 2 == 0:
                        nnn.append(_up_diagonal(n, r, c))
                    else:
                        nnn.append(_down_diagonal(n, r, c))
    return UnitCell(kind=kind, n=n, nn_edges=_canonical(nn), nnn_edges=_canonical(nnn))


def edge_counts(cell: UnitCell) -> tuple[int, int]:
    """Return (E_NN, E_NNN), the bond counts entering the coefficient average."""
    return len(cell.nn_edges), len(cell.nnn_edges)
