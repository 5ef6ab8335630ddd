"""Functions on two truncated half-lines sampled on Gauss--Legendre panels."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = ["PanelGrid", "GridFunction", "lagrange_matrix"]


def _bary_weights(t: np.ndarray) -> np.ndarray:
    diff = t[:, None] - t[None, :]
    np.fill_diagonal(diff, 1.0)
    w = 1.0 / np.prod(diff, axis=1)
    return w / np.max(np.abs(w))


def lagrange_matrix(t: np.ndarray, bw: np.ndarray, z) -> np.ndarray:
    """Rows are the Lagrange basis at nodes ``t`` evaluated at points ``z``."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    diff = z[..., None] - t
    exact = diff == 0.0
    diff[exact] = 1.0
    terms = bw / diff
    out = terms / terms.sum(axis=-1, keepdims=True)
    hit = exact.any(axis=-1)
    out[hit] = exact[hit].astype(float)
    return out


@dataclass(frozen=True, eq=False)
class PanelGrid:
    """Uniform panels of width ``width`` on ``[0, x_max]``, ``order`` nodes each.

    Both edges share this grid.
    """

    x_max: float
    width: float
    order: int = 16

    def __post_init__(self):
        n = self.x_max / self.width
        if self.x_max <= 0 or self.width <= 0 or abs(n - round(n)) > 1e-9:
            raise ValueError("x_max must be a positive multiple of the panel width")
        if self.order < 2:
            raise ValueError("need at least two nodes per panel")

    @classmethod
    def uniform(cls, x_max: float = 40.0, width: float = 0.5, order: int = 16) -> "PanelGrid":
        return cls(float(x_max), float(width), int(order))

    @property
    def n_panels(self) -> int:
        return int(round(self.x_max / self.width))

    @cached_property
    def _rule(self):
        return np.polynomial.legendre.leggauss(self.order)

    @property
    def ref_nodes(self) -> np.ndarray:
        return self._rule[0]

    @property
    def ref_weights(self) -> np.ndarray:
        return self._rule[1]

    @cached_property
    def bary(self) -> np.ndarray:
        return _bary_weights(self.ref_nodes)

    @cached_property
    def starts(self) -> np.ndarray:
        return self.width * np.arange(self.n_panels)

    @cached_property
    def nodes(self) -> np.ndarray:
        half = 0.5 * self.width
        return (self.starts[:, None] + half * (self.ref_nodes + 1.0)).ravel()

    @cached_property
    def weights(self) -> np.ndarray:
        return np.tile(0.5 * self.width * self.ref_weights, self.n_panels)

    @property
    def size(self) -> int:
        return self.n_panels * self.order

    def locate(self, x):
        """Panel index and reference coordinate in ``[-1, 1]`` of each ``x``."""
        x = np.asarray(x, dtype=float)
        p = np.clip(np.floor(x / self.width).astype(int), 0, self.n_panels - 1)
        s = 2.0 * (x - self.starts[p]) / self.width - 1.0
        return p, np.clip(s, -1.0, 1.0)

    def interp(self, panel_values: np.ndarray, x) -> np.ndarray:
        """Evaluate the panel-wise interpolant of ``(n_panels, order)`` data."""
        x = np.asarray(x, dtype=float)
        p, s = self.locate(x)
        out = np.einsum("en,en->e", lagrange_matrix(self.ref_nodes, self.bary, s),
                        panel_values[p])
        out = np.where((x < 0) | (x > self.x_max), 0.0, out)
        return out


@dataclass(frozen=True, eq=False)
class GridFunction:
    """``f = (f_1, f_2)`` sampled at the grid nodes; ``values`` has shape ``(2, N)``."""

    grid: PanelGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        if vals.shape != (2, self.grid.size):
            raise ValueError(f"values must have shape (2, {self.grid.size}), got {vals.shape}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, grid: PanelGrid, func) -> "GridFunction":
        """``func(edge, x)`` with ``edge`` in ``{1, 2}``."""
        x = grid.nodes
        return cls(grid, np.vstack([np.broadcast_to(func(e, x), x.shape) for e in (1, 2)]))

    @classmethod
    def zeros(cls, grid: PanelGrid) -> "GridFunction":
        return cls(grid, np.zeros((2, grid.size), dtype=complex))

    @property
    def x_max(self) -> float:
        return self.grid.x_max

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def weights(self) -> np.ndarray:
        return self.grid.weights

    def panels(self, edge: int) -> np.ndarray:
        return self.values[edge - 1].reshape(self.grid.n_panels, self.grid.order)

    def evaluate(self, edge: int, x) -> np.ndarray:
        return self.grid.interp(self.panels(edge), x)

    def inner(self, other: "GridFunction") -> complex:
        return complex(np.sum(self.weights * self.values * other.values.conj()))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.weights * np.abs(self.values) ** 2)))

    def mass(self) -> complex:
        """``int f_1 + int f_2``."""
        return complex(np.sum(self.weights * self.values))

    def negative_part(self) -> "GridFunction":
        return GridFunction(self.grid, np.maximum(-self.values.real, 0.0))

    def _coerce(self, other):
        if isinstance(other, GridFunction):
            if other.grid is not self.grid:
                raise ValueError("grid functions live on different grids")
            return other.values
        return other

    def __add__(self, other):
        return GridFunction(self.grid, self.values + self._coerce(other))

    def __sub__(self, other):
        return GridFunction(self.grid, self.values - self._coerce(other))

    def __mul__(self, scalar):
        return GridFunction(self.grid, self.values * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(self.grid, -self.values)
