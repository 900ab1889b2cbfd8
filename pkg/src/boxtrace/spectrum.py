"""Dirichlet spectrum of ``sum_i (-d_i^2)^s`` on a box.

The eigenvalue model is the separable leading-order law

    E_n = sum_i (pi (n_i - c) / a_i)^(2s) / D,    c = (1 - s)/2,  n_i >= 1,

with the O(1/n_i) remainder dropped.  D is the unit constant that fixes the
energy scale (1 by default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .convex_geom import HyperBox
from .errors import DomainError
from .special_fn import gamma

__all__ = [
    "SpectralModel",
    "phase_shift",
    "axis_energies",
    "eigenvalue",
    "spectrum_arrays",
    "enumerate_spectrum",
    "counting_function",
    "weyl_prediction",
]


def phase_shift(s: float) -> float:
    """Index shift ``c(s) = (1 - s)/2`` of the stable eigenvalue law."""
    return (1.0 - s) / 2.0


@dataclass(frozen=True)
class SpectralModel:
    box: HyperBox
    s: float
    unit_constant: float = 1.0

    def __post_init__(self):
        if not isinstance(self.box, HyperBox):
            object.__setattr__(self, "box", HyperBox(self.box))
        s = float(self.s)
        if not 0.0 < s <= 1.0:
            raise DomainError(f"stability index s must lie in (0, 1], got {self.s!r}")
        object.__setattr__(self, "s", s)
        if not (math.isfinite(self.unit_constant) and self.unit_constant > 0.0):
            raise DomainError(f"unit_constant must be positive, got {self.unit_constant!r}")

    @property
    def d(self) -> int:
        return self.box.d

    @property
    def c(self) -> float:
        return phase_shift(self.s)


def axis_energies(model: SpectralModel, axis: int, n) -> np.ndarray:
    """One-dimensional energies ``(pi (n - c)/a)^(2s) / D`` along ``axis``."""
    a = model.box.edges[axis]
    n = np.asarray(n, dtype=float)
    return (math.pi * (n - model.c) / a) ** (2.0 * model.s) / model.unit_constant


def eigenvalue(model: SpectralModel, index: Sequence[int]) -> float:
    index = tuple(int(n) for n in index)
    if len(index) != model.d:
        raise DomainError(f"multi-index has length {len(index)}, box has dimension {model.d}")
    if any(n < 1 for n in index):
        raise DomainError(f"multi-index components must be >= 1, got {index}")
    total = 0.0
    for axis, n in enumerate(index):
        total += float(axis_energies(model, axis, n))
    return total


def _axis_bound(model: SpectralModel, axis: int, e: float) -> int:
    a = model.box.edges[axis]
    root = (e * model.unit_constant) ** (1.0 / (2.0 * model.s))
    return math.ceil(a / math.pi * root + model.c) + 1


def spectrum_arrays(model: SpectralModel, e_max: float) -> tuple[np.ndarray, np.ndarray]:
    """All eigenvalues ``<= e_max`` as (values, indices) arrays, unsorted.

    ``indices`` has shape (count, d).
    """
    partial = np.zeros(1)
    idx = np.zeros((1, 0), dtype=np.int64)
    for axis in range(model.d):
        n = np.arange(1, _axis_bound(model, axis, e_max) + 1, dtype=np.int64)
        en = axis_energies(model, axis, n)
        keep = en <= e_max
        n, en = n[keep], en[keep]
        tot = (partial[:, None] + en[None, :]).ravel()
        new_idx = np.concatenate(
            [np.repeat(idx, len(n), axis=0), np.tile(n, len(partial))[:, None]], axis=1
        )
        mask = tot <= e_max
        partial, idx = tot[mask], new_idx[mask]
    return partial, idx


def enumerate_spectrum(model: SpectralModel, e_max: float) -> list[tuple[float, tuple[int, ...]]]:
    """Eigenvalues up to ``e_max`` in ascending order with their multi-indices.

    Repeated eigenvalues are listed once per multi-index; ties are ordered
    lexicographically by index.
    """
    values, idx = spectrum_arrays(model, e_max)
    if len(values) == 0:
        return []
    keys = tuple(idx[:, j] for j in reversed(range(model.d))) + (values,)
    order = np.lexsort(keys)
    return [(float(values[i]), tuple(int(v) for v in idx[i])) for i in order]


def _max_last_index(model: SpectralModel, partial: np.ndarray, e: float) -> np.ndarray:
    # largest k with partial + E_last(k) <= e, consistent with eigenvalue()'s float sums
    axis = model.d - 1
    a = model.box.edges[axis]
    rem = np.maximum(e - partial, 0.0)
    k = np.floor(a / math.pi * (rem * model.unit_constant) ** (1.0 / (2.0 * model.s)) + model.c)
    k = np.maximum(k, 0.0)

    def ok(kk):
        return (kk >= 1) & (partial + axis_energies(model, axis, np.maximum(kk, 1.0)) <= e)

    for _ in range(4):
        up = ok(k + 1)
        if not up.any():
            break
        k = np.where(up, k + 1, k)
    for _ in range(4):
        down = (k >= 1) & ~ok(k)
        if not down.any():
            break
        k = np.where(down, k - 1, k)
    return k.astype(np.int64)


def counting_function(model: SpectralModel, e: float) -> int:
    """Number of eigenvalues ``<= e`` counted with multiplicity."""
    if model.d == 1:
        partial = np.zeros(1)
    else:
        head = SpectralModel(HyperBox(model.box.edges[:-1]), model.s, model.unit_constant)
        partial, _ = spectrum_arrays(head, e)
        if len(partial) == 0:
            return 0
    return int(_max_last_index(model, partial, e).sum())


def weyl_prediction(model: SpectralModel, e: float) -> float:
    """Leading Weyl-law count ``|K| (2 G)^d/(2 pi)^d (eD)^(d/2s) / Gamma(1 + d/2s)``.

    ``G = Gamma(1 + 1/(2s))``; the Gamma(1 + d/2s) divisor turns the leading
    heat-trace coefficient into a counting-function coefficient.
    """
    d, s = model.d, model.s
    g = gamma(1.0 + 1.0 / (2.0 * s))
    trace_coef = model.box.volume * (2.0 * g) ** d / (2.0 * math.pi) ** d
    return trace_coef * (e * model.unit_constant) ** (d / (2.0 * s)) / gamma(1.0 + d / (2.0 * s))
