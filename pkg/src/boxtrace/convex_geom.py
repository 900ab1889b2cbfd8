"""Convex geometry of a hyperrectangular box.

Intrinsic volumes of a box with edges a_1..a_d are the elementary symmetric
polynomials of the edges.  Quermassintegrals are tied to them through the
Steiner polynomial

    vol(K + rho B) = sum_j omega_{d-j} V_j rho^(d-j) = sum_m C(d, m) W_m rho^m,

which forces ``W_m = omega_m V_{d-m} / C(d, m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .special_fn import ball_volume, elementary_symmetric_all

__all__ = [
    "HyperBox",
    "GeometryReport",
    "CornerSpec",
    "intrinsic_volumes",
    "quermassintegrals",
    "steiner_volume",
    "steiner_volume_quermass",
    "mean_breadth",
    "geometry_report",
    "corner_correction",
    "regular_polygon_correction",
]


@dataclass(frozen=True)
class HyperBox:
    """Axis-aligned box ``(0, a_1) x ... x (0, a_d)``."""

    edges: tuple[float, ...]

    def __init__(self, edges: Sequence[float] | float):
        if isinstance(edges, (int, float)):
            edges = (edges,)
        edges = tuple(float(a) for a in edges)
        if not edges:
            raise DomainError("a box needs at least one edge")
        for a in edges:
            if not math.isfinite(a) or a <= 0.0:
                raise DomainError(f"box edges must be finite and positive, got {a!r}")
        object.__setattr__(self, "edges", edges)

    @property
    def d(self) -> int:
        return len(self.edges)

    @property
    def volume(self) -> float:
        return math.prod(self.edges)

    def scaled(self, c: float) -> "HyperBox":
        return HyperBox([c * a for a in self.edges])


@dataclass(frozen=True)
class GeometryReport:
    intrinsic_volumes: tuple[float, ...]
    quermassintegrals: tuple[float, ...]
    mean_breadth: float
    volume: float


@dataclass(frozen=True)
class CornerSpec:
    """Interior angles (radians) of the corners of a polygon."""

    angles: tuple[float, ...]

    def __init__(self, angles: Sequence[float]):
        angles = tuple(float(phi) for phi in angles)
        for phi in angles:
            if not 0.0 < phi < 2.0 * math.pi:
                raise DomainError(f"corner angles must lie in (0, 2*pi), got {phi!r}")
        object.__setattr__(self, "angles", angles)


def _as_box(box) -> HyperBox:
    return box if isinstance(box, HyperBox) else HyperBox(box)


def intrinsic_volumes(box: HyperBox) -> list[float]:
    """V_0..V_d; V_m is the m-th elementary symmetric polynomial of the edges."""
    return elementary_symmetric_all(_as_box(box).edges)


def quermassintegrals(box: HyperBox) -> list[float]:
    """W_0..W_d with ``W_m = omega_m V_{d-m} / C(d, m)``."""
    box = _as_box(box)
    d = box.d
    v = intrinsic_volumes(box)
    return [ball_volume(m) * v[d - m] / math.comb(d, m) for m in range(d + 1)]


def _check_rho(rho: float) -> float:
    rho = float(rho)
    if not math.isfinite(rho) or rho < 0.0:
        raise DomainError(f"parallel distance must be non-negative, got {rho!r}")
    return rho


def steiner_volume(box: HyperBox, rho: float) -> float:
    """Volume of the parallel body at distance ``rho`` (intrinsic-volume form)."""
    box = _as_box(box)
    rho = _check_rho(rho)
    d = box.d
    v = intrinsic_volumes(box)
    return math.fsum(ball_volume(d - j) * v[j] * rho ** (d - j) for j in range(d + 1))


def steiner_volume_quermass(box: HyperBox, rho: float) -> float:
    """Same volume written as ``sum_m C(d, m) W_m rho^m``."""
    box = _as_box(box)
    rho = _check_rho(rho)
    d = box.d
    w = quermassintegrals(box)
    return math.fsum(math.comb(d, m) * w[m] * rho**m for m in range(d + 1))


def mean_breadth(box: HyperBox) -> float:
    """Mean width ``(2/d) (omega_{d-1}/omega_d) V_1``."""
    box = _as_box(box)
    d = box.d
    return 2.0 / d * ball_volume(d - 1) / ball_volume(d) * math.fsum(box.edges)


def geometry_report(box: HyperBox) -> GeometryReport:
    box = _as_box(box)
    return GeometryReport(
        intrinsic_volumes=tuple(intrinsic_volumes(box)),
        quermassintegrals=tuple(quermassintegrals(box)),
        mean_breadth=mean_breadth(box),
        volume=box.volume,
    )


def corner_correction(corners: CornerSpec | Sequence[float]) -> float:
    """Constant heat-trace term from polygon corners, ``sum (pi^2 - phi^2)/(24 pi phi)``.

    A right angle contributes 1/16, a straight angle nothing.
    """
    if not isinstance(corners, CornerSpec):
        corners = CornerSpec(corners)
    return math.fsum((math.pi**2 - phi**2) / (24.0 * math.pi * phi) for phi in corners.angles)


def regular_polygon_correction(n: int) -> float:
    """Corner correction of a regular n-gon, ``(n-1) / (6 (n-2))``."""
    if int(n) != n or n < 3:
        raise DomainError(f"a polygon needs n >= 3 corners, got {n!r}")
    n = int(n)
    return (n - 1) / (6.0 * (n - 2))
