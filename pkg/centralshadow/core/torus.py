"""Flat torus points, minimal representatives, distances and charts."""
from __future__ import annotations
import dataclasses
from typing import Sequence

import numpy as np

from .errors import ChartDomainExceeded, InvalidInput


# charts are exact below this radius (half of the injectivity radius bound)
CHART_RADIUS = 0.5

# chart vectors, units of torus coordinate
Displacement = np.ndarray


@dataclasses.dataclass(frozen=True, eq=False)
class TorusPoint:
    """
    point on the n-torus, coordinates canonicalized to [0, 1).
    """
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        coords.setflags(write=False)
        object.__setattr__(self, 'coords', coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self):
        yield from (float(c) for c in self.coords)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, TorusPoint):
            return NotImplemented
        return np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(self.coords.tobytes())

    def __repr__(self):
        return f'<TorusPoint({", ".join(f"{c:.6g}" for c in self)})>'


def wrap(raw: Sequence[float]) -> TorusPoint:
    """
    reduce every coordinate mod 1 into [0, 1).
    """
    raw = np.asarray(raw, dtype=float)
    if raw.ndim != 1:
        raise InvalidInput('expected a flat coordinate vector')
    if not np.all(np.isfinite(raw)):
        raise InvalidInput(f'non-finite coordinates {raw!r}')
    coords = np.mod(raw, 1.0)
    # np.mod maps tiny negatives to 1.0
    coords[coords >= 1.0] = 0.0
    return TorusPoint(coords)


def minimal_representative(diff: np.ndarray) -> np.ndarray:
    """
    representative of diff mod 1 in (-0.5, 0.5], ties go to +0.5.
    """
    diff = np.asarray(diff, dtype=float)
    return diff - np.ceil(diff - 0.5)


def _check_dims(x: TorusPoint, y: TorusPoint):
    if x.dim != y.dim:
        raise InvalidInput(
            f'dimension mismatch: {x.dim} != {y.dim}')


def toral_dist(x: TorusPoint, y: TorusPoint) -> float:
    """flat distance on the torus"""
    _check_dims(x, y)
    return float(np.linalg.norm(
        minimal_representative(y.coords - x.coords)))


def circle_dist(a: float, b: float) -> float:
    """distance on the unit circle"""
    return abs(float(minimal_representative(b - a)))


def chart_log(x: TorusPoint, y: TorusPoint) -> Displacement:
    """
    inverse exponential chart at x, the minimal representative v with
    wrap(x + v) = y.
    """
    _check_dims(x, y)
    v = minimal_representative(y.coords - x.coords)
    norm = float(np.linalg.norm(v))
    if norm >= CHART_RADIUS:
        raise ChartDomainExceeded(
            f'distance {norm:.6g} reaches the chart radius {CHART_RADIUS}')
    return v


def chart_exp(x: TorusPoint, v: Displacement) -> TorusPoint:
    """
    exponential chart at x, isometric on the flat torus.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != x.coords.shape:
        raise InvalidInput(
            f'displacement of shape {v.shape} at a point of dim {x.dim}')
    norm = float(np.linalg.norm(v))
    if norm >= CHART_RADIUS:
        raise ChartDomainExceeded(
            f'displacement {norm:.6g} reaches the chart radius '
            f'{CHART_RADIUS}')
    return wrap(x.coords + v)
