"""Pseudotrajectories: generation, validation, central verification, CSV."""
from __future__ import annotations
import dataclasses
import logging
import math
from typing import List, Optional

import numpy as np
import pandas

from .errors import ChartDomainExceeded, InvalidInput
from .system import LEAF_TOL, SystemModel
from .torus import TorusPoint, chart_exp, toral_dist, wrap


logger = logging.getLogger(__name__)

# 17 significant digits round-trip 64 bit floats exactly
CSV_FLOAT_FORMAT = '%.17g'
# one-step errors may exceed the claimed d by this much (coordinate rounding)
ROUNDING_TOL = 1e-14


@dataclasses.dataclass
class Pseudotrajectory:
    """
    finite window x_0 .. x_N with claimed one-step error bound d.
    """
    points: List[TorusPoint]
    d: float = 0.0

    def __len__(self):
        return len(self.points)

    def __getitem__(self, k):
        return self.points[k]

    def __iter__(self):
        return iter(self.points)

    @property
    def dim(self) -> int:
        return self.points[0].dim if self.points else 0

    def as_array(self) -> np.ndarray:
        return np.array([p.coords for p in self.points])

    def reversed(self, d: Optional[float] = None) -> Pseudotrajectory:
        return Pseudotrajectory(list(reversed(self.points)),
                                self.d if d is None else d)

    def __repr__(self):
        return f'<Pseudotrajectory N={len(self.points) - 1} d={self.d:.3g}>'


@dataclasses.dataclass
class ValidationReport:
    max_error: float
    worst_index: Optional[int]
    passed: bool


@dataclasses.dataclass
class CentralJumpRecord:
    k: int
    # dist_c(f(y_k), y_{k+1})
    central_dist: float
    # distance of f(y_k) from the central leaf of y_{k+1}
    transversal_residual: float


@dataclasses.dataclass
class CentralReport:
    records: List[CentralJumpRecord]
    eps: float
    passed: bool

    @property
    def max_central_dist(self) -> float:
        return max((r.central_dist for r in self.records), default=0.0)

    @property
    def max_residual(self) -> float:
        return max((r.transversal_residual for r in self.records),
                   default=0.0)


def _check_length(n):
    if int(n) != n or n < 1:
        raise InvalidInput(f'N must be a positive integer, got {n!r}')


def _ball_sample(rng: np.random.Generator, dim: int, radius: float):
    """uniform sample from the closed Euclidean ball"""
    direction = rng.standard_normal(dim)
    norm = np.linalg.norm(direction)
    if norm == 0:
        return np.zeros(dim)
    r = radius * rng.random() ** (1.0 / dim)
    return direction / norm * r


def generate_noisy(system: SystemModel, x0: TorusPoint, N: int, d: float,
                   seed: int = 0) -> Pseudotrajectory:
    """
    x_{k+1} = exp(f(x_k), eta_k), eta_k uniform in the ball of radius d.
    """
    system.check_point(x0)
    _check_length(N)
    if d < 0 or d >= system.hyp.delta0:
        raise InvalidInput(
            f'noise level d={d:.6g} must lie in [0, {system.hyp.delta0})')
    rng = np.random.default_rng(seed)
    # stay strictly inside the claimed bound under rounding
    radius = d * (1 - 1e-12)
    points = [x0]
    for _ in range(N):
        eta = _ball_sample(rng, system.dim, radius)
        points.append(chart_exp(system.apply(points[-1]), eta))
    return Pseudotrajectory(points, d)


def generate_rounded(system: SystemModel, x0: TorusPoint, N: int,
                     grid: float) -> Pseudotrajectory:
    """
    every image f(x_k) is rounded to the g-spaced lattice, the claimed d is
    g sqrt(n) / 2.
    """
    system.check_point(x0)
    _check_length(N)
    limit = system.hyp.delta0 / math.sqrt(system.dim)
    if grid <= 0 or grid >= limit:
        raise InvalidInput(
            f'grid {grid:.6g} must lie in (0, {limit:.6g})')
    points = [x0]
    for _ in range(N):
        image = system.apply(points[-1]).coords
        points.append(wrap(np.round(image / grid) * grid))
    return Pseudotrajectory(points, grid * math.sqrt(system.dim) / 2)


def one_step_errors(system: SystemModel, traj: Pseudotrajectory):
    return [toral_dist(system.apply(traj[k]), traj[k + 1])
            for k in range(len(traj) - 1)]


def validate(system: SystemModel, traj: Pseudotrajectory) -> ValidationReport:
    """maximal one-step error and where it happens"""
    errors = one_step_errors(system, traj)
    if not errors:
        return ValidationReport(0.0, None, True)
    worst = int(np.argmax(errors))
    return ValidationReport(errors[worst], worst,
                            errors[worst] <= traj.d + ROUNDING_TOL)


def verify_central(system: SystemModel, traj: Pseudotrajectory,
                   eps: float) -> CentralReport:
    """
    check f(y_k) in W^c_eps(y_{k+1}) for every k (report only).
    """
    records = []
    for k in range(len(traj) - 1):
        image = system.apply(traj[k])
        try:
            central, residual = system.central_split(traj[k + 1], image)
        except ChartDomainExceeded:
            central, residual = float('nan'), toral_dist(traj[k + 1], image)
        records.append(CentralJumpRecord(k, central, residual))
    passed = all(r.transversal_residual <= LEAF_TOL and r.central_dist <= eps
                 for r in records)
    return CentralReport(records, eps, passed)


def shadowing_distance(traj_x: Pseudotrajectory,
                       traj_y: Pseudotrajectory) -> float:
    """max_k dist(x_k, y_k)"""
    if len(traj_x) != len(traj_y):
        raise InvalidInput(
            f'length mismatch: {len(traj_x)} != {len(traj_y)}')
    return max((toral_dist(x, y) for x, y in zip(traj_x, traj_y)),
               default=0.0)


def to_frame(traj: Pseudotrajectory) -> pandas.DataFrame:
    data = traj.as_array().reshape(len(traj), traj.dim)
    frame = pandas.DataFrame(
        data, columns=[f'c{i + 1}' for i in range(traj.dim)])
    frame.insert(0, 'k', np.arange(len(traj)))
    return frame


def write_csv(traj: Pseudotrajectory, path) -> None:
    """header k,c1,...,cn and one row per index"""
    to_frame(traj).to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT,
                          lineterminator='\n')


def read_csv(path, d: float = 0.0) -> Pseudotrajectory:
    frame = pandas.read_csv(path, float_precision='round_trip')
    columns = [c for c in frame.columns if c != 'k']
    if 'k' not in frame.columns or not columns:
        raise InvalidInput(f'{path}: expected header k,c1,...,cn')
    frame = frame.sort_values('k')
    points = [TorusPoint(row) for row in frame[columns].to_numpy(dtype=float)]
    return Pseudotrajectory(points, d)
