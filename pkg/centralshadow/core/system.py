from __future__ import annotations
import dataclasses
import functools
import logging
import math
from typing import NamedTuple, Tuple

import numpy as np

from .errors import (DegenerateFrame, InvalidInput, NotOnLeaf,
                     TooFarApart)
from .torus import Displacement, TorusPoint, chart_log


logger = logging.getLogger(__name__)

# locality radius of the local product structure for all toral models
DELTA0 = 0.1
# truncation tolerance of the strong leaf series
SERIES_TOL = 1e-12
# frames worse than this are rejected by the leaf solvers
FRAME_COND_MAX = 1e8
# two points share a leaf if the transversal residual is below this
LEAF_TOL = 1e-9


class SystemKind:
    linear = 'linear'
    skew_product = 'skew_product'


class Side:
    """which strong leaf of the first point is intersected"""
    # W^s(x) cap W^cu(y)
    s_cu = 's_cu'
    # W^u(x) cap W^cs(y)
    u_cs = 'u_cs'


@dataclasses.dataclass(frozen=True, eq=False)
class SplitFrame:
    """
    invariant splitting E^s + E^c + E^u at a base point, as orthonormal
    columns per subbundle.
    """
    basis_s: np.ndarray
    basis_c: np.ndarray
    basis_u: np.ndarray

    @property
    def dims(self) -> Tuple[int, int, int]:
        return (self.basis_s.shape[1], self.basis_c.shape[1],
                self.basis_u.shape[1])

    @property
    def matrix(self) -> np.ndarray:
        return np.hstack([self.basis_s, self.basis_c, self.basis_u])

    @functools.cached_property
    def _condition(self) -> float:
        return float(np.linalg.cond(self.matrix))

    @functools.cached_property
    def _inverse(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)

    def condition(self) -> float:
        return self._condition

    def inverse(self) -> np.ndarray:
        if self.condition() > FRAME_COND_MAX:
            raise DegenerateFrame(
                f'frame condition number {self.condition():.3g} exceeds '
                f'{FRAME_COND_MAX:.0e}')
        return self._inverse

    def coefficients(self, v: Displacement):
        """
        split v into its (s, c, u) coefficient blocks along the frame
        """
        coeffs = self.inverse() @ np.asarray(v, dtype=float)
        s, c, _ = self.dims
        return coeffs[:s], coeffs[s:s + c], coeffs[s + c:]

    def components(self, v: Displacement):
        """oblique projections of v onto E^s, E^c and E^u"""
        a, b, c = self.coefficients(v)
        return self.basis_s @ a, self.basis_c @ b, self.basis_u @ c

    def projection(self, parts: str) -> np.ndarray:
        """
        oblique projection matrix onto the named subbundles (e.g. 'cu')
        along the remaining ones.
        """
        frame = self.matrix
        s, c, u = self.dims
        mask = np.zeros(s + c + u)
        if 's' in parts:
            mask[:s] = 1
        if 'c' in parts:
            mask[s:s + c] = 1
        if 'u' in parts:
            mask[s + c:] = 1
        return frame @ np.diag(mask) @ self.inverse()

    def transversality(self) -> float:
        """
        largest operator norm among the oblique projections of the frame,
        the transversality constant L0 of linear foliations.
        """
        norms = [np.linalg.norm(self.projection(parts), 2)
                 for parts in ('s', 'c', 'u', 'cs', 'cu')
                 if any(self.dims['scu'.index(p)] for p in parts)]
        return float(max(norms))


@dataclasses.dataclass(frozen=True)
class HyperbolicityData:
    """
    rates of the splitting: |Df v| <= nu on E^s, gamma <= |Df v| <= gamma_hat
    on E^c, |Df v| >= 1/nu_hat on E^u.
    """
    nu: float
    nu_hat: float
    gamma: float
    gamma_hat: float
    lam: float
    L0: float
    delta0: float = DELTA0
    m: int = 1
    l: int = 1

    @staticmethod
    def minimal_power(lam: float, L0: float) -> int:
        """smallest l with lam^l > 2 L0"""
        l = max(1, math.ceil(math.log(2 * L0) / math.log(lam)))
        while lam ** l <= 2 * L0:
            l += 1
        return l


class Intersection(NamedTuple):
    point: TorusPoint
    # leaf distance from the first point along its strong leaf
    dist_strong: float
    # leaf distance from the second point along its weak leaf
    dist_weak: float


class SystemModel:
    """
    Partially hyperbolic, dynamically coherent map of the torus with exact
    foliations. Instances are immutable after construction.

    Subclasses implement the map, the differential, the frame and the strong
    leaf charts; the leaf geometry built on top of them lives here.
    """
    kind = None

    def __init__(self, dim: int, frame: SplitFrame, hyp: HyperbolicityData,
                 series_tol: float = SERIES_TOL, power: int = 1):
        self.dim = dim
        self.frame = frame
        self.hyp = hyp
        self.series_tol = series_tol
        self.power = power

    @property
    def dims(self) -> Tuple[int, int, int]:
        return self.frame.dims

    @property
    def center_dim(self) -> int:
        return self.dims[1]

    def check_point(self, x: TorusPoint):
        if x.dim != self.dim:
            raise InvalidInput(
                f'point of dim {x.dim} for a system of dim {self.dim}')

    def apply(self, x: TorusPoint) -> TorusPoint:
        raise NotImplementedError('Please implement apply in your system')

    def apply_inverse(self, x: TorusPoint) -> TorusPoint:
        raise NotImplementedError(
            'Please implement apply_inverse in your system')

    def differential(self, x: TorusPoint) -> np.ndarray:
        raise NotImplementedError(
            'Please implement differential in your system')

    def frame_at(self, x: TorusPoint) -> SplitFrame:
        return self.frame

    def sup_derivative_norm(self) -> float:
        """R = sup_x |Df(x)|"""
        raise NotImplementedError(
            'Please implement sup_derivative_norm in your system')

    def power_of(self, p: int) -> SystemModel:
        raise NotImplementedError('Please implement power_of in your system')

    def iterate(self, x: TorusPoint, steps: int) -> TorusPoint:
        for _ in range(steps):
            x = self.apply(x)
        return x

    # strong leaf charts exp^s_x / exp^u_x and their inverses, the chart
    # coordinate has the dimension of the strong subbundle
    def chart_exp_s(self, x: TorusPoint, z: Displacement) -> TorusPoint:
        raise NotImplementedError

    def chart_log_s(self, x: TorusPoint, p: TorusPoint) -> Displacement:
        raise NotImplementedError

    def chart_exp_u(self, x: TorusPoint, z: Displacement) -> TorusPoint:
        raise NotImplementedError

    def chart_log_u(self, x: TorusPoint, p: TorusPoint) -> Displacement:
        raise NotImplementedError

    def intersect(self, x: TorusPoint, y: TorusPoint, side: str,
                  delta: float) -> Intersection:
        """
        the unique local point of W^s(x) cap W^cu(y) (side s_cu) or
        W^u(x) cap W^cs(y) (side u_cs), with both leaf distances.
        """
        self.check_point(x)
        self.check_point(y)
        if delta <= 0 or delta > self.hyp.delta0:
            raise InvalidInput(
                f'delta={delta:.6g} outside (0, {self.hyp.delta0}]')
        if side not in (Side.s_cu, Side.u_cs):
            raise InvalidInput(f'unknown intersection side {side!r}')
        v = chart_log(x, y)
        dist = float(np.linalg.norm(v))
        if dist >= delta:
            raise TooFarApart(
                f'points {dist:.6g} apart, local product radius is '
                f'{delta:.6g}')
        return self._intersect(x, y, v, side)

    def _intersect(self, x, y, v, side) -> Intersection:
        raise NotImplementedError

    def leaf_intersection(self, x: TorusPoint, y: TorusPoint, side: str,
                          delta: float) -> TorusPoint:
        return self.intersect(x, y, side, delta).point

    def transversal_residual(self, x: TorusPoint, y: TorusPoint,
                             leaf: str) -> float:
        """
        size of the displacement from x to y that leaves the weak leaf
        W^leaf(x), leaf in {'c', 'cs', 'cu'}.
        """
        raise NotImplementedError

    def central_split(self, x: TorusPoint, y: TorusPoint):
        """
        (central leaf distance, transversal residual) of y relative to the
        central leaf of x, never raising on transversal points.
        """
        raise NotImplementedError

    def central_leaf_distance(self, x: TorusPoint, y: TorusPoint) -> float:
        central, residual = self.central_split(x, y)
        if residual > LEAF_TOL:
            raise NotOnLeaf(
                f'points are not on a common central leaf '
                f'(transversal residual {residual:.3g})', residual=residual)
        return central

    def __repr__(self):
        s, c, u = self.dims
        return f'<{self.__class__.__name__} dims=({s},{c},{u}) ' \
            f'lambda={self.hyp.lam:.10g} L0={self.hyp.L0:.6g}>'


def system_power(system: SystemModel, p: int) -> SystemModel:
    """
    the system f^p, with the same foliations and rates raised to the p-th
    power.
    """
    if int(p) != p or p < 1:
        raise InvalidInput(f'power must be a positive integer, got {p!r}')
    if p == 1:
        return system
    return system.power_of(int(p))
