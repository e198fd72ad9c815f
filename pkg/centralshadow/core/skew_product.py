"""
Circle extensions of linear Anosov maps of the 2-torus,

    f(x, theta) = (A x mod 1, theta + phi(x) mod 1),
    phi(x) = c0 + c1 * sin(2 pi x_1).

The circle fibers are the central leaves. Strong stable (unstable) leaves are
graphs over the base stable (unstable) lines, given by convergent cocycle
series along forward (backward) base orbits.
"""
import logging
import math

import numpy as np

from .eigen import eigenvalues, integer_inverse, null_space
from .errors import ChartDomainExceeded, InvalidInput, InvalidSystem, \
    NotOnLeaf, NotPartiallyHyperbolic
from .linear import UNIT_TOL, as_integer_matrix
from .system import DELTA0, LEAF_TOL, SERIES_TOL, HyperbolicityData, \
    Intersection, Side, SplitFrame, SystemKind, SystemModel
from .torus import Displacement, TorusPoint, chart_log, \
    minimal_representative, wrap


logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi

# quadrature nodes for arc lengths along strong leaves
_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(8)


def _unit(v):
    return v / np.linalg.norm(v)


class SkewProductSystem(SystemModel):
    """
    Skew product over the Anosov base matrix A. A power p of the map keeps
    A and the fiber map and iterates them p times, so the foliations stay
    those of the one-step map.
    """
    kind = SystemKind.skew_product

    def __init__(self, base_matrix, c0=0.0, c1=0.0, series_tol=SERIES_TOL,
                 delta0=DELTA0, power=1):
        base = as_integer_matrix(base_matrix)
        if base.shape != (2, 2):
            raise InvalidSystem('the base matrix must be 2x2')
        values = eigenvalues(base)
        if any(abs(abs(v) - 1) <= UNIT_TOL for v in values) or \
                any(abs(v.imag) > 0 for v in values):
            raise InvalidSystem(
                f'base matrix is not Anosov (eigenvalues {values})')
        if series_tol <= 0:
            raise InvalidInput('series_tol must be positive')
        if power < 1:
            raise InvalidInput('power must be a positive integer')
        values = sorted((v.real for v in values), key=abs)
        self.mu_s, self.mu_u = values
        self.series_tol = series_tol
        self.base_matrix = base
        self.base_inverse = integer_inverse(base)
        self.c0 = float(c0)
        self.c1 = float(c1)
        # eigenvectors through the null space, orthonormal and sign-fixed
        self.v_s = null_space(base - self.mu_s * np.eye(2))[:, 0]
        self.v_u = null_space(base - self.mu_u * np.eye(2))[:, 0]
        self._base_frame = np.column_stack([self.v_s, self.v_u])

        ratio_s = abs(self.mu_s)
        ratio_u = 1.0 / abs(self.mu_u)
        self.lip = TWO_PI * abs(self.c1)
        # bounds on the slopes of the strong leaves over their base lines
        self.slope_bound = self.lip * max(
            abs(self.v_s[0]) / (1 - ratio_s),
            abs(self.v_u[0]) * ratio_u / (1 - ratio_u))
        # a strong tangent (v, a) changes length by at most this factor
        # relative to the base eigenvalue, over any number of steps
        self.distortion = math.sqrt(1 + self.slope_bound ** 2)
        nu = ratio_s ** power * self.distortion
        nu_hat = ratio_u ** power * self.distortion
        if nu >= 1 or nu_hat >= 1:
            raise NotPartiallyHyperbolic(
                f'fiber coupling c1={self.c1} bends the strong leaves too '
                f'much (nu={nu:.6g}, nu_hat={nu_hat:.6g})')
        base_proj = max(
            np.linalg.norm(np.outer(self._base_frame[:, i],
                                    np.linalg.inv(self._base_frame)[i]), 2)
            for i in range(2))
        L0 = max(base_proj * self.distortion, 1.0 + 1e-12)
        lam = min(1 / nu, 1 / nu_hat)
        hyp = HyperbolicityData(
            nu=nu, nu_hat=nu_hat, gamma=1.0, gamma_hat=1.0,
            lam=lam, L0=L0, delta0=delta0, m=1,
            l=HyperbolicityData.minimal_power(lam, L0))
        super(SkewProductSystem, self).__init__(
            dim=3, frame=self._frame(np.zeros(2)), hyp=hyp,
            series_tol=series_tol, power=power)
        logger.debug('built %r', self)

    # base dynamics and the fiber cocycle

    def phi(self, p: np.ndarray):
        """fiber increment of one step over base coordinates p[..., 0:2]"""
        return self.c0 + self.c1 * np.sin(TWO_PI * p[..., 0])

    def _phi_difference(self, p, off):
        """phi(p + off) - phi(p) without cancellation"""
        return 2 * self.c1 * np.cos(TWO_PI * (p[..., 0] + off[..., 0] / 2)) \
            * np.sin(math.pi * off[..., 0])

    def _base_step(self, p):
        return np.mod(p @ self.base_matrix.T, 1.0)

    def _base_step_back(self, p):
        return np.mod(p @ self.base_inverse.T, 1.0)

    def apply(self, x: TorusPoint) -> TorusPoint:
        self.check_point(x)
        base, theta = x.coords[:2], float(x.coords[2])
        for _ in range(self.power):
            theta += float(self.phi(base))
            base = self._base_step(base)
        return wrap(np.append(base, theta))

    def apply_inverse(self, x: TorusPoint) -> TorusPoint:
        self.check_point(x)
        base, theta = x.coords[:2], float(x.coords[2])
        for _ in range(self.power):
            base = self._base_step_back(base)
            theta -= float(self.phi(base))
        return wrap(np.append(base, theta))

    def _one_step_differential(self, base):
        g = TWO_PI * self.c1 * math.cos(TWO_PI * base[0])
        d = np.zeros((3, 3))
        d[:2, :2] = self.base_matrix
        d[2, 0] = g
        d[2, 2] = 1.0
        return d

    def differential(self, x: TorusPoint) -> np.ndarray:
        self.check_point(x)
        base = x.coords[:2]
        total = np.eye(3)
        for _ in range(self.power):
            total = self._one_step_differential(base) @ total
            base = self._base_step(base)
        return total

    def sup_derivative_norm(self) -> float:
        one_step = 0.0
        for g in (self.lip, -self.lip):
            d = np.zeros((3, 3))
            d[:2, :2] = self.base_matrix
            d[2, 0] = g
            d[2, 2] = 1.0
            one_step = max(one_step, float(np.linalg.norm(d, 2)))
        return one_step ** self.power

    def power_of(self, p: int) -> 'SkewProductSystem':
        return SkewProductSystem(
            self.base_matrix, c0=self.c0, c1=self.c1,
            series_tol=self.series_tol, delta0=self.hyp.delta0,
            power=self.power * p)

    # strong leaves

    def _terms(self, scale: float, ratio: float) -> int:
        """
        number of series terms until the geometric tail bound
        scale * ratio^K / (1 - ratio) drops below series_tol
        """
        if scale <= 0:
            return 0
        bound = self.series_tol * (1 - ratio) / scale
        if bound >= 1:
            return 0
        return int(math.ceil(math.log(bound) / math.log(ratio)))

    def _stable_offset(self, base, w) -> float:
        ratio = abs(self.mu_s)
        count = self._terms(self.lip * float(np.linalg.norm(w)), ratio)
        p = np.array(base, dtype=float)
        off = np.array(w, dtype=float)
        total = 0.0
        for _ in range(count):
            total -= float(self._phi_difference(p, off))
            p = self._base_step(p)
            off = self.mu_s * off
        return total

    def _unstable_offset(self, base, w) -> float:
        ratio = 1 / abs(self.mu_u)
        count = self._terms(self.lip * float(np.linalg.norm(w)) * ratio,
                            ratio)
        p = np.array(base, dtype=float)
        off = np.array(w, dtype=float)
        total = 0.0
        for _ in range(count):
            p = self._base_step_back(p)
            off = off / self.mu_u
            total += float(self._phi_difference(p, off))
        return total

    def _base_offset(self, x_b, y_b, direction):
        x_b = np.asarray(getattr(x_b, 'coords', x_b), dtype=float)
        y_b = np.asarray(getattr(y_b, 'coords', y_b), dtype=float)
        if x_b.shape != (2,) or y_b.shape != (2,):
            raise InvalidInput('base points must be 2-dimensional')
        w = minimal_representative(y_b - x_b)
        dist = float(np.linalg.norm(w))
        if dist >= self.hyp.delta0:
            raise ChartDomainExceeded(
                f'base distance {dist:.6g} reaches delta0='
                f'{self.hyp.delta0}')
        residual = float(np.linalg.norm(w - (w @ direction) * direction))
        if residual > LEAF_TOL:
            raise NotOnLeaf(
                f'base point is {residual:.3g} off the line', residual)
        return x_b, w

    def strong_stable_fiber_offset(self, x_b, y_b) -> float:
        """
        fiber offset sigma such that (y_b, theta + sigma) lies on the strong
        stable leaf of (x_b, theta):
        sigma = sum_k phi(A^k x_b) - phi(A^k y_b)
        """
        x_b, w = self._base_offset(x_b, y_b, self.v_s)
        return self._stable_offset(x_b, w)

    def strong_unstable_fiber_offset(self, x_b, y_b) -> float:
        """
        fiber offset on the strong unstable leaf:
        sigma = sum_{j>=1} phi(A^-j y_b) - phi(A^-j x_b)
        """
        x_b, w = self._base_offset(x_b, y_b, self.v_u)
        return self._unstable_offset(x_b, w)

    def _stable_slopes(self, points):
        """d theta / d t along t -> x_b + t v_s, vectorized over points"""
        ratio = abs(self.mu_s)
        count = self._terms(self.lip * abs(self.v_s[0]), ratio)
        p = np.array(points, dtype=float)
        total = np.zeros(p.shape[:-1])
        weight = 1.0
        for _ in range(count):
            total -= weight * TWO_PI * self.c1 \
                * np.cos(TWO_PI * p[..., 0]) * self.v_s[0]
            p = self._base_step(p)
            weight *= self.mu_s
        return total

    def _unstable_slopes(self, points):
        ratio = 1 / abs(self.mu_u)
        count = self._terms(self.lip * abs(self.v_u[0]) * ratio, ratio)
        p = np.array(points, dtype=float)
        total = np.zeros(p.shape[:-1])
        weight = 1.0
        for _ in range(count):
            p = self._base_step_back(p)
            weight /= self.mu_u
            total += weight * TWO_PI * self.c1 \
                * np.cos(TWO_PI * p[..., 0]) * self.v_u[0]
        return total

    def _frame(self, base) -> SplitFrame:
        base = np.asarray(base, dtype=float)[None, :]
        a = float(self._stable_slopes(base)[0])
        b = float(self._unstable_slopes(base)[0])
        return SplitFrame(
            basis_s=_unit(np.append(self.v_s, a))[:, None],
            basis_c=np.array([[0.0], [0.0], [1.0]]),
            basis_u=_unit(np.append(self.v_u, b))[:, None])

    def frame_at(self, x: TorusPoint) -> SplitFrame:
        self.check_point(x)
        return self._frame(x.coords[:2])

    def _arc_length(self, base, direction, t, slopes):
        """length of the strong leaf graph over base + s direction, 0..t"""
        if t == 0:
            return 0.0
        s = 0.5 * t * (_GAUSS_NODES + 1)
        points = np.mod(base[None, :] + s[:, None] * direction[None, :], 1.0)
        integrand = np.sqrt(1 + slopes(points) ** 2)
        return float(0.5 * abs(t) * integrand @ _GAUSS_WEIGHTS)

    def chart_exp_s(self, x: TorusPoint, z: Displacement) -> TorusPoint:
        t = float(np.asarray(z, dtype=float).reshape(-1)[0])
        base = x.coords[:2]
        w = t * self.v_s
        theta = x.coords[2] + self._stable_offset(base, w)
        return wrap(np.append(base + w, theta))

    def chart_log_s(self, x: TorusPoint, p: TorusPoint) -> Displacement:
        w = minimal_representative(p.coords[:2] - x.coords[:2])
        return np.array([w @ self.v_s])

    def chart_exp_u(self, x: TorusPoint, z: Displacement) -> TorusPoint:
        t = float(np.asarray(z, dtype=float).reshape(-1)[0])
        base = x.coords[:2]
        w = t * self.v_u
        theta = x.coords[2] + self._unstable_offset(base, w)
        return wrap(np.append(base + w, theta))

    def chart_log_u(self, x: TorusPoint, p: TorusPoint) -> Displacement:
        w = minimal_representative(p.coords[:2] - x.coords[:2])
        return np.array([w @ self.v_u])

    def _base_coefficients(self, w):
        return np.linalg.solve(self._base_frame, w)

    def _intersect(self, x, y, v, side) -> Intersection:
        a, b = self._base_coefficients(v[:2])
        base = x.coords[:2]
        if side == Side.s_cu:
            point = self.chart_exp_s(x, [a])
            strong = self._arc_length(base, self.v_s, a, self._stable_slopes)
            transversal = b
        else:
            point = self.chart_exp_u(x, [b])
            strong = self._arc_length(base, self.v_u, b,
                                      self._unstable_slopes)
            transversal = a
        # weak leaves are flat cylinders (base line x circle)
        fiber = float(minimal_representative(point.coords[2] - y.coords[2]))
        return Intersection(point=point, dist_strong=strong,
                            dist_weak=math.hypot(transversal, fiber))

    def transversal_residual(self, x, y, leaf) -> float:
        w = chart_log(x, y)[:2]
        if leaf == 'c':
            return float(np.linalg.norm(w))
        a, b = self._base_coefficients(w)
        return abs(float(a)) if leaf == 'cu' else abs(float(b))

    def central_split(self, x, y):
        v = chart_log(x, y)
        return abs(float(v[2])), float(np.linalg.norm(v[:2]))


def build_skew_product(base_matrix, c0=0.0, c1=0.0, series_tol=SERIES_TOL,
                       delta0=DELTA0) -> SkewProductSystem:
    system = SkewProductSystem(base_matrix, c0=c0, c1=c1,
                               series_tol=series_tol, delta0=delta0)
    logger.info('skew product dims=%s lambda=%.10g L0=%.6g l=%d',
                system.dims, system.hyp.lam, system.hyp.L0, system.hyp.l)
    return system
