import logging

import numpy as np

from .eigen import eigenvalues, integer_det, integer_inverse, \
    invariant_subspace
from .errors import InvalidSystem, NotPartiallyHyperbolic
from .system import DELTA0, HyperbolicityData, Intersection, Side, \
    SplitFrame, SystemKind, SystemModel
from .torus import Displacement, TorusPoint, chart_exp, chart_log, wrap


logger = logging.getLogger(__name__)

# eigenvalue moduli this close to 1 are central (np.roots splits a double
# root on the unit circle by about 1e-8)
UNIT_TOL = 1e-6


def as_integer_matrix(matrix) -> np.ndarray:
    """
    validate a square integer matrix (float entries must be integral).
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidSystem(f'expected a square matrix, got shape {m.shape}')
    if not np.all(np.isfinite(m.astype(float))) or \
            not np.all(np.equal(np.mod(m.astype(float), 1), 0)):
        raise InvalidSystem('matrix entries must be integers')
    m = m.astype(np.int64)
    det = integer_det(m)
    if abs(det) != 1:
        raise InvalidSystem(f'|det| must be 1, got det={det}')
    return m


def _restricted(matrix: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """matrix of the map restricted to an invariant subspace"""
    return basis.T @ matrix @ basis


def linear_hyperbolicity(matrix, frame: SplitFrame, delta0=DELTA0,
                         L0=None) -> HyperbolicityData:
    m = np.asarray(matrix, dtype=float)
    b_s = _restricted(m, frame.basis_s)
    b_c = _restricted(m, frame.basis_c)
    b_u = _restricted(m, frame.basis_u)
    if b_s.size == 0 or b_u.size == 0:
        raise NotPartiallyHyperbolic(
            'no contracting or no expanding direction')
    nu = float(np.linalg.norm(b_s, 2))
    nu_hat = 1.0 / float(np.linalg.svd(b_u, compute_uv=False)[-1])
    if b_c.size:
        sing_c = np.linalg.svd(b_c, compute_uv=False)
        gamma, gamma_hat = float(sing_c[-1]), float(sing_c[0])
    else:
        gamma = gamma_hat = 1.0
    if not (nu < 1 and nu_hat < 1 and nu < gamma <= gamma_hat < 1 / nu_hat):
        raise NotPartiallyHyperbolic(
            f'rate ordering violated: nu={nu:.6g} gamma={gamma:.6g} '
            f'gamma_hat={gamma_hat:.6g} nu_hat={nu_hat:.6g}')
    lam = min(1.0 / nu, 1.0 / nu_hat)
    if L0 is None:
        L0 = max(frame.transversality(), 1.0 + 1e-12)
    return HyperbolicityData(
        nu=nu, nu_hat=nu_hat, gamma=gamma, gamma_hat=gamma_hat, lam=lam,
        L0=L0, delta0=delta0, m=1,
        l=HyperbolicityData.minimal_power(lam, L0))


def split_spectrum(matrix: np.ndarray) -> SplitFrame:
    """
    group eigenvalues by modulus (<1, =1, >1) and build the frame of the
    corresponding invariant subspaces.
    """
    values = eigenvalues(matrix)
    stable = [v for v in values if abs(v) < 1 - UNIT_TOL]
    center = [v for v in values if abs(abs(v) - 1) <= UNIT_TOL]
    unstable = [v for v in values if abs(v) > 1 + UNIT_TOL]
    if not stable or not unstable:
        raise NotPartiallyHyperbolic(
            f'spectrum {values} has no contraction or no expansion')

    basis_s = invariant_subspace(matrix, stable)
    basis_u = invariant_subspace(matrix, unstable)
    # distinct center eigenvalues only: a Jordan block shows up as a
    # missing dimension
    distinct = []
    for v in center:
        if all(abs(v - w) > 1e-4 for w in distinct):
            distinct.append(v)
    basis_c = invariant_subspace(matrix, distinct)
    if basis_c.shape[1] != len(center):
        raise NotPartiallyHyperbolic(
            'central eigenvalue of modulus 1 with a nontrivial Jordan block')
    if basis_s.shape[1] != len(stable) or basis_u.shape[1] != len(unstable):
        raise InvalidSystem('could not resolve the hyperbolic subspaces')
    return SplitFrame(basis_s=basis_s, basis_c=basis_c, basis_u=basis_u)


class LinearSystem(SystemModel):
    """
    Linear toral automorphism x -> M x mod 1 with a (possibly empty) central
    block of modulus-1 eigenvalues. All foliations are linear.
    """
    kind = SystemKind.linear

    def __init__(self, matrix, delta0=DELTA0, power=1):
        matrix = as_integer_matrix(matrix)
        frame = split_spectrum(matrix)
        hyp = linear_hyperbolicity(matrix, frame, delta0=delta0)
        super(LinearSystem, self).__init__(
            dim=matrix.shape[0], frame=frame, hyp=hyp, power=power)
        self.matrix = matrix
        self.matrix.setflags(write=False)
        self.inverse = integer_inverse(matrix)
        self.inverse.setflags(write=False)
        logger.debug('built %r', self)

    def apply(self, x: TorusPoint) -> TorusPoint:
        self.check_point(x)
        return wrap(self.matrix @ x.coords)

    def apply_inverse(self, x: TorusPoint) -> TorusPoint:
        self.check_point(x)
        return wrap(self.inverse @ x.coords)

    def differential(self, x: TorusPoint) -> np.ndarray:
        return self.matrix.astype(float)

    def sup_derivative_norm(self) -> float:
        return float(np.linalg.norm(self.matrix.astype(float), 2))

    def power_of(self, p: int) -> 'LinearSystem':
        return LinearSystem(np.linalg.matrix_power(self.matrix, p),
                            delta0=self.hyp.delta0, power=self.power * p)

    def reversed(self) -> 'LinearSystem':
        """the inverse map, stable and unstable foliations swapped"""
        return LinearSystem(self.inverse, delta0=self.hyp.delta0,
                            power=self.power)

    def chart_exp_s(self, x: TorusPoint, z: Displacement) -> TorusPoint:
        return chart_exp(x, self.frame.basis_s @ np.asarray(z, dtype=float))

    def chart_log_s(self, x: TorusPoint, p: TorusPoint) -> Displacement:
        return self.frame.basis_s.T @ chart_log(x, p)

    def chart_exp_u(self, x: TorusPoint, z: Displacement) -> TorusPoint:
        return chart_exp(x, self.frame.basis_u @ np.asarray(z, dtype=float))

    def chart_log_u(self, x: TorusPoint, p: TorusPoint) -> Displacement:
        return self.frame.basis_u.T @ chart_log(x, p)

    def _intersect(self, x, y, v, side) -> Intersection:
        v_s, v_c, v_u = self.frame.components(v)
        if side == Side.s_cu:
            strong, weak = v_s, v_c + v_u
        else:
            strong, weak = v_u, v_s + v_c
        return Intersection(
            point=chart_exp(x, strong),
            dist_strong=float(np.linalg.norm(strong)),
            dist_weak=float(np.linalg.norm(weak)))

    def transversal_residual(self, x, y, leaf) -> float:
        v_s, v_c, v_u = self.frame.components(chart_log(x, y))
        outside = {'c': v_s + v_u, 'cs': v_u, 'cu': v_s}[leaf]
        return float(np.linalg.norm(outside))

    def central_split(self, x, y):
        v_s, v_c, v_u = self.frame.components(chart_log(x, y))
        return float(np.linalg.norm(v_c)), float(np.linalg.norm(v_s + v_u))


def build_linear(matrix, delta0=DELTA0) -> LinearSystem:
    system = LinearSystem(matrix, delta0=delta0)
    logger.info('linear system dims=%s lambda=%.10g L0=%.6g l=%d',
                system.dims, system.hyp.lam, system.hyp.L0, system.hyp.l)
    return system
