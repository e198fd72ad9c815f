"""
Correction passes of the central shadowing construction.

The stable pass walks forward from z_0 along the strong stable leaves of the
pseudotrajectory, the unstable pass walks backward from z_N along the strong
unstable leaves. Both keep every correction inside the ball of radius L d;
combine() then intersects the two resulting sequences pointwise.
"""
import dataclasses
import logging
from typing import Callable, List, NamedTuple, Optional

import numpy as np

from ..core.errors import InvalidInput, CorrectionBoundViolation, NotOnLeaf, \
    StepTooLarge, TooFarApart
from ..core.system import LEAF_TOL, Side, SystemModel
from ..core.torus import Displacement, TorusPoint, toral_dist
from ..core.trajectory import Pseudotrajectory
from .constants import BOUND_ABS_TOL, ShadowConstants


logger = logging.getLogger(__name__)


class StepOutcome(NamedTuple):
    # chart coordinate of the new correction
    z: Displacement
    # the intersection point on the strong leaf
    point: TorusPoint
    # weak leaf distance from the pushed point to the intersection
    dist_weak: float


@dataclasses.dataclass
class CorrectionSequence:
    """z_0 .. z_N in strong leaf chart coordinates, all within bound"""
    values: List[np.ndarray]
    bound: float

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def norms(self) -> np.ndarray:
        return np.array([float(np.linalg.norm(z)) for z in self.values])

    def scalars(self) -> np.ndarray:
        """values of one-dimensional strong subbundles as plain floats"""
        return np.array([float(np.reshape(z, -1)[0]) for z in self.values])


@dataclasses.dataclass
class LeafSequence:
    points: List[TorusPoint]
    violations: int = 0
    diagnostics: List[str] = dataclasses.field(default_factory=list)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, k):
        return self.points[k]

    def __iter__(self):
        return iter(self.points)


@dataclasses.dataclass
class PassResult(LeafSequence):
    corrections: Optional[CorrectionSequence] = None


class BoundLedger:
    """
    Records bound checks. In strict mode the first failed check raises,
    otherwise failures are counted and kept as diagnostics.
    """
    def __init__(self, strict: bool = True):
        self.strict = strict
        self.violations = 0
        self.diagnostics = []

    def record(self, ok: bool, message: str, error=CorrectionBoundViolation):
        if ok:
            return
        if self.strict:
            raise error(message)
        self.violations += 1
        self.diagnostics.append(message)
        logger.debug(message)


def _coordinate(system: SystemModel, z, size: int) -> np.ndarray:
    z = np.zeros(size) if z is None else np.asarray(z, dtype=float)
    if z.size != size:
        raise InvalidInput(
            f'correction of size {z.size} for a {size}-dimensional leaf')
    return z.reshape(size)


def _s_step(system: SystemModel, x_k: TorusPoint, x_next: TorusPoint,
            z: Displacement) -> StepOutcome:
    q = system.apply(system.chart_exp_s(x_k, z))
    hit = system.intersect(x_next, q, Side.s_cu, system.hyp.delta0)
    return StepOutcome(system.chart_log_s(x_next, hit.point), hit.point,
                       hit.dist_weak)


def _u_step(system: SystemModel, x_k: TorusPoint, x_next: TorusPoint,
            z_next: Displacement) -> StepOutcome:
    # exact orbit steps need no correction, f^-1 would only add rounding
    if not np.any(z_next) and system.apply(x_k) == x_next:
        return StepOutcome(np.zeros_like(z_next, dtype=float), x_k, 0.0)
    q = system.apply_inverse(system.chart_exp_u(x_next, z_next))
    hit = system.intersect(x_k, q, Side.u_cs, system.hyp.delta0)
    return StepOutcome(system.chart_log_u(x_k, hit.point), hit.point,
                       hit.dist_weak)


def h_s_step(system: SystemModel, x_k: TorusPoint, x_next: TorusPoint,
             z: Displacement, constants: ShadowConstants,
             d: float) -> Displacement:
    """
    push exp^s_{x_k}(z) forward and slide it along W^cu onto W^s(x_next).

    :returns: the s-chart coordinate at x_next, |result| <= L d
    """
    bound = constants.L * d
    z = _coordinate(system, z, system.dims[0])
    outcome = _s_step(system, x_k, x_next, z)
    norm = float(np.linalg.norm(outcome.z))
    if norm > bound + BOUND_ABS_TOL:
        raise CorrectionBoundViolation(
            f'stable correction {norm:.6g} exceeds L d = {bound:.6g}')
    return outcome.z


def h_u_step(system: SystemModel, x_k: TorusPoint, x_next: TorusPoint,
             z_next: Displacement, constants: ShadowConstants,
             d: float) -> Displacement:
    """
    pull exp^u_{x_next}(z_next) back and slide it along W^cs onto W^u(x_k).
    """
    bound = constants.L * d
    z_next = _coordinate(system, z_next, system.dims[2])
    outcome = _u_step(system, x_k, x_next, z_next)
    norm = float(np.linalg.norm(outcome.z))
    if norm > bound + BOUND_ABS_TOL:
        raise CorrectionBoundViolation(
            f'unstable correction {norm:.6g} exceeds L d = {bound:.6g}')
    return outcome.z


def _check_membership(system: SystemModel, ledger: BoundLedger, points,
                      traj: Pseudotrajectory, bound: float, weak: str):
    """
    consecutive points must satisfy y_{k+1} in W^weak_{Ld}(f(y_k)) and stay
    within 2 L d of the pseudotrajectory
    """
    side = Side.s_cu if weak == 'cu' else Side.u_cs
    limit = bound + BOUND_ABS_TOL
    for k, y in enumerate(points):
        ledger.record(toral_dist(traj[k], y) <= 2 * bound + BOUND_ABS_TOL,
                      f'k={k}: dist(x_k, y_k) exceeds 2 L d')
        if k + 1 == len(points):
            break
        image = system.apply(y)
        residual = system.transversal_residual(image, points[k + 1], weak)
        ledger.record(residual <= LEAF_TOL,
                      f'k={k}: y_(k+1) is {residual:.3g} off W^{weak}(f(y_k))',
                      error=NotOnLeaf)
        hit = system.intersect(image, points[k + 1], side, system.hyp.delta0)
        ledger.record(hit.dist_weak <= limit,
                      f'k={k}: W^{weak} distance {hit.dist_weak:.6g} exceeds '
                      f'L d = {bound:.6g}')


def _noop():
    pass


def stable_pass(system: SystemModel, traj: Pseudotrajectory,
                constants: ShadowConstants, z0=None, strict: bool = True,
                on_step: Callable[[], None] = _noop) -> PassResult:
    """
    forward pass z_0 = z0 (default 0), z_{k+1} = h_s_step(z_k),
    y^s_k = exp^s_{x_k}(z_k).

    :param strict: raise on the first bound violation instead of counting
    :param on_step: called once per step (budget checks)
    """
    if traj.d > constants.d0:
        raise StepTooLarge(traj.d, constants.d0)
    ledger = BoundLedger(strict)
    bound = constants.L * traj.d
    z = _coordinate(system, z0, system.dims[0])
    ledger.record(float(np.linalg.norm(z)) <= bound + BOUND_ABS_TOL,
                  f'initial correction exceeds L d = {bound:.6g}')
    values = [z]
    points = [system.chart_exp_s(traj[0], z)]
    for k in range(len(traj) - 1):
        on_step()
        z = _s_step(system, traj[k], traj[k + 1], z).z
        norm = float(np.linalg.norm(z))
        ledger.record(norm <= bound + BOUND_ABS_TOL,
                      f'k={k + 1}: stable correction {norm:.6g} exceeds '
                      f'L d = {bound:.6g}')
        values.append(z)
        points.append(system.chart_exp_s(traj[k + 1], z))
    _check_membership(system, ledger, points, traj, bound, 'cu')
    logger.debug('stable pass N=%d max|z|=%.6g violations=%d',
                 len(traj) - 1, max(np.linalg.norm(v) for v in values),
                 ledger.violations)
    return PassResult(points=points, violations=ledger.violations,
                      diagnostics=ledger.diagnostics,
                      corrections=CorrectionSequence(values, bound))


def unstable_pass(system: SystemModel, traj: Pseudotrajectory,
                  constants: ShadowConstants, zN=None, strict: bool = True,
                  on_step: Callable[[], None] = _noop) -> PassResult:
    """
    backward pass z_N = zN (default 0), z_k from z_{k+1} through f^-1,
    y^u_k = exp^u_{x_k}(z_k).
    """
    if traj.d > constants.d0:
        raise StepTooLarge(traj.d, constants.d0)
    ledger = BoundLedger(strict)
    bound = constants.L * traj.d
    n = len(traj) - 1
    z = _coordinate(system, zN, system.dims[2])
    ledger.record(float(np.linalg.norm(z)) <= bound + BOUND_ABS_TOL,
                  f'final correction exceeds L d = {bound:.6g}')
    values = [None] * (n + 1)
    points = [None] * (n + 1)
    values[n] = z
    points[n] = system.chart_exp_u(traj[n], z)
    for k in range(n - 1, -1, -1):
        on_step()
        z = _u_step(system, traj[k], traj[k + 1], z).z
        norm = float(np.linalg.norm(z))
        ledger.record(norm <= bound + BOUND_ABS_TOL,
                      f'k={k}: unstable correction {norm:.6g} exceeds '
                      f'L d = {bound:.6g}')
        values[k] = z
        points[k] = system.chart_exp_u(traj[k], z)
    _check_membership(system, ledger, points, traj, bound, 'cs')
    logger.debug('unstable pass N=%d max|z|=%.6g violations=%d', n,
                 max(np.linalg.norm(v) for v in values), ledger.violations)
    return PassResult(points=points, violations=ledger.violations,
                      diagnostics=ledger.diagnostics,
                      corrections=CorrectionSequence(values, bound))


def combine(system: SystemModel, y_s, y_u, constants: ShadowConstants,
            d: Optional[float] = None, strict: bool = True) -> LeafSequence:
    """
    y_k = W^s(y^u_k) cap W^cu(y^s_k) for every k.

    :param d: pseudotrajectory error; enables the 4 L d and 4 L0 L d checks
    """
    if len(y_s) != len(y_u):
        raise InvalidInput(
            f'sequence lengths differ: {len(y_s)} != {len(y_u)}')
    ledger = BoundLedger(strict)
    L0 = system.hyp.L0
    points = []
    for k, (ys, yu) in enumerate(zip(y_s, y_u)):
        if d is not None:
            gap = toral_dist(ys, yu)
            ledger.record(gap <= 4 * constants.L * d + BOUND_ABS_TOL,
                          f'k={k}: y^s and y^u are {gap:.6g} apart, more '
                          f'than 4 L d = {4 * constants.L * d:.6g}',
                          error=TooFarApart)
        hit = system.intersect(yu, ys, Side.s_cu, system.hyp.delta0)
        if d is not None:
            limit = 4 * L0 * constants.L * d + BOUND_ABS_TOL
            ledger.record(max(hit.dist_strong, hit.dist_weak) <= limit,
                          f'k={k}: leaf distances {hit.dist_strong:.6g}, '
                          f'{hit.dist_weak:.6g} exceed 4 L0 L d')
        points.append(hit.point)
    return LeafSequence(points=points, violations=ledger.violations,
                        diagnostics=ledger.diagnostics)
