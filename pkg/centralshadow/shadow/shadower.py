import dataclasses
import logging
import time  # for time limitation
from typing import List, Optional

from ..core.errors import InvalidInput, StepTooLarge
from ..core.system import SystemModel, system_power
from ..core.torus import TorusPoint
from ..core.trajectory import CentralJumpRecord, Pseudotrajectory, \
    one_step_errors, shadowing_distance, validate, verify_central
from .constants import BOUND_ABS_TOL, ShadowConstants, derive_constants
from .passes import combine, stable_pass, unstable_pass


logger = logging.getLogger(__name__)

# max. amount of correction steps until we abort the run
MAX_RUNS = float('inf')
# max. time until we abort the run (in seconds)
TIME_LIMIT = float('inf')

# without a center the shadow must be a true orbit up to this defect
ANOSOV_DEFECT_TOL = 1e-10


class ExecutionTimeException(Exception):
    """
    Exception that gets thrown when a certain time has been exceeded.
    """
    def __init__(self, message):
        super(ExecutionTimeException, self).__init__(message)


class ExecutionRunsException(Exception):
    """
    Exception that gets thrown when the number of max. runs has been reached.
    """
    def __init__(self, message):
        super(ExecutionRunsException, self).__init__(message)


def reduce_power(system: SystemModel, traj: Pseudotrajectory):
    """
    f^l with every l-th point for the minimal power l of the system,
    d_l = d (1 + R + ... + R^(l-1)). With l = 1 both stay as they are.

    :returns: (power system, reduced pseudotrajectory)
    """
    l = system.hyp.l
    if l == 1:
        return system, Pseudotrajectory(list(traj.points), traj.d)
    R = system.sup_derivative_norm()
    d_l = traj.d * sum(R ** i for i in range(l))
    logger.info('power reduction l=%d d=%.6g -> %.6g', l, traj.d, d_l)
    return system_power(system, l), Pseudotrajectory(traj.points[::l], d_l)


@dataclasses.dataclass
class ShadowingResult:
    # the central pseudotrajectory
    y: Pseudotrajectory
    # stable and unstable pass points (every l-th index for l > 1)
    y_s: List[TorusPoint]
    y_u: List[TorusPoint]
    jumps: List[CentralJumpRecord]
    sup_dist: float
    constants: ShadowConstants
    certified: bool
    # one-step error the bounds were computed for
    d: float = 0.0
    # certified bound on sup_dist
    bound: float = 0.0
    l: int = 1
    bound_violations: int = 0
    diagnostics: List[str] = dataclasses.field(default_factory=list)

    @property
    def max_central_jump(self) -> float:
        return max((j.central_dist for j in self.jumps), default=0.0)

    @property
    def max_residual(self) -> float:
        return max((j.transversal_residual for j in self.jumps), default=0.0)


class CentralShadower:
    def __init__(self, mu_hint: Optional[float] = None,
                 time_limit: float = TIME_LIMIT,
                 max_runs: int = MAX_RUNS):
        """
        Find a central pseudotrajectory close to a given pseudotrajectory
        :param mu_hint: preferred mu of the constants engine
        :param time_limit: max. runtime in seconds
        :param max_runs: max. amount of correction steps until we abort
            (passes take N steps each)
        """
        self.mu_hint = mu_hint
        self.time_limit = time_limit
        self.max_runs = max_runs

        self.start_time = 0  # execution time limitation
        self.runs = 0  # count number of correction steps

    def keep_running(self):
        """
        Check, if we run into time or iteration constrains.

        :returns: True if we keep running and False if we run into a constraint
        """
        if self.runs >= self.max_runs:
            raise ExecutionRunsException(
                '{} run into barrier of {} correction steps'.format(
                    self.__class__.__name__, self.max_runs))

        if time.time() - self.start_time >= self.time_limit:
            raise ExecutionTimeException(
                '{} took longer than {} seconds, aborting!'.format(
                    self.__class__.__name__, self.time_limit))

    def _step(self):
        self.runs += 1
        self.keep_running()

    def _correct(self, system: SystemModel, traj: Pseudotrajectory):
        constants = derive_constants(
            system.hyp, system.sup_derivative_norm(), self.mu_hint)
        if traj.d > constants.d0:
            raise StepTooLarge(traj.d, constants.d0)
        stable = stable_pass(system, traj, constants, strict=False,
                             on_step=self._step)
        unstable = unstable_pass(system, traj, constants, strict=False,
                                 on_step=self._step)
        combined = combine(system, stable.points, unstable.points, constants,
                           d=traj.d, strict=False)
        violations = stable.violations + unstable.violations + \
            combined.violations
        diagnostics = stable.diagnostics + unstable.diagnostics + \
            combined.diagnostics
        return constants, stable, unstable, combined, violations, diagnostics

    def shadow(self, system: SystemModel,
               traj: Pseudotrajectory) -> ShadowingResult:
        """
        run the stable and unstable passes, combine them and certify the
        resulting central pseudotrajectory.

        :param system: the partially hyperbolic system
        :param traj: pseudotrajectory with claimed error traj.d
        :returns: ShadowingResult
        """
        self.start_time = time.time()
        self.runs = 0
        if len(traj) < 2:
            raise InvalidInput('pseudotrajectory needs at least two points')
        for x in traj:
            system.check_point(x)
        check = validate(system, traj)
        if not check.passed:
            raise InvalidInput(
                f'one-step error {check.max_error:.6g} at k='
                f'{check.worst_index} exceeds the claimed d={traj.d:.6g}')
        d = max(traj.d, check.max_error)
        l = system.hyp.l
        n = len(traj) - 1
        power, work = reduce_power(system, Pseudotrajectory(traj.points, d))
        d_work = work.d

        constants, stable, unstable, combined, violations, diagnostics = \
            self._correct(power, work)

        points = []
        for j, y_j in enumerate(combined.points):
            for i in range(min(l, n + 1 - j * l)):
                points.append(system.iterate(y_j, i))

        eps = constants.L_total * d_work
        if l == 1:
            bound = eps
        else:
            # intermediate points are one-step images under f, not f^l
            R = system.sup_derivative_norm()
            bound = eps * max(1.0, R) ** (l - 1) + d_work
        y = Pseudotrajectory(points, eps)
        central = verify_central(system, y, eps + BOUND_ABS_TOL)
        sup_dist = shadowing_distance(traj, y)

        if not central.passed:
            diagnostics.append(
                f'central jumps up to {central.max_central_dist:.6g} '
                f'(eps {eps:.6g}), residuals up to '
                f'{central.max_residual:.3g}')
        if sup_dist > bound + BOUND_ABS_TOL:
            diagnostics.append(
                f'sup_dist {sup_dist:.6g} exceeds the bound {bound:.6g}')
        defect_ok = True
        if system.center_dim == 0:
            defect = max(one_step_errors(system, y), default=0.0)
            defect_ok = defect <= ANOSOV_DEFECT_TOL
            if not defect_ok:
                diagnostics.append(
                    f'no center but the shadow has one-step defect '
                    f'{defect:.3g}')

        certified = central.passed and defect_ok and violations == 0 and \
            sup_dist <= bound + BOUND_ABS_TOL
        logger.info('central shadow N=%d d=%.6g sup_dist=%.6g bound=%.6g '
                    'max_jump=%.6g certified=%s', n, d, sup_dist, bound,
                    central.max_central_dist, certified)
        return ShadowingResult(
            y=y, y_s=stable.points, y_u=unstable.points,
            jumps=central.records, sup_dist=sup_dist, constants=constants,
            certified=certified, d=d, bound=bound, l=l,
            bound_violations=violations, diagnostics=diagnostics)


def central_shadow(system: SystemModel, traj: Pseudotrajectory,
                   mu_hint: Optional[float] = None) -> ShadowingResult:
    return CentralShadower(mu_hint=mu_hint).shadow(system, traj)
