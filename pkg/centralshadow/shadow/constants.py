"""
Constants of the central shadowing construction.

Given the hyperbolicity data (lambda, L0, delta0) and R = sup |Df| the
engine picks mu and L and derives the admissible pseudotrajectory error d0
together with the Lipschitz constant L_total of the shadowing estimate.
"""
import dataclasses
import logging
from typing import Optional

from ..core.errors import ConstantsInfeasible, InvalidInput
from ..core.system import HyperbolicityData


logger = logging.getLogger(__name__)

# preferred mu
MU_HINT = 0.1
# (1 + mu)^2 L0 / lambda must stay below this
RATE_MARGIN = 0.9
# L is taken this much above its infimum
L_SAFETY = 1.01
# d0 is taken this much below its supremum
D0_SAFETY = 0.99
# slack for the |z_k| <= L d checks
BOUND_ABS_TOL = 1e-12
# mu candidates below this are not tried
MU_MIN = 1e-6


@dataclasses.dataclass(frozen=True)
class ShadowConstants:
    mu: float
    L: float
    d0: float
    R: float
    L_cu: float
    L_cs: float
    L1: float
    L_total: float

    def as_dict(self):
        return dataclasses.asdict(self)


def mu_candidates(mu_hint: Optional[float] = None):
    """
    the hint first, then 0.5, 0.25, 0.1, 0.05, 0.025, 0.01, ...
    """
    if mu_hint is not None:
        yield mu_hint
    scale = 1.0
    while scale >= MU_MIN:
        for factor in (0.5, 0.25, 0.1):
            yield factor * scale
        scale /= 10


def rate_ratio(mu: float, hyp: HyperbolicityData) -> float:
    return (1 + mu) ** 2 * hyp.L0 / hyp.lam


def choose_mu(hyp: HyperbolicityData,
              mu_hint: Optional[float] = None) -> float:
    if mu_hint is not None and not 0 < mu_hint < 1:
        raise InvalidInput(f'mu_hint must lie in (0, 1), got {mu_hint!r}')
    for mu in mu_candidates(mu_hint):
        if rate_ratio(mu, hyp) <= RATE_MARGIN:
            return mu
    raise ConstantsInfeasible(
        f'no mu satisfies (1+mu)^2 L0/lambda <= {RATE_MARGIN} for '
        f'lambda={hyp.lam:.10g} L0={hyp.L0:.6g}')


def _check(constants: ShadowConstants, hyp: HyperbolicityData):
    mu, L = constants.mu, constants.L
    lam, L0, delta0 = hyp.lam, hyp.L0, hyp.delta0
    checks = [
        ((1 + mu) ** 2 * L0 / lam < 1, 'rate margin'),
        (L0 * (1 + L * (1 + mu) / lam) * (1 + mu) < L, 'L chain'),
        (constants.d0 < delta0 / (2 * L), 'd0 < delta0/2L'),
        (4 * L0 * L * constants.d0 < delta0, '4 L0 L d0 < delta0'),
        (constants.L_total >= constants.L1, 'L_total >= L1'),
    ]
    for ok, name in checks:
        if not ok:
            raise ConstantsInfeasible(
                f'constant selection violates {name} '
                f'(mu={mu:.6g} L={L:.6g} d0={constants.d0:.6g})')


def derive_constants(hyp: HyperbolicityData, R: float,
                     mu_hint: Optional[float] = None) -> ShadowConstants:
    """
    select mu and L and derive d0, L_cu, L_cs, L1 and L_total.

    :param hyp: hyperbolicity data of the system (after power reduction)
    :param R: sup of the differential norm of the system
    :param mu_hint: preferred mu, kept if it satisfies the margin
    :returns: verified ShadowConstants
    """
    if R <= 0:
        raise InvalidInput(f'R must be positive, got {R!r}')
    if hyp.lam <= 2 * hyp.L0:
        raise ConstantsInfeasible(
            f'lambda={hyp.lam:.10g} does not exceed 2 L0={2 * hyp.L0:.6g}, '
            f'use the power l={hyp.l} of the system')
    mu = choose_mu(hyp, MU_HINT if mu_hint is None else mu_hint)
    L0 = hyp.L0
    L = L_SAFETY * L0 * (1 + mu) / (1 - rate_ratio(mu, hyp))
    d0 = D0_SAFETY * min(hyp.delta0 / (2 * L), hyp.delta0 / (4 * L0 * L))
    L_cu = (4 * L0 + 1 + 4 * R * L0) * L
    # mirror chain on the unstable side
    L_cs = (4 * L0 + 1 + 4 * R * L0) * L
    L1 = (1 + mu) * max(L_cs, L_cu)
    constants = ShadowConstants(
        mu=mu, L=L, d0=d0, R=R, L_cu=L_cu, L_cs=L_cs, L1=L1,
        L_total=max(L1, 2 * L + 4 * L0))
    _check(constants, hyp)
    logger.info('constants mu=%.6g L=%.6g d0=%.6g L_total=%.6g',
                mu, L, d0, constants.L_total)
    return constants
