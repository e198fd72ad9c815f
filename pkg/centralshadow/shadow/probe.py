"""
Plaque probe: rerun the construction from different admissible initial
corrections and compare the resulting central pseudotrajectories.

The probe only reports. Whether nearby central pseudotrajectories always lie
in each other's central plaques is an open question, so disagreement is
logged as a warning and never raised.
"""
import dataclasses
import itertools
import logging
from typing import List, Optional, Sequence

import numpy as np

from ..core.errors import InvalidInput
from ..core.system import SystemModel
from ..core.torus import TorusPoint, toral_dist
from ..core.trajectory import Pseudotrajectory, validate
from .constants import BOUND_ABS_TOL, ShadowConstants, derive_constants
from .passes import combine, stable_pass, unstable_pass
from .shadower import reduce_power


logger = logging.getLogger(__name__)

# pairs whose final residual exceeds this are logged as diverging
PROBE_RESIDUAL_TOL = 1e-8


@dataclasses.dataclass
class ProbePair:
    i: int
    j: int
    distances: List[float]
    # distance of the j-th output from the central leaf of the i-th
    residuals: List[float]

    @property
    def settled_from(self) -> Optional[int]:
        """first index from which all residuals stay below the tolerance"""
        settled = None
        for k, r in enumerate(self.residuals):
            if r <= PROBE_RESIDUAL_TOL:
                if settled is None:
                    settled = k
            else:
                settled = None
        return settled


@dataclasses.dataclass
class ProbeReport:
    seeds: List[List[float]]
    outputs: List[List[TorusPoint]]
    pairs: List[ProbePair]
    constants: ShadowConstants
    # outputs hold every l-th point of the pseudotrajectory
    l: int = 1

    def as_dict(self):
        return {
            'seeds': self.seeds,
            'l': self.l,
            'constants': self.constants.as_dict(),
            'pairs': [{
                'i': p.i, 'j': p.j, 'settled_from': p.settled_from,
                'distances': p.distances, 'residuals': p.residuals,
            } for p in self.pairs],
        }


def plaque_probe(system: SystemModel, traj: Pseudotrajectory,
                 seeds: Sequence, mu_hint: Optional[float] = None
                 ) -> ProbeReport:
    """
    :param seeds: initial stable corrections z_0, each within L d (L d_l
        of the power system when the system needs power reduction)
    :returns: per-pair distances and transversal residuals
    """
    check = validate(system, traj)
    if not check.passed:
        raise InvalidInput(
            f'one-step error {check.max_error:.6g} exceeds the claimed '
            f'd={traj.d:.6g}')
    l = system.hyp.l
    system, traj = reduce_power(system, traj)
    constants = derive_constants(
        system.hyp, system.sup_derivative_norm(), mu_hint)
    bound = constants.L * traj.d
    size = system.dims[0]
    seeds = [np.asarray(s, dtype=float).reshape(-1) for s in seeds]
    for s in seeds:
        if s.size != size:
            raise InvalidInput(
                f'seed of size {s.size} for a {size}-dimensional stable leaf')
        if float(np.linalg.norm(s)) > bound + BOUND_ABS_TOL:
            raise InvalidInput(
                f'seed {s.tolist()} lies outside the ball of radius '
                f'L d = {bound:.6g}')

    unstable = unstable_pass(system, traj, constants)
    outputs = []
    for s in seeds:
        stable = stable_pass(system, traj, constants, z0=s)
        outputs.append(combine(system, stable.points, unstable.points,
                               constants, d=traj.d).points)

    pairs = []
    for i, j in itertools.combinations(range(len(outputs)), 2):
        distances, residuals = [], []
        for a, b in zip(outputs[i], outputs[j]):
            distances.append(toral_dist(a, b))
            residuals.append(system.central_split(a, b)[1])
        pair = ProbePair(i, j, distances, residuals)
        if pair.settled_from is None:
            logger.warning('probe outputs %d and %d do not settle onto a '
                           'common central leaf (final residual %.3g)',
                           i, j, residuals[-1])
        pairs.append(pair)
    return ProbeReport([s.tolist() for s in seeds], outputs, pairs,
                       constants, l=l)
