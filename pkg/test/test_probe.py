import logging

import pytest

from centralshadow.core.errors import InvalidInput
from centralshadow.core.linear import build_linear
from centralshadow.core.skew_product import build_skew_product
from centralshadow.core.torus import wrap
from centralshadow.core.trajectory import generate_noisy
from centralshadow.shadow.constants import derive_constants
from centralshadow.shadow.probe import ProbePair, plaque_probe


CAT_PLUS_ID = [[2, 1, 0], [1, 1, 0], [0, 0, 1]]
X0 = wrap([0.1, 0.2, 0.3])


def half_ball_seeds(system, d):
    constants = derive_constants(system.hyp, system.sup_derivative_norm())
    return [[0.0], [0.5 * constants.L * d]]


def test_linear_outputs_merge():
    system = build_linear(CAT_PLUS_ID)
    traj = generate_noisy(system, X0, 80, 1e-4, seed=6)
    seeds = half_ball_seeds(system, 1e-4)
    report = plaque_probe(system, traj, seeds)
    assert len(report.outputs) == 2 and len(report.pairs) == 1
    pair = report.pairs[0]
    assert pair.distances[0] == pytest.approx(seeds[1][0], abs=1e-13)
    assert max(pair.distances[60:]) <= 1e-10
    assert pair.settled_from is not None and pair.settled_from < 60

    data = report.as_dict()
    assert data['seeds'] == seeds
    assert data['pairs'][0]['settled_from'] == pair.settled_from


def test_skew_product_outputs_share_central_leaves():
    system = build_skew_product([[2, 1], [1, 1]], c0=0.01, c1=0.1)
    traj = generate_noisy(system, X0, 80, 1e-5, seed=3)
    report = plaque_probe(system, traj, half_ball_seeds(system, 1e-5))
    assert max(report.pairs[0].residuals[60:]) <= 1e-8


def test_short_window_warns(caplog):
    system = build_linear(CAT_PLUS_ID)
    traj = generate_noisy(system, X0, 3, 1e-4, seed=6)
    with caplog.at_level(logging.WARNING):
        report = plaque_probe(system, traj, half_ball_seeds(system, 1e-4))
    assert report.pairs[0].settled_from is None
    assert 'do not settle' in caplog.text


def test_rejected_seeds():
    system = build_linear(CAT_PLUS_ID)
    traj = generate_noisy(system, X0, 10, 1e-4, seed=6)
    with pytest.raises(InvalidInput):
        plaque_probe(system, traj, [[0.0], [0.01]])
    with pytest.raises(InvalidInput):
        plaque_probe(system, traj, [[0.0, 0.0]])


def test_identical_seeds():
    system = build_linear(CAT_PLUS_ID)
    traj = generate_noisy(system, X0, 20, 1e-4, seed=6)
    report = plaque_probe(system, traj, [[0.0], [0.0]])
    assert report.pairs[0].distances == [0.0] * 21
    assert report.pairs[0].settled_from == 0


def test_settled_from():
    pair = ProbePair(0, 1, [0.0] * 4, [1e-3, 1e-9, 1e-3, 1e-9])
    assert pair.settled_from == 3
    assert ProbePair(0, 1, [], []).settled_from is None


def test_plaque_outputs_after_power_reduction():
    system = build_linear([[1, 1, 0], [1, 0, 0], [0, 0, 1]])
    traj = generate_noisy(system, X0, 101, 1e-4, seed=2)
    report = plaque_probe(system, traj, [[0.0], [1e-4]])
    assert report.l == 2
    assert len(report.outputs[0]) == 51
    assert max(report.pairs[0].distances[30:]) <= 1e-10
    assert report.as_dict()['l'] == 2
