import json
import os

import numpy as np
import pytest

from centralshadow.core.errors import ConstantsInfeasible
from centralshadow.core.linear import build_linear
from centralshadow.core.skew_product import build_skew_product
from centralshadow.core.system import HyperbolicityData, system_power
from centralshadow.core.torus import chart_log, wrap
from centralshadow.core.trajectory import generate_noisy, one_step_errors
from centralshadow.shadow.constants import derive_constants
from centralshadow.shadow.oracle import linear_backward_series_oracle, \
    linear_series_oracle
from centralshadow.shadow.passes import stable_pass, unstable_pass
from centralshadow.shadow.probe import plaque_probe
from centralshadow.shadow.shadower import CentralShadower, central_shadow


BASE_PATH = os.path.abspath(os.path.dirname(__file__))

scenarios = os.path.join(BASE_PATH, 'shadow_scenarios.json')
data = {s['name']: s for s in
        json.load(open(scenarios, 'r', encoding='utf-8'))}


def system_from_scenario(scenario):
    spec = scenario['system']
    if spec['kind'] == 'linear':
        return build_linear(spec['matrix'])
    return build_skew_product(spec['base_matrix'], c0=spec['c0'],
                              c1=spec['c1'])


def trajectory_from_scenario(system, scenario, d=None, seed=None):
    return generate_noisy(
        system, wrap(scenario['x0']), scenario['N'],
        scenario['d'] if d is None else d,
        seed=scenario['seed'] if seed is None else seed)


@pytest.mark.parametrize('name', sorted(data))
def test_scenario_systems(name):
    scenario = data[name]
    system = system_from_scenario(scenario)
    assert system.center_dim == scenario['centerDim']
    assert system.hyp.lam == pytest.approx(scenario['expectedLambda'],
                                           abs=1e-6)
    assert system.hyp.l == scenario.get('expectedPower', 1)
    if 'expectedL' in scenario:
        power = system_power(system, system.hyp.l)
        constants = derive_constants(power.hyp, power.sup_derivative_norm())
        assert constants.L == pytest.approx(scenario['expectedL'], abs=1e-4)
        assert constants.L_total == pytest.approx(scenario['expectedLTotal'],
                                                  abs=1e-2)


def test_passes_follow_the_series():
    scenario = data['cat_plus_identity']
    system = system_from_scenario(scenario)
    constants = derive_constants(system.hyp, system.sup_derivative_norm())
    traj = trajectory_from_scenario(system, scenario)
    errors = [system.frame.coefficients(
        chart_log(system.apply(traj[k]), traj[k + 1]))
        for k in range(len(traj) - 1)]
    e_s = [float(e[0][0]) for e in errors]
    e_u = [float(e[2][0]) for e in errors]
    mu_s, mu_u = sorted(abs(v) for v in
                        np.linalg.eigvals(system.matrix.astype(float))
                        if abs(abs(v) - 1) > 1e-9)
    forward = stable_pass(system, traj, constants).corrections.scalars()
    backward = unstable_pass(system, traj, constants).corrections.scalars()
    assert np.allclose(forward[50:], linear_series_oracle(e_s, mu_s)[50:],
                       atol=1e-10)
    assert np.allclose(backward, linear_backward_series_oracle(e_u, mu_u),
                       atol=1e-10)


def test_lipschitz_sweep():
    scenario = data['cat_plus_identity']
    system = system_from_scenario(scenario)
    ds = np.logspace(-6, -3, 8)
    dists = []
    for d in ds:
        result = central_shadow(system,
                                trajectory_from_scenario(system, scenario, d))
        assert result.certified
        assert result.sup_dist <= scenario['expectedLTotal'] * 1.001 * d
        dists.append(result.sup_dist)
    slope, _ = np.polyfit(np.log(ds), np.log(dists), 1)
    assert slope == pytest.approx(1.0, abs=0.05)
    # the same noise scaled by 1000 moves the shadow 1000 times as far
    assert dists[-1] / dists[0] == pytest.approx(1000.0, rel=1e-8)


def test_skew_product_central_property():
    scenario = data['skew_product']
    system = system_from_scenario(scenario)
    result = central_shadow(system, trajectory_from_scenario(system, scenario))
    assert result.certified
    assert all(j.transversal_residual <= 1e-9 for j in result.jumps)
    assert result.max_central_jump <= \
        result.constants.L_total * scenario['d']


def test_anosov_shadow_is_a_true_orbit():
    scenario = data['cat_map']
    system = system_from_scenario(scenario)
    result = central_shadow(system, trajectory_from_scenario(system, scenario))
    assert result.certified
    assert max(one_step_errors(system, result.y)) <= 1e-10


def test_no_violations_over_many_steps():
    scenario = data['cat_plus_identity']
    system = system_from_scenario(scenario)
    shadower = CentralShadower()
    steps = violations = 0
    for seed in range(25):
        traj = generate_noisy(system, wrap(scenario['x0']), 2000,
                              scenario['d'], seed=seed)
        result = shadower.shadow(system, traj)
        steps += shadower.runs
        violations += result.bound_violations
    assert steps >= 100000
    assert violations == 0


def test_exact_orbit_is_fixed():
    for name in ('cat_plus_identity', 'skew_product'):
        scenario = data[name]
        system = system_from_scenario(scenario)
        traj = trajectory_from_scenario(system, scenario, d=0.0)
        result = central_shadow(system, traj)
        assert result.y.points == traj.points
        assert result.sup_dist == 0.0
        assert all(j.central_dist == 0.0 for j in result.jumps)


def test_constants_engine():
    hyp = HyperbolicityData(
        nu=0.3819660113, nu_hat=0.3819660113, gamma=1.0, gamma_hat=1.0,
        lam=2.6180339887, L0=1.0, delta0=0.1, m=1, l=1)
    constants = derive_constants(hyp, 2.6180339887, mu_hint=0.1)
    assert constants.L == pytest.approx(2.0657, abs=1e-4)
    assert constants.L_total == pytest.approx(35.157, abs=1e-2)
    infeasible = HyperbolicityData(
        nu=1 / 1.5, nu_hat=1 / 1.5, gamma=1.0, gamma_hat=1.0, lam=1.5,
        L0=1.2, delta0=0.1, m=1, l=1)
    with pytest.raises(ConstantsInfeasible):
        derive_constants(infeasible, 1.5)


def test_plaque_probe():
    scenario = data['cat_plus_identity']
    system = system_from_scenario(scenario)
    traj = trajectory_from_scenario(system, scenario)
    L = derive_constants(system.hyp, system.sup_derivative_norm()).L
    report = plaque_probe(system, traj, [[0.0], [L * scenario['d'] / 2]])
    assert max(report.pairs[0].distances[60:]) <= 1e-10

    scenario = data['skew_product']
    system = system_from_scenario(scenario)
    traj = trajectory_from_scenario(system, scenario)
    L = derive_constants(system.hyp, system.sup_derivative_norm()).L
    report = plaque_probe(system, traj, [[0.0], [L * scenario['d'] / 2]])
    assert max(report.pairs[0].residuals[60:]) <= 1e-8
