import numpy as np
import pytest

from centralshadow.core.errors import InvalidInput, CorrectionBoundViolation, \
    StepTooLarge, TooFarApart
from centralshadow.core.linear import build_linear
from centralshadow.core.skew_product import build_skew_product
from centralshadow.core.torus import chart_exp, chart_log, toral_dist, wrap
from centralshadow.core.trajectory import Pseudotrajectory, generate_noisy
from centralshadow.shadow.constants import derive_constants
from centralshadow.shadow.oracle import linear_backward_series_oracle, \
    linear_series_oracle
from centralshadow.shadow.passes import combine, h_s_step, h_u_step, \
    stable_pass, unstable_pass


CAT_PLUS_ID = [[2, 1, 0], [1, 1, 0], [0, 0, 1]]
GOLDEN = (1 + 5 ** 0.5) / 2
MU_S = 1 / GOLDEN ** 2
MU_U = GOLDEN ** 2
X0 = wrap([0.1, 0.2, 0.3])


@pytest.fixture(scope='module')
def system():
    return build_linear(CAT_PLUS_ID)


@pytest.fixture(scope='module')
def constants(system):
    return derive_constants(system.hyp, system.sup_derivative_norm())


def constant_error(system, direction, eps, N):
    points = [X0]
    for _ in range(N):
        points.append(chart_exp(system.apply(points[-1]), eps * direction))
    return Pseudotrajectory(points, eps)


def split_errors(system, traj):
    """frame coefficients (s, c, u) of every one-step error"""
    parts = [system.frame.coefficients(
        chart_log(system.apply(traj[k]), traj[k + 1]))
        for k in range(len(traj) - 1)]
    return [np.array([float(p[i][0]) for p in parts]) for i in range(3)]


def test_stable_pass_constant_error(system, constants):
    traj = constant_error(system, system.frame.basis_s[:, 0], 1e-4, 80)
    result = stable_pass(system, traj, constants)
    z = result.corrections.scalars()
    assert z[0] == 0.0
    assert z[-1] == pytest.approx(-1e-4 / (1 - MU_S), abs=1e-14)
    assert z[-1] == pytest.approx(-1.6180339887e-4, abs=1e-13)
    assert np.all(result.corrections.norms() <= constants.L * 1e-4)
    assert result.violations == 0


def test_unstable_pass_constant_error(system, constants):
    traj = constant_error(system, system.frame.basis_u[:, 0], 1e-4, 80)
    result = unstable_pass(system, traj, constants)
    z = result.corrections.scalars()
    assert z[-1] == 0.0
    assert z[0] == pytest.approx(6.180339887e-5, abs=1e-13)
    assert result.violations == 0


def test_passes_match_the_series(system, constants):
    traj = generate_noisy(system, X0, 150, 1e-4, seed=9)
    e_s, _, e_u = split_errors(system, traj)
    forward = stable_pass(system, traj, constants).corrections.scalars()
    backward = unstable_pass(system, traj, constants).corrections.scalars()
    assert np.allclose(forward, linear_series_oracle(e_s, MU_S), atol=1e-13)
    assert np.allclose(backward, linear_backward_series_oracle(e_u, MU_U),
                       atol=1e-13)


def test_oracle_rejects_wrong_eigenvalues():
    with pytest.raises(InvalidInput):
        linear_series_oracle([1e-4], 1.5)
    with pytest.raises(InvalidInput):
        linear_backward_series_oracle([1e-4], 0.5)


def test_combine_leaves_only_central_jumps(system, constants):
    traj = generate_noisy(system, X0, 120, 1e-4, seed=10)
    y_s = stable_pass(system, traj, constants)
    y_u = unstable_pass(system, traj, constants)
    y = combine(system, y_s, y_u, constants, d=traj.d)
    assert len(y) == len(traj) and y.violations == 0
    z_s = y_s.corrections.scalars()
    z_u = y_u.corrections.scalars()
    _, e_c, _ = split_errors(system, traj)
    for k in range(len(traj)):
        a, b, c = system.frame.coefficients(chart_log(traj[k], y[k]))
        assert a[0] == pytest.approx(z_s[k], abs=1e-13)
        assert b[0] == pytest.approx(0.0, abs=1e-13)
        assert c[0] == pytest.approx(z_u[k], abs=1e-13)
    for k in range(len(traj) - 1):
        jump = chart_log(system.apply(y[k]), y[k + 1])
        assert np.allclose(jump, e_c[k] * system.frame.basis_c[:, 0],
                           atol=1e-13)


def test_single_steps(system, constants):
    x_next = chart_exp(system.apply(X0), 1e-4 * system.frame.basis_s[:, 0])
    z = h_s_step(system, X0, x_next, [0.0], constants, 1e-4)
    assert z[0] == pytest.approx(-1e-4, abs=1e-14)
    with pytest.raises(CorrectionBoundViolation):
        h_s_step(system, X0, x_next, [0.0], constants, 1e-5)
    with pytest.raises(InvalidInput):
        h_s_step(system, X0, x_next, [0.0, 0.0], constants, 1e-4)

    x_next = chart_exp(system.apply(X0), 1e-4 * system.frame.basis_u[:, 0])
    z = h_u_step(system, X0, x_next, [0.0], constants, 1e-4)
    assert z[0] == pytest.approx(1e-4 / MU_U, abs=1e-14)
    exact = system.apply(X0)
    assert h_u_step(system, X0, exact, [0.0], constants, 1e-4)[0] == 0.0


def test_claimed_error_too_large(system, constants):
    traj = generate_noisy(system, X0, 10, 1e-4, seed=1)
    traj.d = 0.05
    with pytest.raises(StepTooLarge):
        stable_pass(system, traj, constants)
    with pytest.raises(StepTooLarge):
        unstable_pass(system, traj, constants)


def test_lenient_mode_counts_violations(system, constants):
    traj = constant_error(system, system.frame.basis_s[:, 0], 1e-4, 20)
    traj.d = 1e-5
    with pytest.raises(CorrectionBoundViolation):
        stable_pass(system, traj, constants)
    result = stable_pass(system, traj, constants, strict=False)
    assert result.violations > 0
    assert len(result.diagnostics) == result.violations


def test_step_callback(system, constants):
    traj = generate_noisy(system, X0, 25, 1e-4, seed=2)
    calls = []
    stable_pass(system, traj, constants, on_step=lambda: calls.append(1))
    assert len(calls) == 25


def test_combine_rejects(system, constants):
    x = X0
    far = chart_exp(x, np.array([0.01, 0.0, 0.0]))
    with pytest.raises(TooFarApart):
        combine(system, [x], [far], constants, d=1e-5)
    with pytest.raises(InvalidInput):
        combine(system, [x, x], [x], constants)


def test_combine_lenient_counts_distant_pairs(system, constants):
    x = X0
    far = chart_exp(x, np.array([0.01, 0.0, 0.0]))
    combined = combine(system, [x], [far], constants, d=1e-5, strict=False)
    assert len(combined) == 1
    assert combined.violations >= 1
    assert 'apart' in combined.diagnostics[0]


def test_skew_product_passes():
    system = build_skew_product([[2, 1], [1, 1]], c0=0.01, c1=0.1)
    constants = derive_constants(system.hyp, system.sup_derivative_norm())
    traj = generate_noisy(system, X0, 120, 1e-5, seed=3)
    y_s = stable_pass(system, traj, constants)
    y_u = unstable_pass(system, traj, constants)
    y = combine(system, y_s, y_u, constants, d=traj.d)
    assert y.violations == 0
    assert max(y_s.corrections.norms()) <= constants.L * 1e-5 + 1e-12
    assert max(y_u.corrections.norms()) <= constants.L * 1e-5 + 1e-12
    assert max(toral_dist(x, p) for x, p in zip(traj, y)) <= \
        constants.L_total * 1e-5


def test_stable_pass_of_reversed_system_is_the_unstable_pass(system,
                                                             constants):
    traj = generate_noisy(system, X0, 80, 1e-4, seed=12)
    reverse = system.reversed()
    reverse_constants = derive_constants(reverse.hyp,
                                         reverse.sup_derivative_norm())
    backward = traj.reversed(d=system.sup_derivative_norm() * traj.d)
    forward = stable_pass(reverse, backward,
                          reverse_constants).corrections.scalars()
    expected = unstable_pass(system, traj, constants).corrections.scalars()
    sign = float(reverse.frame.basis_s[:, 0] @ system.frame.basis_u[:, 0])
    assert abs(sign) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(sign * forward[::-1], expected, atol=1e-13)


@pytest.mark.parametrize('skew', [False, True])
def test_corrections_are_fixed_by_the_step_maps(skew):
    if skew:
        system = build_skew_product([[2, 1], [1, 1]], c0=0.01, c1=0.1)
        traj = generate_noisy(system, X0, 80, 1e-5, seed=3)
    else:
        system = build_linear(CAT_PLUS_ID)
        traj = generate_noisy(system, X0, 80, 1e-4, seed=3)
    constants = derive_constants(system.hyp, system.sup_derivative_norm())
    z_s = stable_pass(system, traj, constants).corrections
    z_u = unstable_pass(system, traj, constants).corrections
    for k in range(20, len(traj) - 1):
        step = h_s_step(system, traj[k], traj[k + 1], z_s[k], constants,
                        traj.d)
        assert np.allclose(step, z_s[k + 1], atol=1e-12)
        back = h_u_step(system, traj[k], traj[k + 1], z_u[k + 1], constants,
                        traj.d)
        assert np.allclose(back, z_u[k], atol=1e-12)


def test_series_oracle_examples():
    assert linear_series_oracle([0.0] * 5, MU_S) == [0.0] * 6
    impulse = linear_series_oracle([1.0, 0.0, 0.0, 0.0], MU_S)
    assert impulse[0] == 0.0
    assert impulse[1:] == pytest.approx([-MU_S ** (k - 1)
                                         for k in range(1, 5)])
