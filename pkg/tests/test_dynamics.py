import math

import numpy as np
import pytest

from qslsim import (
    AmplitudeTrajectory,
    Lorentzian,
    Ohmic,
    SimulationConfig,
    UnstableStepError,
    analytic_trajectory,
    decay_rate,
    lorentzian_propagator,
    solve_amplitude,
    solve_amplitude_vector,
)


def lorentzian_config(n, gamma0, lam=1.0, horizon=10.0, step=1e-3):
    return SimulationConfig(n_qubits=n, sd=Lorentzian(gamma0, lam), horizon=horizon, step=step)


def ohmic_config(n, gamma, omega_c=1.0, horizon=10.0, step=1e-3):
    return SimulationConfig(n_qubits=n, sd=Ohmic(gamma, omega_c), horizon=horizon, step=step)


# ---------------------------------------------------------------- config


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n_qubits": 0},
        {"horizon": 0.0},
        {"step": 0.0},
        {"step": 2.0},  # > horizon/10
        {"horizon": 1e6, "step": 1e-2},  # > 1e7 grid points
        {"solver_tol": 0.0},
    ],
)
def test_config_invariants(kwargs):
    base = dict(n_qubits=1, sd=Lorentzian(1.0, 1.0), horizon=10.0, step=1e-3)
    base.update(kwargs)
    with pytest.raises(ValueError):
        SimulationConfig(**base)


def test_config_grid_spans_horizon():
    grid = lorentzian_config(1, 1.0, step=1e-2).grid()
    assert grid[0] == 0.0
    assert grid[-1] == 10.0
    assert len(grid) == 1001


# ------------------------------------------------------------ propagator


def test_propagator_starts_at_one():
    for n, g0, lam in [(1, 0.5, 1.0), (4, 3.0, 2.0), (10, 0.1, 0.3)]:
        assert lorentzian_propagator(n, g0, lam, 0.0) == 1.0


def test_propagator_no_coupling_is_flat():
    t = np.linspace(0.0, 10.0, 101)
    g = lorentzian_propagator(5, 0.0, 1.0, t)
    assert np.allclose(g, 1.0, atol=1e-12)


def test_propagator_oscillatory_value():
    # N=1, gamma0=1, lam=1: quadratic root is imaginary and the bracket
    # reduces to exp(-t/2) * (cos(t/2) + sin(t/2))
    expected = math.exp(-0.5) * (math.cos(0.5) + math.sin(0.5))
    assert lorentzian_propagator(1, 1.0, 1.0, 1.0) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.8231, abs=5e-5)


def test_propagator_degenerate_limit():
    # lam = 2*gamma0*N collapses the two exponents; bracket -> 1 + lam*t/2
    t = np.linspace(0.0, 10.0, 11)
    g = lorentzian_propagator(1, 0.5, 1.0, t)
    expected = 1.0 + (np.exp(-0.5 * t) * (1.0 + 0.5 * t) - 1.0) / 1.0
    assert np.allclose(g, expected, atol=1e-9)


def test_propagator_continuous_across_degeneracy():
    t = np.linspace(0.0, 10.0, 201)
    lam = 1.0
    for eps in (1e-6, -1e-6):
        g0 = (lam * lam + eps) / (2.0 * lam)  # straddle the degeneracy
        near = lorentzian_propagator(1, g0, lam, t)
        exact = lorentzian_propagator(1, 0.5, lam, t)
        assert np.max(np.abs(near - exact)) < 1e-4


def test_propagator_long_horizon_no_overflow():
    value = lorentzian_propagator(1, 0.1, 20.0, 500.0)
    assert np.isfinite(value.real) and abs(value) < 1.0


def test_propagator_rejects_bad_args():
    with pytest.raises(ValueError):
        lorentzian_propagator(1, 1.0, 1.0, -1.0)
    with pytest.raises(ValueError):
        lorentzian_propagator(0, 1.0, 1.0, 1.0)


def test_population_trapping_limit():
    # real-root regime: |C1|^2 settles at ((N-1)/N)^2
    g = lorentzian_propagator(4, 0.1, 1.0, 50.0)
    assert abs(g) ** 2 == pytest.approx(0.5625, abs=1e-4)


# ---------------------------------------------------------------- solver


@pytest.mark.parametrize("n,g0", [(1, 1.0), (4, 3.0), (10, 0.5)])
def test_solver_matches_closed_form(n, g0):
    config = lorentzian_config(n, g0)
    numeric = solve_amplitude(config)
    exact = analytic_trajectory(config)
    assert numeric.method == "volterra"
    assert exact.method == "analytic"
    assert np.max(np.abs(numeric.c1 - exact.c1)) <= 1e-6


def test_solver_initial_condition_exact():
    for config in (lorentzian_config(3, 1.0), ohmic_config(3, 1.0)):
        assert solve_amplitude(config).c1[0] == 1.0 + 0.0j


def test_solver_second_order_convergence():
    config_coarse = lorentzian_config(2, 1.0, step=2e-3)
    config_fine = lorentzian_config(2, 1.0, step=1e-3)
    errs = []
    for config in (config_coarse, config_fine):
        numeric = solve_amplitude(config)
        exact = analytic_trajectory(config)
        errs.append(np.max(np.abs(numeric.c1 - exact.c1)))
    assert 3.5 <= errs[0] / errs[1] <= 4.5


@pytest.mark.parametrize(
    "config",
    [lorentzian_config(2, 2.0), lorentzian_config(10, 3.0), ohmic_config(1, 7.0), ohmic_config(4, 2.0)],
    ids=["lor-weak", "lor-strong", "ohm-bound", "ohm-mid"],
)
def test_solver_population_stays_physical(config):
    trajectory = solve_amplitude(config)
    assert np.abs(trajectory.c1).max() <= 1.0 + config.solver_tol


def test_ohmic_weak_coupling_monotone_decay():
    trajectory = solve_amplitude(ohmic_config(1, 0.1))
    assert np.all(np.diff(trajectory.population) <= 1e-12)
    # frozen regression (h = 1e-3 grid)
    assert trajectory.population[-1] == pytest.approx(0.7113045062, abs=1e-8)


def test_ohmic_bound_state_population_plateau():
    trajectory = solve_amplitude(ohmic_config(1, 7.0))
    tail = trajectory.population[8000:]
    assert tail.min() > 0.07  # trapped fraction never dies out
    assert trajectory.population[-1] == pytest.approx(0.0794990687, abs=1e-7)


def test_solver_rejects_unstable_step():
    config = SimulationConfig(n_qubits=1, sd=Lorentzian(1e6, 1.0), horizon=10.0, step=1.0)
    with pytest.raises(UnstableStepError):
        solve_amplitude(config)


def test_trajectory_csv_format():
    config = lorentzian_config(1, 1.0, horizon=1.0, step=0.1)
    text = solve_amplitude(config).to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "t,re_c1,im_c1,population"
    assert lines[1] == "0.0,1.0,0.0,1.0"
    assert len(lines) == 12


# ---------------------------------------------------------- vector oracle


@pytest.mark.parametrize("make", [lorentzian_config, ohmic_config], ids=["lor", "ohm"])
@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_vector_oracle_matches_reduction(make, n):
    config = make(n, 1.5)
    vector = solve_amplitude_vector(config)
    scalar = solve_amplitude(config)
    assert np.max(np.abs(vector.amplitudes[:, 0] - scalar.c1)) <= 1e-8


def test_spectators_identical_and_driven():
    config = lorentzian_config(3, 1.0)
    vector = solve_amplitude_vector(config)
    amp = vector.amplitudes
    assert np.max(np.abs(amp[:, 1] - amp[:, 2])) <= 1e-10
    assert amp[0, 1] == 0.0
    # spectators acquire amplitude through the shared reservoir
    assert np.abs(amp[1000:, 1]).max() > 1e-2


def test_vector_oracle_scale_limit():
    with pytest.raises(ValueError):
        solve_amplitude_vector(lorentzian_config(17, 1.0))


# ------------------------------------------------------------ decay rate


def test_decay_rate_zero_without_coupling():
    rate = decay_rate(solve_amplitude(lorentzian_config(1, 0.0)))
    assert not rate.truncated
    assert np.max(np.abs(rate.gamma)) < 1e-9


def test_decay_rate_markovian_plateau():
    # wide reservoir: the rate settles at gamma0*N/2 (expansion of the
    # closed-form exponents), here 0.05
    config = lorentzian_config(1, 0.1, lam=20.0)
    rate = decay_rate(analytic_trajectory(config))
    late = rate.gamma[rate.times > 5.0]
    assert np.allclose(late, 0.05, rtol=0.05)


def test_decay_rate_nonnegative_for_decaying_amplitude():
    rate = decay_rate(solve_amplitude(ohmic_config(1, 0.1)))
    assert np.all(rate.gamma >= -1e-10)


def test_decay_rate_truncates_at_amplitude_floor():
    times = np.linspace(0.0, 10.0, 1001)
    c1 = np.exp(-8.0 * times) + 0.0j  # underflows the 1e-12 floor around t ~ 3.5
    trajectory = AmplitudeTrajectory(times, c1, np.abs(c1) ** 2, method="analytic")
    rate = decay_rate(trajectory)
    assert rate.truncated
    assert len(rate.times) < len(times)
    # centered differences overshoot by sinh(8h)/(8h) - 1 ~ 1e-3 at h = 0.01
    assert np.allclose(rate.gamma[5:-5], 8.0, rtol=1e-2)
