"""One-dimensional solvers: frozen benchmark anchors, classical-limit oracle
agreement, discrete stability, and configuration validation."""

from __future__ import annotations

import numpy as np
import pytest

from wsgdiff import (
    P1Q0,
    P1QM1,
    ParameterError,
    Problem1D,
    SolverConfig1D,
    assemble_cn_system,
    cn_wsgd_run,
    cn_wsgd_run_variable,
    convergence_rate,
    make_example,
    steady_solve_3wsgd,
)

from oracles import classical_cn_heat_run
from _tables import STEADY


# ---------------------------------------------------------------------------
# Steady third-order solve
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("alpha", [1.1, 1.9])
def test_steady_anchor_rows(alpha):
    # frozen benchmark values for the two coarsest resolutions
    for row in STEADY[alpha][:2]:
        n, max_want, _, l2_want, _ = row
        sol = steady_solve_3wsgd(make_example("ex0", alpha), n)
        assert sol.max_err_final == pytest.approx(max_want, rel=1e-3)
        assert sol.l2_err_final == pytest.approx(l2_want, rel=1e-3)
        assert sol.t_final is None
        assert sol.values[0] == 0.0 and sol.values[-1] == 1.0


def test_steady_observed_order_is_three():
    alpha = 1.5
    errs = [
        steady_solve_3wsgd(make_example("ex0", alpha), n).max_err_final
        for n in (32, 64, 128)
    ]
    rates = [convergence_rate(errs[i], errs[i + 1]) for i in range(2)]
    assert all(2.8 <= r <= 3.2 for r in rates), (errs, rates)


def test_steady_zero_data_gives_zero_solution():
    p = Problem1D(
        name="trivial",
        alpha=1.5,
        left_diffusivity=1.0,
        right_diffusivity=0.0,
        source=lambda x, t=0.0: np.zeros_like(x),
        initial=None,
        left_boundary=lambda t: 0.0,
        right_boundary=lambda t: 0.0,
        steady=True,
    )
    sol = steady_solve_3wsgd(p, 16)
    np.testing.assert_array_equal(sol.values, np.zeros(17))


def test_steady_solver_rejections():
    with pytest.raises(ParameterError, match="steady=True"):
        steady_solve_3wsgd(make_example("ex1", 1.5), 8)
    p2 = Problem1D(
        name="order-two",
        alpha=2.0,
        left_diffusivity=1.0,
        right_diffusivity=0.0,
        source=lambda x, t=0.0: np.zeros_like(x),
        initial=None,
        left_boundary=lambda t: 0.0,
        right_boundary=lambda t: 0.0,
        steady=True,
    )
    with pytest.raises(ParameterError, match="strictly between"):
        steady_solve_3wsgd(p2, 8)
    with pytest.raises(ParameterError, match="N=4"):
        steady_solve_3wsgd(make_example("ex0", 1.5), 3)


# ---------------------------------------------------------------------------
# Time-dependent benchmark anchors (frozen table values)
# ---------------------------------------------------------------------------


def test_left_sided_anchor():
    sol = cn_wsgd_run(
        make_example("ex1", 1.5), SolverConfig1D(N=32, M=32, scheme=P1Q0)
    )
    assert sol.max_err_running == pytest.approx(1.25568e-05, rel=5e-4)
    assert sol.l2_err_final == pytest.approx(2.30799e-06, rel=5e-4)


def test_variable_coefficient_anchor():
    sol = cn_wsgd_run_variable(
        make_example("ex3", 1.5), SolverConfig1D(N=64, M=64, scheme=P1Q0)
    )
    assert sol.max_err_running == pytest.approx(1.10524e-05, rel=5e-4)
    assert sol.l2_err_final == pytest.approx(3.61334e-06, rel=5e-4)


def test_variable_driver_matches_generic_driver_bitwise():
    p = make_example("ex3", 1.7)
    cfg = SolverConfig1D(N=16, M=8, scheme=P1QM1)
    a = cn_wsgd_run(p, cfg)
    b = cn_wsgd_run_variable(p, cfg)
    np.testing.assert_array_equal(a.values, b.values)
    assert a.max_err_running == b.max_err_running


def test_variable_driver_rejects_constant_coefficients():
    with pytest.raises(ParameterError, match="callable diffusivities"):
        cn_wsgd_run_variable(make_example("ex1", 1.5), SolverConfig1D(N=8, M=4))


def test_running_max_dominates_final_max():
    sol = cn_wsgd_run(make_example("ex2", 1.3), SolverConfig1D(N=32, M=32))
    assert sol.max_err_running >= sol.max_err_final
    assert sol.norm_history.size == 33
    assert sol.t_final == pytest.approx(1.0)


def test_boundary_nodes_carry_boundary_data():
    p = make_example("ex1", 1.5)
    sol = cn_wsgd_run(p, SolverConfig1D(N=16, M=4))
    assert sol.values[0] == pytest.approx(p.left_boundary(1.0), abs=1e-15)
    assert sol.values[-1] == pytest.approx(p.right_boundary(1.0), abs=1e-15)
    assert sol.x[0] == 0.0 and sol.x[-1] == 1.0


def test_zero_problem_stays_zero():
    p = Problem1D(
        name="null",
        alpha=1.5,
        left_diffusivity=0.5,
        right_diffusivity=0.5,
        source=lambda x, t: np.zeros_like(x),
        initial=lambda x: np.zeros_like(x),
        left_boundary=lambda t: 0.0,
        right_boundary=lambda t: 0.0,
    )
    sol = cn_wsgd_run(p, SolverConfig1D(N=16, M=10))
    np.testing.assert_array_equal(sol.values, np.zeros(17))
    np.testing.assert_array_equal(sol.norm_history, np.zeros(11))


# ---------------------------------------------------------------------------
# Classical limit vs. independent heat oracle
# ---------------------------------------------------------------------------


def test_order_two_matches_classical_heat_stepping():
    rng = np.random.default_rng(3)
    big_n, steps = 8, 5
    xi = np.linspace(0.0, 1.0, big_n + 1)[1:-1]
    u0 = np.sin(np.pi * xi) + 0.1 * rng.standard_normal(big_n - 1)

    def source(x, t):
        return np.asarray(x) * (1.0 - np.asarray(x)) * np.exp(-t)

    def initial(x):
        return np.interp(x, xi, u0)

    p = Problem1D(
        name="heat",
        alpha=2.0,
        left_diffusivity=0.5,
        right_diffusivity=0.5,
        source=source,
        initial=initial,
        left_boundary=lambda t: 0.0,
        right_boundary=lambda t: 0.0,
    )
    cfg = SolverConfig1D(N=big_n, M=steps, scheme=P1Q0)
    sol = cn_wsgd_run(p, cfg)
    want = classical_cn_heat_run(u0, 1.0, 1.0 / big_n, cfg.tau, steps, source, xi)
    np.testing.assert_allclose(sol.values[1:-1], want, rtol=0, atol=1e-11)


def test_assemble_cn_system_theta_identities():
    p = make_example("ex2", 1.5)
    lhs_half, rhs_half = assemble_cn_system(p, SolverConfig1D(N=12, M=6, theta=0.5))
    np.testing.assert_allclose(lhs_half + rhs_half, 2.0 * np.eye(11), atol=1e-13)
    lhs_full, rhs_full = assemble_cn_system(p, SolverConfig1D(N=12, M=6, theta=1.0))
    np.testing.assert_allclose(rhs_full, np.eye(11), rtol=0, atol=0)
    np.testing.assert_allclose(
        lhs_full - np.eye(11), 2.0 * (lhs_half - np.eye(11)), atol=1e-13
    )


# ---------------------------------------------------------------------------
# Discrete stability: no growth without forcing
# ---------------------------------------------------------------------------


def _decay_problem(alpha):
    return Problem1D(
        name="decay",
        alpha=alpha,
        left_diffusivity=0.5,
        right_diffusivity=0.5,
        source=lambda x, t: np.zeros_like(x),
        initial=lambda x: np.asarray(x) * 0.0 + np.sin(3.0 * np.pi * np.asarray(x)),
        left_boundary=lambda t: 0.0,
        right_boundary=lambda t: 0.0,
    )


@pytest.mark.parametrize("scheme", [P1Q0, P1QM1])
@pytest.mark.parametrize("theta", [0.5, 1.0])
@pytest.mark.parametrize("ratio", [1.0, 100.0])
def test_zero_source_norms_never_grow(scheme, theta, ratio):
    alpha = 1.5
    big_n, steps = 16, 20
    h = 1.0 / big_n
    tau = ratio * h**alpha
    cfg = SolverConfig1D(N=big_n, M=steps, theta=theta, scheme=scheme, T=steps * tau)
    sol = cn_wsgd_run(_decay_problem(alpha), cfg)
    history = sol.norm_history
    assert history.size == steps + 1
    assert np.all(history <= history[0] * (1.0 + 1e-10))


def test_theta_outside_window_warns():
    with pytest.warns(UserWarning, match="stability window"):
        SolverConfig1D(N=8, M=4, theta=0.3)


# ---------------------------------------------------------------------------
# Observed time-dependent convergence stays in the second-order band
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "tag,alpha,scheme",
    [("ex1", 1.5, P1Q0), ("ex2", 1.5, P1QM1), ("ex3", 1.1, P1Q0)],
)
def test_l2_rates_in_band_on_finest_window(tag, alpha, scheme):
    p = make_example(tag, alpha)
    errs = []
    for n in (64, 128, 256):
        sol = cn_wsgd_run(p, SolverConfig1D(N=n, M=n, scheme=scheme))
        errs.append(sol.l2_err_final)
    rates = [convergence_rate(errs[i], errs[i + 1]) for i in range(2)]
    assert all(1.8 <= r <= 2.6 for r in rates), (errs, rates)


# ---------------------------------------------------------------------------
# Source sampling and configuration validation
# ---------------------------------------------------------------------------


def test_source_sampling_modes_differ():
    p = make_example("ex1", 1.5)
    avg = cn_wsgd_run(p, SolverConfig1D(N=16, M=16, source_sampling="average"))
    mid = cn_wsgd_run(p, SolverConfig1D(N=16, M=16, source_sampling="midpoint"))
    assert avg.max_err_running != mid.max_err_running


def test_config_validation():
    with pytest.raises(ParameterError, match="N=4"):
        SolverConfig1D(N=3, M=4)
    with pytest.raises(ParameterError, match="M=1"):
        SolverConfig1D(N=8, M=0)
    with pytest.raises(ParameterError, match="scheme"):
        SolverConfig1D(N=8, M=4, scheme="pqr")
    with pytest.raises(ParameterError, match="final time"):
        SolverConfig1D(N=8, M=4, T=0.0)
    with pytest.raises(ParameterError, match="source sampling"):
        SolverConfig1D(N=8, M=4, source_sampling="left")
    assert SolverConfig1D(N=8, M=4, T=2.0).tau == pytest.approx(0.5)
