import numpy as np
import pytest

from dpsbp.burgers import (BurgersModel, burgers_entropy_total, burgers_mms, gaussian_pulse,
                           rhs_burgers)
from dpsbp.model import VARIANTS
from dpsbp.sbp import DP2, Grid1D, inner_product, periodic_pair


def pair(n, L=2.0, x0=-1.0):
    return periodic_pair(DP2, Grid1D(n, L, x0))


@pytest.mark.parametrize("v", VARIANTS)
def test_constant_state_has_zero_rate(v):
    assert np.max(np.abs(rhs_burgers(np.full(32, 1.7), pair(32), v))) <= 1e-13


@pytest.mark.parametrize("v", VARIANTS)
def test_mass_conserved_semidiscretely(v):
    p = pair(48)
    rng = np.random.default_rng(7)
    for _ in range(20):
        u = rng.standard_normal(48) + 1
        r = rhs_burgers(u, p, v)
        assert abs(inner_product(p.norm, np.ones(48), r)) <= 1e-12 * np.sum(
            p.norm.weights * np.abs(r))


@pytest.mark.parametrize("v", ["entropy_stable", "entropy_conserving"])
def test_entropy_rate_equals_dissipation(v):
    p = pair(48)
    H = p.norm.weights
    rng = np.random.default_rng(8)
    for _ in range(20):
        u = rng.standard_normal(48)
        rate = H @ (u * rhs_burgers(u, p, v))
        gamma = 0.0 if v == "entropy_conserving" else np.max(np.abs(u))
        expect = 0.5 * gamma * H @ (u * (p.upwind_difference @ u))
        assert rate == pytest.approx(expect, abs=1e-12 * (H @ u ** 2) / p.grid.dx)
        assert expect <= 0 if gamma else expect == 0


def test_entropy_total_examples():
    p = pair(64, 3.0, 0.0)
    assert burgers_entropy_total(np.zeros(64), p.norm) == 0.0
    assert burgers_entropy_total(np.ones(64), p.norm) == pytest.approx(1.5, rel=1e-12)
    q = pair(256, 1.0, 0.0)
    u = np.sin(2 * np.pi * q.grid.nodes)
    assert burgers_entropy_total(u, q.norm) == pytest.approx(0.25, abs=1e-6)


def test_mms_origin_value():
    u, _ = burgers_mms(np.array([0.0]), 0.0)
    assert u[0] == 2.0


def test_mms_forcing_matches_time_derivative():
    # forcing = u_t + u u_x, with u_t from central differences in time
    x = np.linspace(-1, 1, 41)
    t, h = 0.37, 1e-5
    u, s = burgers_mms(x, t)
    ut = (burgers_mms(x, t + h)[0] - burgers_mms(x, t - h)[0]) / (2 * h)
    ux = 0.6 * np.pi * np.cos(2 * np.pi * (x - t))
    np.testing.assert_allclose(s, ut + u * ux, atol=1e-8)


def _semidiscrete_residual(n):
    p = pair(n)
    x, t, h = p.grid.nodes, 0.3, 1e-6
    u, s = burgers_mms(x, t)
    ut = (burgers_mms(x, t + h)[0] - burgers_mms(x, t - h)[0]) / (2 * h)
    r = rhs_burgers(u, p, "entropy_conserving") + s - ut
    return np.sqrt(p.norm.weights @ r ** 2)


def test_semidiscrete_residual_converges():
    e = [_semidiscrete_residual(n) for n in (64, 128, 256)]
    # interior order 2 with first-order closure rows: H-norm rate 1.5
    assert np.log2(e[1] / e[2]) >= 1.4


def test_gaussian_pulse_peak():
    assert gaussian_pulse(np.array([0.25]))[0] == 1.0


def test_model_probe_helpers():
    m = BurgersModel(pair(32), "entropy_stable")
    U = m.random_state(np.random.default_rng(0))
    assert U.shape == (1, 32)
    assert set(m.diagnostics(U)) == {"entropy", "mass"}
