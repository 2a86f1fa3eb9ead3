import numpy as np
import pytest

from dpsbp.burgers import burgers_gamma
from dpsbp.faults import NonFiniteStateError
from dpsbp.sbp import DP2, Grid1D, OperatorSet, assemble_pair, periodic_pair
from dpsbp.splitting import SplitSpec, lax_friedrichs_gamma, upwind_dissipation
from dpsbp.swe import _lf_speeds


def test_burgers_gamma_constant_field():
    assert burgers_gamma(np.full(10, 2.0), "entropy_stable") == 2.0


def test_burgers_gamma_is_max_abs():
    u = np.array([0.5, -3.2, 1.0])
    assert burgers_gamma(u, "linearly_stable") == 3.2
    assert burgers_gamma(u, "entropy_conserving") == 0.0


def test_swe_gamma_at_rest():
    U = np.stack([np.ones(8), np.zeros(8)])
    assert _lf_speeds(U, 9.81, 0) == pytest.approx(np.sqrt(9.81), rel=1e-15)


def test_lax_friedrichs_rejects_nonfinite():
    with pytest.raises(NonFiniteStateError):
        lax_friedrichs_gamma(np.array([1.0, np.nan]), np.abs)


def test_negative_coefficient_rejected():
    with pytest.raises(NonFiniteStateError):
        SplitSpec((-1.0,))


def test_zero_gamma_gives_zero_field():
    p = periodic_pair(DP2, Grid1D(32))
    g = np.random.default_rng(0).standard_normal(32)
    assert np.all(upwind_dissipation(p, SplitSpec((0.0,)), g) == 0.0)


def test_linear_field_on_nonperiodic_pair_is_annihilated():
    p = assemble_pair(DP2, Grid1D(32, 2.0, -1.0))
    x = p.grid.nodes
    assert np.max(np.abs(upwind_dissipation(p, SplitSpec((3.0,)), 2 * x + 1))) <= 1e-12


def test_dissipation_is_nonpositive_in_norm():
    p = periodic_pair(DP2, Grid1D(40))
    H = p.norm.weights
    rng = np.random.default_rng(3)
    for _ in range(50):
        g = rng.standard_normal(40)
        assert H @ (g * upwind_dissipation(p, SplitSpec((1.7,)), g)) <= 1e-13


def test_componentwise_coefficients():
    p = periodic_pair(DP2, Grid1D(24))
    G = np.random.default_rng(4).standard_normal((2, 24))
    out = upwind_dissipation(p, SplitSpec((0.0, 2.0)), G)
    assert np.all(out[0] == 0.0)
    np.testing.assert_allclose(out[1], p.upwind_difference @ G[1], atol=1e-12)


def test_component_count_mismatch():
    p = periodic_pair(DP2, Grid1D(24))
    with pytest.raises(ValueError):
        upwind_dissipation(p, SplitSpec((1.0,)), np.ones((2, 24)))


def _sine_dissipation(n):
    q = periodic_pair(DP2, Grid1D(n, 1.0))
    return upwind_dissipation(q, SplitSpec((1.0,)), np.sin(2 * np.pi * q.grid.nodes))


def test_smooth_dissipation_interior_order():
    a, b = _sine_dissipation(64), _sine_dissipation(128)
    assert np.log2(np.abs(a[4:-4]).max() / np.abs(b[4:-4]).max()) >= 3 - 0.1


@pytest.mark.xfail(strict=True, reason="the first-order closure rows limit the max norm to O(dx^2)")
def test_smooth_dissipation_max_norm_order():
    a, b = _sine_dissipation(64), _sine_dissipation(128)
    assert np.log2(np.abs(a).max() / np.abs(b).max()) >= 3


def test_2d_axis_dissipation():
    ops = OperatorSet((periodic_pair(DP2, Grid1D(12)), periodic_pair(DP2, Grid1D(10))))
    X, Y = ops.nodes()
    g = np.sin(2 * np.pi * Y)
    assert np.max(np.abs(upwind_dissipation(ops, SplitSpec((1.0,)), g, 0))) <= 1e-12
    assert np.max(np.abs(upwind_dissipation(ops, SplitSpec((1.0,)), g, 1))) > 0
