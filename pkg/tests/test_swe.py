import numpy as np
import pytest
import sympy as sy

from dpsbp.config import ConfigError, parse_config
from dpsbp.diagnostics import probe_semidiscrete
from dpsbp.model import VARIANTS
from dpsbp.sbp import DP2, Grid1D, OperatorSet, periodic_operators, periodic_pair
from dpsbp.scenarios import build_problem
from dpsbp.swe import (SHEAR, SweFluxModel, SweParams, SweVecInvModel, flux_to_vecinv,
                       lake_at_rest, lake_bump, merging_vortices, rhs_swe1d_flux,
                       rhs_swe2d_flux, rhs_swe_vecinv, swe1d_mms, swe2d_mms,
                       swe2d_mms_tensor, swe_diagnostics)

G = 9.81


# --- manufactured solutions, checked against symbolic differentiation -------

def _sym_sources_2d():
    x, y, t, g = sy.symbols("x y t g")
    h = 2 + sy.Rational(1, 5) * sy.sin(2 * sy.pi * (x - t)) * sy.sin(2 * sy.pi * (y - t))
    u = 2 + sy.Rational(1, 5) * sy.sin(2 * sy.pi * (x + t)) * sy.sin(2 * sy.pi * (y + t))
    v = u
    sh = sy.diff(h, t) + sy.diff(h * u, x) + sy.diff(h * v, y)
    sm = sy.diff(h * u, t) + sy.diff(h * u * u + g * h * h / 2, x) + sy.diff(h * u * v, y)
    sn = sy.diff(h * v, t) + sy.diff(h * u * v, x) + sy.diff(h * v * v + g * h * h / 2, y)
    return sy.lambdify((x, y, t, g), [sh, sm, sn], "numpy")


def _sym_sources_1d():
    x, t, g = sy.symbols("x t g")
    h = 2 + sy.Rational(3, 10) * sy.sin(2 * sy.pi * (x - t))
    u = 2 + sy.Rational(3, 10) * sy.sin(2 * sy.pi * (x + t))
    sh = sy.diff(h, t) + sy.diff(h * u, x)
    sm = sy.diff(h * u, t) + sy.diff(h * u * u + g * h * h / 2, x)
    return sy.lambdify((x, t, g), [sh, sm], "numpy")


def test_mms_1d_forcing_matches_symbolic():
    x = np.linspace(-1, 1, 37)
    f = _sym_sources_1d()
    for t in (0.0, 0.3, 1.7):
        _, S = swe1d_mms(x, t, G)
        np.testing.assert_allclose(S, np.array(f(x, t, G)), rtol=0, atol=1e-12)


def test_mms_2d_forcing_matches_symbolic():
    rng = np.random.default_rng(0)
    x, y = rng.uniform(-1, 1, (2, 50))
    f = _sym_sources_2d()
    for t in (0.0, 0.45):
        _, S = swe2d_mms(x, y, t, G)
        np.testing.assert_allclose(S, np.array(f(x, y, t, G)), rtol=0, atol=1e-11)


def test_tensor_mms_matches_pointwise():
    xv, yv = np.linspace(-1, 1, 7), np.linspace(-1, 1, 5)
    X, Y = np.meshgrid(xv, yv, indexing="ij")
    a, b = swe2d_mms_tensor(xv, yv, 0.3)
    c, d = swe2d_mms(X.ravel(), Y.ravel(), 0.3)
    np.testing.assert_allclose(a, c, rtol=0, atol=1e-14)
    np.testing.assert_allclose(b, d, rtol=0, atol=1e-13)


# --- 1D flux form -----------------------------------------------------------

@pytest.mark.parametrize("v", VARIANTS)
def test_lake_at_rest_rate_is_zero(v):
    ops = periodic_operators(DP2, 64, 25.0, 0.0)
    U0, b = lake_at_rest(ops.nodes()[0])
    r = rhs_swe1d_flux(U0, SweParams(g=G, b=b), ops, v)
    assert np.max(np.abs(r)) <= 1e-13


def test_lake_values():
    assert lake_bump(np.array([10.0]))[0] == pytest.approx(0.2)
    U0, b = lake_at_rest(np.array([10.0, 2.0]))
    assert U0[0][0] == pytest.approx(0.3) and U0[0][1] == 0.5


@pytest.mark.parametrize("v", VARIANTS)
def test_uniform_flow_has_zero_rate(v):
    p = periodic_pair(DP2, Grid1D(32))
    U = np.stack([np.full(32, 2.0), np.full(32, 2.0 * 0.7)])
    assert np.max(np.abs(rhs_swe1d_flux(U, SweParams(), p, v))) <= 1e-12


@pytest.mark.parametrize("v", VARIANTS)
def test_flux_1d_probe(v):
    m = SweFluxModel(periodic_operators(DP2, 48, 2.0, -1.0), SweParams(), v)
    rep = probe_semidiscrete(m, 30, 1)
    assert all(x <= 1e-11 for x in rep.conservation.values())
    assert rep.dissipation_max <= 0.0
    if v == "entropy_conserving":
        assert rep.dissipation_max == rep.dissipation_min == 0.0
    if v != "linearly_stable":
        assert rep.entropy_residual <= 1e-11


# --- 2D flux form -----------------------------------------------------------

def _ops2(n=(16, 12)):
    return periodic_operators(DP2, n, (2 * np.pi, 2 * np.pi), 0.0)


@pytest.mark.parametrize("v", VARIANTS)
def test_constant_state_2d_only_coriolis(v):
    ops = _ops2()
    one = np.ones(ops.size)
    U = np.stack([3 * one, 3 * 0.5 * one, 3 * -0.2 * one])
    assert np.max(np.abs(rhs_swe2d_flux(U, SweParams(), ops, v))) <= 1e-12
    r = rhs_swe2d_flux(U, SweParams(f=2.0), ops, v)
    np.testing.assert_allclose(r[1], 2.0 * U[2], atol=1e-12)
    np.testing.assert_allclose(r[2], -2.0 * U[1], atol=1e-12)
    assert np.max(np.abs(r[0])) <= 1e-12


def test_coriolis_does_no_work():
    m = SweFluxModel(_ops2(), SweParams(g=5.0, f=5.0), "entropy_conserving")
    rep = probe_semidiscrete(m, 20, 5)
    assert rep.entropy_residual <= 1e-11
    assert rep.conservation["mass"] <= 1e-11


@pytest.mark.parametrize("v", VARIANTS)
def test_flux_2d_probe(v):
    m = SweFluxModel(_ops2(), SweParams(g=5.0, f=0.0), v)
    rep = probe_semidiscrete(m, 20, 2)
    assert all(x <= 1e-11 for x in rep.conservation.values())
    assert "momentum_y" in rep.conservation
    assert rep.dissipation_max <= 0.0
    if v != "linearly_stable":
        assert rep.entropy_residual <= 1e-11


def test_entropy_stable_2d_dissipates_on_random_states():
    m = SweFluxModel(_ops2(), SweParams(g=5.0), "entropy_stable")
    rep = probe_semidiscrete(m, 10, 3)
    assert rep.dissipation_max < 0.0


# --- vector-invariant form --------------------------------------------------

def test_vecinv_rejects_dissipative_variants():
    with pytest.raises(ValueError):
        SweVecInvModel(_ops2(), SweParams(), "entropy_stable")
    with pytest.raises(ConfigError):
        parse_config("scenario = merging-vortices\nvariant = entropy_stable\nparams.form = vecinv\n")
    with pytest.raises(ValueError):
        build_problem("lake-at-rest", 32, "linearly_stable", params={"form": "vecinv"})


def test_vecinv_lake_at_rest():
    ops = periodic_operators(DP2, 64, 25.0, 0.0)
    U0, b = lake_at_rest(ops.nodes()[0])
    r = rhs_swe_vecinv(flux_to_vecinv(U0), SweParams(b=b), ops)
    assert np.max(np.abs(r)) <= 1e-13


def test_vecinv_constant_flow_no_rotation():
    ops = _ops2()
    one = np.ones(ops.size)
    U = np.stack([2 * one, 0.3 * one, -0.4 * one])
    assert np.max(np.abs(rhs_swe_vecinv(U, SweParams(), ops))) <= 1e-12


def test_vecinv_probe_2d():
    m = SweVecInvModel(_ops2(), SweParams(g=5.0, f=5.0))
    rep = probe_semidiscrete(m, 20, 4)
    assert rep.entropy_residual <= 1e-11
    assert all(x <= 1e-11 for x in rep.conservation.values())


def test_vecinv_dims_mismatch():
    with pytest.raises(ValueError):
        rhs_swe_vecinv(np.ones((3, 16 * 12)), SweParams(), _ops2(), dims=1)


# --- diagnostics and initial data ------------------------------------------

def test_diagnostics_at_rest_unit_square():
    ops = periodic_operators(DP2, (16, 16), 1.0, 0.0)
    one = np.ones(ops.size)
    d = swe_diagnostics(np.stack([one, 0 * one, 0 * one]), SweParams(g=G), ops)
    assert d["entropy"] == pytest.approx(G / 2, rel=1e-12)
    assert d["mass"] == pytest.approx(1.0, rel=1e-12)
    assert d["absolute_vorticity"] == 0.0 and d["enstrophy"] == 0.0


def test_diagnostics_constant_vorticity():
    ops = periodic_operators(DP2, (16, 16), 1.0, 0.0)
    one = np.ones(ops.size)
    d = swe_diagnostics(np.stack([2 * one, 0 * one, 0 * one]), SweParams(f=3.0), ops)
    assert d["absolute_vorticity"] == pytest.approx(3.0, rel=1e-12)
    assert d["enstrophy"] == pytest.approx(9.0 / 2, rel=1e-12)


def _reference_energy(N=4096):
    xs = np.linspace(0, 2 * np.pi, N, endpoint=False)
    dx = xs[1] - xs[0]
    total = 0.0
    for i in range(0, N, 256):
        X, Y = np.meshgrid(xs[i:i + 256], xs, indexing="ij")
        h, m, n = merging_vortices(X, Y)
        total += np.sum(0.5 * (5.0 * h * h + (m * m + n * n) / h)) * dx * dx
    return total


def test_merging_vortices_energy_against_reference_quadrature():
    p = build_problem("merging-vortices", 64, "entropy_stable")
    e = p.model.diagnostics(p.initial)["entropy"]
    assert e == pytest.approx(_reference_energy(), rel=1e-8)


def test_merging_vortices_centre_height():
    h = merging_vortices(np.array([np.pi]), np.array([np.pi]))[0][0]
    xc = ((3.05 - 0.45) * np.pi / 3, (3.05 + 0.45) * np.pi / 3)
    psi = sum(np.exp(-2.5 * (np.pi - c) ** 2) for c in xc)
    assert h == pytest.approx(8 + psi, rel=1e-15)


def test_shear_parameters():
    assert SHEAR["u0"] == 50.0 and SHEAR["H"] == 1.0e4
    assert SHEAR["f"] == 7.292e-5 and SHEAR["k"] == 1.0e3
