"""Named experiments: domain, initial data, forcing, exact solution, step rule.

Every builder takes the resolution ``n`` (points per axis), the scheme
variant, an operator id and a dict of scenario parameters, and returns a
:class:`~dpsbp.timestepping.Problem`.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import euler as eu
from . import swe
from .burgers import BurgersModel, burgers_mms, gaussian_pulse
from .sbp import periodic_operators
from .timestepping import Problem


def _param(params: dict, key: str, default):
    v = params.get(key, default)
    return type(default)(v) if default is not None and not isinstance(v, type(default)) else v


def _form(params: dict) -> str:
    form = str(params.get("form", "flux"))
    if form not in ("flux", "vecinv"):
        raise ValueError(f"unknown SWE form {form!r}; expected 'flux' or 'vecinv'")
    return form


def _swe_model(ops, p: swe.SweParams, variant: str, form: str):
    if form == "vecinv":
        return swe.SweVecInvModel(ops, p, variant)
    return swe.SweFluxModel(ops, p, variant)


# ---------------------------------------------------------------------------
# Burgers
# ---------------------------------------------------------------------------

def burgers_mms_problem(n, variant, operator="dp2", params=None):
    params = params or {}
    ops = periodic_operators(operator, n, 2.0, -1.0)
    x = ops.nodes()[0]
    model = BurgersModel(ops, variant)
    return Problem(model, burgers_mms(x, 0.0)[0][None], t_final=2.0, cfl=0.1,
                   name="burgers-mms",
                   forcing=lambda t: burgers_mms(x, t)[1][None],
                   exact=lambda t: burgers_mms(x, t)[0][None])


def burgers_gaussian_problem(n, variant, operator="dp2", params=None):
    ops = periodic_operators(operator, n, 1.0, 0.0)
    x = ops.nodes()[0]
    return Problem(BurgersModel(ops, variant), gaussian_pulse(x)[None], t_final=1.0, cfl=0.1,
                   name="burgers-gaussian", snapshot_times=(0.0, 0.25, 0.5, 1.0))


# ---------------------------------------------------------------------------
# shallow water
# ---------------------------------------------------------------------------

def swe1d_mms_problem(n, variant, operator="dp2", params=None):
    params = params or {}
    g = _param(params, "g", 9.81)
    form = _form(params)
    ops = periodic_operators(operator, n, 2.0, -1.0)
    x = ops.nodes()[0]
    model = _swe_model(ops, swe.SweParams(g=g), variant, form)

    def exact(t):
        U = swe.swe1d_mms(x, t, g)[0]
        return U if form == "flux" else swe.flux_to_vecinv(U)

    def forcing(t):
        U, S = swe.swe1d_mms(x, t, g)
        return S if form == "flux" else swe.forcing_to_vecinv(U, S)

    return Problem(model, exact(0.0), t_final=2.0, cfl=0.05, name="swe1d-mms",
                   forcing=forcing, exact=exact)


def swe2d_mms_problem(n, variant, operator="dp2", params=None):
    params = params or {}
    g = _param(params, "g", 9.81)
    form = _form(params)
    ops = periodic_operators(operator, (n, n), 2.0, -1.0)
    xv, yv = (p.grid.nodes for p in ops.pairs)
    model = _swe_model(ops, swe.SweParams(g=g), variant, form)

    def exact(t):
        U = swe.swe2d_mms_tensor(xv, yv, t, g)[0]
        return U if form == "flux" else swe.flux_to_vecinv(U)

    def forcing(t):
        U, S = swe.swe2d_mms_tensor(xv, yv, t, g)
        return S if form == "flux" else swe.forcing_to_vecinv(U, S)

    return Problem(model, exact(0.0), t_final=2.0, cfl=0.025, name="swe2d-mms",
                   forcing=forcing, exact=exact)


def lake_at_rest_problem(n, variant, operator="dp2", params=None):
    params = params or {}
    g = _param(params, "g", 9.81)
    form = _form(params)
    ops = periodic_operators(operator, n, 25.0, 0.0)
    x = ops.nodes()[0]
    U0, b = swe.lake_at_rest(x)
    model = _swe_model(ops, swe.SweParams(g=g, b=b), variant, form)
    if form == "vecinv":
        U0 = swe.flux_to_vecinv(U0)
    return Problem(model, U0, t_final=20.0, cfl=0.1, name="lake-at-rest",
                   exact=lambda t: U0)


def merging_vortices_problem(n, variant, operator="dp2", params=None):
    params = params or {}
    f = _param(params, "f", swe.MERGING["f"])
    g = _param(params, "g", swe.MERGING["g"])
    H = _param(params, "H", swe.MERGING["H"])
    form = _form(params)
    ops = periodic_operators(operator, (n, n), 2 * np.pi, 0.0)
    X, Y = ops.nodes()
    U0 = swe.merging_vortices(X, Y, f=f, g=g, H=H)
    if form == "vecinv":
        U0 = swe.flux_to_vecinv(U0)
    model = _swe_model(ops, swe.SweParams(g=g, f=f), variant, form)
    return Problem(model, U0, t_final=20.0, cfl=0.025, name="merging-vortices",
                   snapshot_times=(0.0, 5.0, 10.0, 15.0, 20.0))


def barotropic_shear_problem(n, variant, operator="dp2", params=None):
    params = params or {}
    c = dict(swe.SHEAR)
    for k in c:
        c[k] = _param(params, k, c[k])
    L = c.pop("L")
    ops = periodic_operators(operator, (n, n), L, 0.0)
    X, Y = ops.nodes()
    U0 = swe.barotropic_shear(X, Y, Lx=L, Ly=L, **c)
    model = swe.SweFluxModel(ops, swe.SweParams(g=c["g"], f=c["f"]), variant)
    # dt = 0.05 dx with dx measured in kilometres
    return Problem(model, U0, t_final=5.0e6, cfl=0.05, name="barotropic-shear",
                   speed_scale=_param(params, "speed_scale", 1000.0),
                   snapshot_times=tuple(np.linspace(0, 5.0e6, 6)))


# ---------------------------------------------------------------------------
# Euler
# ---------------------------------------------------------------------------

def _euler_problem(model, prim0, **kw):
    return Problem(model, model.from_primitive(*prim0), **kw)


def euler1d_mms_problem(n, variant, operator="dp2", params=None):
    params = params or {}
    gamma = _param(params, "gamma_gas", 1.4)
    ops = periodic_operators(operator, n, 2.0, -1.0)
    x = ops.nodes()[0]
    model = eu.EulerModel(ops, eu.EulerParams(gamma), variant)

    def exact(t):
        rho, u, p = eu.euler1d_mms(x, t, gamma)[0]
        return model.from_primitive(rho, u, None, p)

    def forcing(t):
        (rho, u, p), S = eu.euler1d_mms(x, t, gamma)
        if not model.skew:
            return S
        return eu.conserved_forcing_to_skew(model.from_primitive(rho, u, None, p), S, gamma)

    return Problem(model, exact(0.0), t_final=2.0, cfl=0.1, name="euler1d-mms",
                   forcing=forcing, exact=exact)


def isentropic_vortex_problem(n, variant, operator="dp2", params=None):
    params = params or {}
    vp = dict(eu.VORTEX)
    for k in vp:
        vp[k] = _param(params, k, vp[k])
    hw = vp["half_width"]
    ops = periodic_operators(operator, (n, n), 2 * hw, -hw)
    X, Y = ops.nodes()
    model = eu.EulerModel(ops, eu.EulerParams(vp["gamma"]), variant)

    def exact(t):
        return model.from_primitive(*eu.isentropic_vortex(X, Y, t, **vp))

    return Problem(model, exact(0.0), t_final=16.0, cfl=0.1, name="isentropic-vortex",
                   exact=exact, snapshot_times=(0.0, 4.0, 8.0, 12.0, 16.0))


def khi_problem(n, variant, operator="dp2", params=None):
    params = params or {}
    gamma = _param(params, "gamma_gas", 1.4)
    ops = periodic_operators(operator, (n, n), 2.0, -1.0)
    X, Y = ops.nodes()
    model = eu.EulerModel(ops, eu.EulerParams(gamma), variant)
    return _euler_problem(model, eu.kelvin_helmholtz(X, Y), t_final=10.0, cfl=0.05,
                          name="khi", snapshot_times=(3.9, 4.8, 5.5, 10.0))


SCENARIOS: dict[str, Callable[..., Problem]] = {
    "burgers-mms": burgers_mms_problem,
    "burgers-gaussian": burgers_gaussian_problem,
    "swe1d-mms": swe1d_mms_problem,
    "swe2d-mms": swe2d_mms_problem,
    "lake-at-rest": lake_at_rest_problem,
    "merging-vortices": merging_vortices_problem,
    "barotropic-shear": barotropic_shear_problem,
    "euler1d-mms": euler1d_mms_problem,
    "isentropic-vortex": isentropic_vortex_problem,
    "khi": khi_problem,
}

DEFAULT_N = {
    "burgers-mms": 64, "burgers-gaussian": 256, "swe1d-mms": 64, "swe2d-mms": 32,
    "lake-at-rest": 64, "merging-vortices": 128, "barotropic-shear": 256,
    "euler1d-mms": 64, "isentropic-vortex": 64, "khi": 64,
}


def build_problem(name: str, n: int | None = None, variant: str = "entropy_stable",
                  operator: str = "dp2", params: dict | None = None,
                  cfl: float | None = None, t_final: float | None = None) -> Problem:
    try:
        builder = SCENARIOS[name]
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; known: {', '.join(sorted(SCENARIOS))}"
                         ) from None
    prob = builder(n or DEFAULT_N[name], variant, operator, params or {})
    if cfl is not None:
        prob.cfl = float(cfl)
    if t_final is not None:
        prob.t_final = float(t_final)
    return prob
