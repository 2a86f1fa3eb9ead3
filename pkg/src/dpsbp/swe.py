"""Nonlinear shallow water equations.

Two formulations are provided:

* flux form, state ``(h, hu[, hv])``, in skew-symmetric split form (entropy
  stable / conserving) or plain conservative form (linearly stable);
* vector-invariant form, state ``(h, u[, v])``, entropy conserving only.

Topography enters through the free surface ``eta = h + b``: the pressure term
is ``g h D(eta)`` and the first entropy variable is ``g eta - |u|^2/2``. Both
vanish under ``D`` for a lake at rest, so that state is an exact discrete
steady state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Model, check_variant, random_smooth
from .sbp import DpOperatorPair, OperatorSet
from .splitting import SplitSpec, lax_friedrichs_gamma, upwind_dissipation


@dataclass(frozen=True)
class SweParams:
    g: float = 9.81
    f: float = 0.0
    b: np.ndarray | float = 0.0

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"g must be positive, got {self.g}")

    @property
    def has_topography(self) -> bool:
        return np.any(np.asarray(self.b) != 0.0)


def _ops(pairs) -> OperatorSet:
    if isinstance(pairs, OperatorSet):
        return pairs
    return OperatorSet(pairs)


# ---------------------------------------------------------------------------
# flux form
# ---------------------------------------------------------------------------

def swe_flux_gammas(U: np.ndarray, g: float, dims: int) -> list[SplitSpec]:
    """Per-axis entropy-stable coefficients with ``c = |u| + sqrt(g h)``."""
    h = U[0]
    vel = U[1:] / h
    sq = np.sqrt(g * h)
    c = np.sqrt(np.sum(vel * vel, axis=0)) + sq
    lf = lambda a: lax_friedrichs_gamma(a, lambda z: z)  # noqa: E731  (finite check + max)
    g1 = 2.0 * lf(h / c)
    g2 = 4.0 * lf(h * (c - 0.5 * sq))
    if dims == 1:
        return [SplitSpec((g1, g2))]
    g3 = 4.0 * lf(h * np.sqrt(np.abs(vel[0] * vel[1])))
    return [SplitSpec((g1, g2, g3)), SplitSpec((g1, g3, g2))]


def swe_entropy_variables(U: np.ndarray, params: SweParams) -> np.ndarray:
    h = U[0]
    vel = U[1:] / h
    eta = h + params.b
    out = np.empty_like(U)
    out[0] = params.g * eta - 0.5 * np.sum(vel * vel, axis=0)
    out[1:] = vel
    return out


def _lf_speeds(U: np.ndarray, g: float, axis: int) -> float:
    h = U[0]
    return lax_friedrichs_gamma(U, lambda _: np.abs(U[1 + axis] / h) + np.sqrt(g * h))


def swe_flux_parts(U: np.ndarray, params: SweParams, pairs, variant: str):
    ops = _ops(pairs)
    check_variant(variant)
    g, b = params.g, params.b
    d = ops.d
    h = U[0]
    eta = h + b
    F = np.empty_like(U)
    S = np.zeros_like(U)

    if ops.dims == 1:
        m = U[1]
        u = m / h
        F[0] = -d(m)
        if variant == "linearly_stable":
            F[1] = -(d(m * u + 0.5 * g * eta * eta) - g * b * d(eta))
            gam = _lf_speeds(U, g, 0)
            S += upwind_dissipation(ops, SplitSpec((gam, gam)), np.stack([eta, m]))
        else:
            F[1] = -(0.5 * (d(m * u) + u * d(m) + m * d(u)) + g * h * d(eta))
            if variant == "entropy_stable":
                (spec,) = swe_flux_gammas(U, g, 1)
                S += upwind_dissipation(ops, spec, swe_entropy_variables(U, params))
        return F, S

    m, n = U[1], U[2]
    u, v = m / h, n / h
    f = params.f
    dx = lambda a: d(a, 0)  # noqa: E731
    dy = lambda a: d(a, 1)  # noqa: E731
    F[0] = -(dx(m) + dy(n))
    if variant == "linearly_stable":
        half_p = 0.5 * g * eta * eta
        F[1] = -(dx(m * u + half_p) - g * b * dx(eta) + dy(m * v))
        F[2] = -(dy(n * v + half_p) - g * b * dy(eta) + dx(n * u))
        cons = np.stack([eta, m, n])
        for ax in (0, 1):
            gam = _lf_speeds(U, g, ax)
            S += upwind_dissipation(ops, SplitSpec((gam,) * 3), cons, ax)
    else:
        muv = m * v
        F[1] = -(0.5 * (dx(m * u) + u * dx(m) + m * dx(u)) + g * h * dx(eta)
                 + 0.5 * (dy(muv) + u * dy(n) + n * dy(u)))
        F[2] = -(0.5 * (dy(n * v) + v * dy(n) + n * dy(v)) + g * h * dy(eta)
                 + 0.5 * (dx(muv) + v * dx(m) + m * dx(v)))
        if variant == "entropy_stable":
            G = swe_entropy_variables(U, params)
            for ax, spec in enumerate(swe_flux_gammas(U, g, 2)):
                S += upwind_dissipation(ops, spec, G, ax)
    if f != 0.0:
        F[1] += f * n
        F[2] -= f * m
    return F, S


def rhs_swe1d_flux(U, params: SweParams, pair, variant: str) -> np.ndarray:
    F, S = swe_flux_parts(np.asarray(U, dtype=float), params, pair, variant)
    return F + S


def rhs_swe2d_flux(U, params: SweParams, pairs, variant: str) -> np.ndarray:
    F, S = swe_flux_parts(np.asarray(U, dtype=float), params, pairs, variant)
    return F + S


# ---------------------------------------------------------------------------
# vector-invariant form
# ---------------------------------------------------------------------------

def rhs_swe_vecinv(U, params: SweParams, pairs, dims: int | None = None) -> np.ndarray:
    ops = _ops(pairs)
    if dims is not None and dims != ops.dims:
        raise ValueError(f"dims={dims} does not match {ops.dims}D operators")
    d = ops.d
    h = U[0]
    out = np.empty_like(U)
    if ops.dims == 1:
        u = U[1]
        G = 0.5 * u * u + params.g * (h + params.b)
        out[0] = -d(h * u)
        out[1] = -d(G)
        return out
    u, v = U[1], U[2]
    G = 0.5 * (u * u + v * v) + params.g * (h + params.b)
    omega = d(v, 0) - d(u, 1) + params.f
    out[0] = -(d(h * u, 0) + d(h * v, 1))
    out[1] = omega * v - d(G, 0)
    out[2] = -omega * u - d(G, 1)
    return out


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def absolute_vorticity(u: np.ndarray, v: np.ndarray, f: float, ops: OperatorSet) -> np.ndarray:
    return ops.d(v, 0) - ops.d(u, 1) + f


def swe_densities(U: np.ndarray, params: SweParams, ops: OperatorSet, form: str = "flux"
                  ) -> dict[str, np.ndarray]:
    h = U[0]
    if form == "flux":
        vel, mom = U[1:] / h, U[1:]
    else:
        vel, mom = U[1:], h * U[1:]
    ke = np.sum(mom * vel, axis=0)
    out = {"entropy": 0.5 * (params.g * h * h + ke) + params.g * h * params.b,
           "mass": h, "momentum_x": mom[0]}
    if ops.dims == 2:
        out["momentum_y"] = mom[1]
        w = absolute_vorticity(vel[0], vel[1], params.f, ops)
        out["absolute_vorticity"] = w
        out["enstrophy"] = w * w / h
    return out


def swe_diagnostics(U: np.ndarray, params: SweParams, pairs, form: str = "flux"
                    ) -> dict[str, float]:
    """Totals of entropy, mass, momenta and (2D) absolute vorticity and enstrophy."""
    ops = _ops(pairs)
    return {k: ops.integrate(v) for k, v in swe_densities(U, params, ops, form).items()}


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

class SweFluxModel(Model):
    name = "swe"
    positive = (0,)

    def __init__(self, ops, params: SweParams, variant: str):
        super().__init__(_ops(ops), variant)
        self.params = params
        self.components = ("h", "hu") if self.dims == 1 else ("h", "hu", "hv")

    def rhs_parts(self, U):
        return swe_flux_parts(U, self.params, self.ops, self.variant)

    def entropy_variables(self, U):
        return swe_entropy_variables(U, self.params)

    def dissipated_variables(self, U):
        if self.variant == "linearly_stable":
            out = U.copy()
            out[0] = U[0] + self.params.b
            return out
        return swe_entropy_variables(U, self.params)

    def conserved_rates(self, U, dU):
        out = {"mass": dU[0]}
        if not self.params.has_topography and self.params.f == 0.0:
            out["momentum_x"] = dU[1]
            if self.dims == 2:
                out["momentum_y"] = dU[2]
        return out

    def densities(self, U):
        return swe_densities(U, self.params, self.ops, "flux")

    def random_state(self, rng):
        h = random_smooth(self.ops, rng, 1.0, offset=2.0)
        vel = [random_smooth(self.ops, rng, 1.5) for _ in range(self.dims)]
        return np.stack([h] + [h * v for v in vel])

    def output_fields(self, U):
        out = {"h": U[0], "u": U[1] / U[0]}
        if self.dims == 2:
            out["v"] = U[2] / U[0]
            out["vorticity"] = absolute_vorticity(out["u"], out["v"], self.params.f, self.ops)
        return out


class SweVecInvModel(Model):
    name = "swe_vecinv"
    positive = (0,)

    def __init__(self, ops, params: SweParams, variant: str = "entropy_conserving"):
        if variant != "entropy_conserving":
            raise ValueError("the vector-invariant form has no upwind splitting; "
                             "only entropy_conserving is supported")
        super().__init__(_ops(ops), variant)
        self.params = params
        self.components = ("h", "u") if self.dims == 1 else ("h", "u", "v")

    def rhs_parts(self, U):
        return rhs_swe_vecinv(U, self.params, self.ops), np.zeros_like(U)

    def entropy_variables(self, U):
        h = U[0]
        vel = U[1:]
        out = np.empty_like(U)
        out[0] = 0.5 * np.sum(vel * vel, axis=0) + self.params.g * (h + self.params.b)
        out[1:] = h * vel
        return out

    def conserved_rates(self, U, dU):
        out = {"mass": dU[0]}
        if self.dims == 2:
            out["absolute_vorticity"] = self.ops.d(dU[2], 0) - self.ops.d(dU[1], 1)
        return out

    def densities(self, U):
        return swe_densities(U, self.params, self.ops, "vecinv")

    def random_state(self, rng):
        h = random_smooth(self.ops, rng, 1.0, offset=2.0)
        vel = [random_smooth(self.ops, rng, 1.5) for _ in range(self.dims)]
        return np.stack([h] + vel)

    def output_fields(self, U):
        out = {c: U[i] for i, c in enumerate(self.components)}
        if self.dims == 2:
            out["vorticity"] = absolute_vorticity(U[1], U[2], self.params.f, self.ops)
        return out


def flux_to_vecinv(U: np.ndarray) -> np.ndarray:
    out = U.copy()
    out[1:] = U[1:] / U[0]
    return out


def vecinv_to_flux(U: np.ndarray) -> np.ndarray:
    out = U.copy()
    out[1:] = U[1:] * U[0]
    return out


# ---------------------------------------------------------------------------
# manufactured solutions and initial data
# ---------------------------------------------------------------------------

def _swe_forcing(h, ht, hx, hy, u, ut, ux, uy, v, vt, vx, vy, g):
    """Sources of the conservative 2D equations for given fields and partials."""
    sh = ht + hx * u + h * ux + hy * v + h * vy
    sm = (ht * u + h * ut + hx * u * u + 2 * h * u * ux + g * h * hx
          + hy * u * v + h * uy * v + h * u * vy)
    sn = (ht * v + h * vt + hx * u * v + h * ux * v + h * u * vx
          + hy * v * v + 2 * h * v * vy + g * h * hy)
    return sh, sm, sn


def swe1d_mms(x: np.ndarray, t: float, g: float = 9.81):
    """``h = 2 + 0.3 sin(2 pi (x - t))``, ``u = 2 + 0.3 sin(2 pi (x + t))``.

    Returns ``(exact, forcing)`` for the conservative state ``(h, hu)``.
    """
    x = np.asarray(x, dtype=float)
    a, c = 2 * np.pi * (x - t), 2 * np.pi * (x + t)
    k = 0.6 * np.pi
    h, hx = 2 + 0.3 * np.sin(a), k * np.cos(a)
    u, ux = 2 + 0.3 * np.sin(c), k * np.cos(c)
    z = np.zeros_like(x)
    sh, sm, _ = _swe_forcing(h, -hx, hx, z, u, ux, ux, z, z, z, z, z, g)
    return np.stack([h, h * u]), np.stack([sh, sm])


def _swe2d_fields(sa, ca, sb, cb, sc, cc, sd, cd, g):
    k = 0.4 * np.pi
    h = 2 + 0.2 * sa * sb
    hx, hy = k * ca * sb, k * sa * cb
    ht = -(hx + hy)
    u = 2 + 0.2 * sc * sd
    ux, uy = k * cc * sd, k * sc * cd
    ut = ux + uy
    sh, sm, sn = _swe_forcing(h, ht, hx, hy, u, ut, ux, uy, u, ut, ux, uy, g)
    return np.stack([h, h * u, h * u]), np.stack([sh, sm, sn])


def swe2d_mms(x: np.ndarray, y: np.ndarray, t: float, g: float = 9.81):
    """``h = 2 + 0.2 sin(2pi(x-t)) sin(2pi(y-t))``, ``u = v = 2 + 0.2 sin(2pi(x+t)) sin(2pi(y+t))``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a, b = 2 * np.pi * (x - t), 2 * np.pi * (y - t)
    c, d = 2 * np.pi * (x + t), 2 * np.pi * (y + t)
    return _swe2d_fields(np.sin(a), np.cos(a), np.sin(b), np.cos(b),
                         np.sin(c), np.cos(c), np.sin(d), np.cos(d), g)


def swe2d_mms_tensor(xv: np.ndarray, yv: np.ndarray, t: float, g: float = 9.81):
    """:func:`swe2d_mms` on the flat x-major tensor grid of axis vectors ``xv``, ``yv``.

    Trigonometric factors are evaluated per axis and broadcast, which is much
    cheaper than evaluating them at every node.
    """
    xv = np.asarray(xv, dtype=float)[:, None]
    yv = np.asarray(yv, dtype=float)[None, :]
    a, b = 2 * np.pi * (xv - t), 2 * np.pi * (yv - t)
    c, d = 2 * np.pi * (xv + t), 2 * np.pi * (yv + t)
    U, S = _swe2d_fields(np.sin(a), np.cos(a), np.sin(b), np.cos(b),
                         np.sin(c), np.cos(c), np.sin(d), np.cos(d), g)
    n = xv.size * yv.size
    return U.reshape(3, n), S.reshape(3, n)


def forcing_to_vecinv(U: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Map conservative sources to ``(h, u[, v])`` sources: ``u' = (m' - u h')/h``."""
    out = S.copy()
    h = U[0]
    out[1:] = (S[1:] - (U[1:] / h) * S[0]) / h
    return out


def lake_bump(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.where((x > 8) & (x < 12), 0.2 - 0.05 * (x - 10) ** 2, 0.0)


def lake_at_rest(x: np.ndarray):
    """Immersed bump on ``[0, 25]``: returns ``(U0, b)`` with ``h + b = 0.5``."""
    b = lake_bump(x)
    h = 0.5 - b
    return np.stack([h, np.zeros_like(h)]), b


MERGING = dict(f=5.0, g=5.0, H=8.0)


def merging_vortices(x: np.ndarray, y: np.ndarray, f=5.0, g=5.0, H=8.0) -> np.ndarray:
    """Two Gaussian vortices in geostrophic balance on ``[0, 2 pi]^2``; returns ``(h, hu, hv)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    centres = ((3.05 - 0.45) * np.pi / 3, (3.05 + 0.45) * np.pi / 3)
    psi = [np.exp(-2.5 * ((x - xc) ** 2 + (y - np.pi) ** 2)) for xc in centres]
    total = psi[0] + psi[1]
    h = H + (f / g) * total
    u = 5.0 * (y - np.pi) * total                      # -d psi / dy
    v = -5.0 * sum((x - xc) * p for xc, p in zip(centres, psi))  # d psi / dx
    return np.stack([h, h * u, h * v])


SHEAR = dict(u0=50.0, f=7.292e-5, g=9.80616, H=1.0e4, k=1.0e3, L=4.0e7)


def _gd(z):
    """Gudermannian: an antiderivative of sech."""
    return 2.0 * np.arctan(np.tanh(0.5 * z))


def barotropic_shear(x: np.ndarray, y: np.ndarray, u0=50.0, f=7.292e-5, g=9.80616,
                     H=1.0e4, k=1.0e3, Lx=4.0e7, Ly=4.0e7) -> np.ndarray:
    """Two sech jets with Gaussian height bumps; returns ``(h, hu, hv)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = 1e-6
    yp, ym = 0.25 * Ly, 0.75 * Ly
    u = u0 * (1 / np.cosh(a * (y - yp)) - 1 / np.cosh(a * (y - ym)))
    # int_0^y u ds in closed form
    integral = (u0 / a) * (_gd(a * (y - yp)) - _gd(-a * yp) - _gd(a * (y - ym)) + _gd(-a * ym))
    h0bar = 0.01 * H
    bumps = [(0.85 * Lx, ym), (0.15 * Lx, yp)]
    ht = sum(h0bar * np.exp(-k * ((x - xi) ** 2 / Lx ** 2 + (y - yi) ** 2 / Ly ** 2))
             for xi, yi in bumps)
    h = H - (f / g) * integral + ht
    return np.stack([h, h * u, np.zeros_like(h)])
