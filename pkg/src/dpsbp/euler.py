"""Compressible Euler equations in square-root variables.

The entropy-stable and entropy-conserving schemes evolve

    U = (r, m, w, q) = (sqrt(rho), sqrt(rho) u, sqrt(rho) v, sqrt(p))

in a skew-symmetric form whose entropy is

    e = r^2 + m^2/2 + w^2/2 + q^2/(gamma - 1)

(mass plus total energy). The linearly stable scheme evolves the conservative
variables ``(rho, rho u, rho v, E)``. In 1D the ``w`` / ``rho v`` component and
every y-term are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .faults import PositivityFault
from .model import Model, random_smooth
from .sbp import OperatorSet
from .splitting import SplitSpec, ensure_finite, lax_friedrichs_gamma, upwind_dissipation


@dataclass(frozen=True)
class EulerParams:
    gamma_gas: float = 1.4

    def __post_init__(self):
        if not self.gamma_gas > 1:
            raise ValueError(f"gamma_gas must exceed 1, got {self.gamma_gas}")


def _ops(pairs) -> OperatorSet:
    return pairs if isinstance(pairs, OperatorSet) else OperatorSet(pairs)


# ---------------------------------------------------------------------------
# variable maps
# ---------------------------------------------------------------------------

def primitive_to_skew(rho, u, v, p) -> np.ndarray:
    """``(rho, u, v, p) -> (r, m, w, q)``; pass ``v=None`` for 1D."""
    rho = np.asarray(rho, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(rho <= 0) or np.any(p <= 0):
        raise PositivityFault("density and pressure must be positive")
    r = np.sqrt(rho)
    comps = [r, r * u] + ([] if v is None else [r * v]) + [np.sqrt(p)]
    return np.stack(np.broadcast_arrays(*comps)).astype(float)


def skew_to_primitive(U: np.ndarray):
    """Inverse of :func:`primitive_to_skew`; ``v`` is ``None`` in 1D."""
    r, q = U[0], U[-1]
    if np.any(r <= 0) or np.any(q <= 0):
        raise PositivityFault("sqrt(rho) and sqrt(p) must be positive")
    v = U[2] / r if U.shape[0] == 4 else None
    return r * r, U[1] / r, v, q * q


def primitive_to_conserved(rho, u, v, p, gamma: float) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    ke = 0.5 * rho * (u * u + (0 if v is None else v * v))
    E = p / (gamma - 1) + ke
    comps = [rho, rho * u] + ([] if v is None else [rho * v]) + [E]
    return np.stack(np.broadcast_arrays(*comps)).astype(float)


def conserved_to_primitive(U: np.ndarray, gamma: float):
    rho = U[0]
    u = U[1] / rho
    v = U[2] / rho if U.shape[0] == 4 else None
    ke = 0.5 * (U[1] * u + (0 if v is None else U[2] * v))
    p = (gamma - 1) * (U[-1] - ke)
    return rho, u, v, p


# ---------------------------------------------------------------------------
# right-hand sides
# ---------------------------------------------------------------------------

def euler_skew_gammas(U: np.ndarray, gamma: float, axis: int) -> SplitSpec:
    r, q = U[0], U[-1]
    vel = U[1 + axis] / r
    a = np.abs(vel) + np.sqrt(gamma) * q / r
    lf = lambda z: lax_friedrichs_gamma(z, lambda s: s)  # noqa: E731
    return SplitSpec((0.25 * lf(r * a), 0.5 * lf(r * r * a), 0.5 * lf(a)))


def euler_skew_dissipation(U: np.ndarray, ops: OperatorSet, gamma: float, axis: int,
                           spec: SplitSpec | None = None) -> np.ndarray:
    """``S_eta`` with ``Dcal = (D+ - D-)/2`` (negative semi-definite in ``H``).

    The pressure component acts on ``sqrt(p)``, which makes its entropy
    contribution ``2 g3/(gamma-1) <q, Dcal q>_H <= 0``.
    """
    if spec is None:
        spec = euler_skew_gammas(U, gamma, axis)
    g1, g2, g3 = spec.gammas
    out = np.zeros_like(U)
    if spec.is_zero:
        return out
    r = U[0]
    nvel = U.shape[0] - 2
    vel = U[1:1 + nvel] / r
    # one batched application: r, momenta, velocities, q
    stack = np.concatenate([U[:1 + nvel], vel, U[-1:]])
    Dc = 0.5 * ops.upwind(stack, axis)
    out[0] = g1 / r * Dc[0]
    for k in range(nvel):
        out[1 + k] = g1 / r * Dc[1 + k] + (g2 / r - g1) * Dc[1 + nvel + k]
    out[-1] = g3 * Dc[-1]
    return out


def euler_skew_transport(U: np.ndarray, ops: OperatorSet, gamma: float) -> np.ndarray:
    d = ops.d
    r, q = U[0], U[-1]
    dims = ops.dims
    mom = U[1:1 + dims]
    vel = mom / r
    out = np.zeros_like(U)
    for ax in range(dims):
        a = vel[ax]
        out[0] += a * d(r, ax) + d(mom[ax], ax)
        for k in range(dims):
            out[1 + k] += a * d(mom[k], ax) + d(a * mom[k], ax)
        out[1 + ax] += 4.0 * (q / r) * d(q, ax)
        out[-1] += gamma * d(a * q, ax) + (2.0 - gamma) * a * d(q, ax)
    return -0.5 * out


def euler_conservative_parts(U: np.ndarray, ops: OperatorSet, gamma: float, dissipate: bool):
    rho, u, v, p = conserved_to_primitive(U, gamma)
    E = U[-1]
    dims = ops.dims
    vel = [u] if dims == 1 else [u, v]
    F = np.zeros_like(U)
    S = np.zeros_like(U)
    c = np.sqrt(gamma * p / rho)
    for ax in range(dims):
        a = vel[ax]
        flux = np.empty_like(U)
        flux[0] = U[1 + ax]
        for k in range(dims):
            flux[1 + k] = U[1 + k] * a
        flux[1 + ax] += p
        flux[-1] = (E + p) * a
        F -= ops.d(flux, ax)
        if dissipate:
            gam = lax_friedrichs_gamma(U, lambda _: np.abs(a) + c)
            S += upwind_dissipation(ops, SplitSpec((gam,) * U.shape[0]), U, ax)
    return F, S


def euler_parts(U: np.ndarray, params: EulerParams, pairs, variant: str):
    ops = _ops(pairs)
    gamma = params.gamma_gas
    if variant == "linearly_stable":
        return euler_conservative_parts(U, ops, gamma, dissipate=True)
    F = euler_skew_transport(U, ops, gamma)
    S = np.zeros_like(U)
    if variant == "entropy_stable":
        for ax in range(ops.dims):
            S += euler_skew_dissipation(U, ops, gamma, ax)
    elif variant != "entropy_conserving":
        raise ValueError(f"unsupported scheme variant {variant!r}")
    return F, S


def rhs_euler(U, params: EulerParams, pairs, variant: str, dims: int | None = None):
    ops = _ops(pairs)
    if dims is not None and dims != ops.dims:
        raise ValueError(f"dims={dims} does not match {ops.dims}D operators")
    F, S = euler_parts(np.asarray(U, dtype=float), params, ops, variant)
    return F + S


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def euler_energy_total(U: np.ndarray, pairs, gamma: float = 1.4) -> float:
    """``<1, r^2 + m^2/2 + w^2/2 + q^2/(gamma-1)>_H`` for a skew state."""
    ops = _ops(pairs)
    e = U[0] ** 2 + 0.5 * np.sum(U[1:-1] ** 2, axis=0) + U[-1] ** 2 / (gamma - 1)
    return ops.integrate(e)


def euler_thermo_entropy_total(rho, p, pairs, gamma: float = 1.4) -> float:
    rho = np.asarray(rho, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(rho <= 0) or np.any(p <= 0):
        raise PositivityFault("thermodynamic entropy needs positive rho and p")
    ops = _ops(pairs)
    return ops.integrate(rho * (np.log(p) - gamma * np.log(rho)) / (gamma - 1))


class EulerModel(Model):
    """Skew state for the entropy variants, conservative state otherwise."""

    name = "euler"

    def __init__(self, ops, params: EulerParams, variant: str):
        super().__init__(_ops(ops), variant)
        self.params = params
        self.skew = variant != "linearly_stable"
        if self.skew:
            names = ("r", "m", "w", "q")
        else:
            names = ("rho", "rho_u", "rho_v", "E")
        self.components = names if self.dims == 2 else (names[0], names[1], names[3])

    @property
    def gamma(self) -> float:
        return self.params.gamma_gas

    # -- conversions
    def from_primitive(self, rho, u, v, p) -> np.ndarray:
        if self.dims == 1:
            v = None
        if self.skew:
            return primitive_to_skew(rho, u, v, p)
        return primitive_to_conserved(rho, u, v, p, self.gamma)

    def to_primitive(self, U):
        if self.skew:
            return skew_to_primitive(U)
        return conserved_to_primitive(U, self.gamma)

    # -- evaluation
    def rhs_parts(self, U):
        return euler_parts(U, self.params, self.ops, self.variant)

    def check(self, U):
        ensure_finite(U)
        if self.skew:
            lo_r, lo_q = float(U[0].min()), float(U[-1].min())
            if not (lo_r > 0 and lo_q > 0):
                raise PositivityFault(f"min sqrt(rho) {lo_r:.3e}, min sqrt(p) {lo_q:.3e}")
        else:
            rho, _, _, p = conserved_to_primitive(U, self.gamma)
            lo_r, lo_p = float(rho.min()), float(p.min())
            if not (lo_r > 0 and lo_p > 0):
                raise PositivityFault(f"min rho {lo_r:.3e}, min p {lo_p:.3e}")

    def entropy_variables(self, U):
        if not self.skew:
            return None
        g = U.copy()
        g[0] = 2.0 * U[0]
        g[-1] = 2.0 * U[-1] / (self.gamma - 1)
        return g

    def conserved_rates(self, U, dU):
        dims = self.dims
        if not self.skew:
            out = {"mass": dU[0], "momentum_x": dU[1]}
            if dims == 2:
                out["momentum_y"] = dU[2]
            out["energy"] = dU[-1]
            return out
        r, dr = U[0], dU[0]
        out = {"mass": 2 * r * dr, "momentum_x": dr * U[1] + r * dU[1]}
        if dims == 2:
            out["momentum_y"] = dr * U[2] + r * dU[2]
        if self.variant == "entropy_conserving":
            out["energy"] = (np.sum(U[1:-1] * dU[1:-1], axis=0)
                             + 2 * U[-1] * dU[-1] / (self.gamma - 1))
        return out

    def densities(self, U):
        gamma = self.gamma
        rho, u, v, p = self.to_primitive(U)
        if self.skew:
            r = U[0]
            mass = r * r
            mom = [r * U[1 + k] for k in range(self.dims)]
            energy = 0.5 * np.sum(U[1:-1] ** 2, axis=0) + U[-1] ** 2 / (gamma - 1)
        else:
            mass = U[0]
            mom = [U[1 + k] for k in range(self.dims)]
            energy = U[-1]
        out = {"entropy": mass + energy, "energy": energy, "mass": mass,
               "momentum_x": mom[0]}
        if self.dims == 2:
            out["momentum_y"] = mom[1]
        out["thermodynamic_entropy"] = rho * (np.log(p) - gamma * np.log(rho)) / (gamma - 1)
        return out

    def random_state(self, rng):
        rho = random_smooth(self.ops, rng, 1.0, offset=2.0)
        p = random_smooth(self.ops, rng, 1.0, offset=2.0)
        u = random_smooth(self.ops, rng, 1.5)
        v = random_smooth(self.ops, rng, 1.5) if self.dims == 2 else None
        return self.from_primitive(rho, u, v, p)

    def output_fields(self, U):
        rho, u, v, p = self.to_primitive(U)
        out = {"rho": rho, "u": u, "p": p}
        if self.dims == 2:
            out["v"] = v
        return out


# ---------------------------------------------------------------------------
# manufactured solution, vortex, Kelvin-Helmholtz
# ---------------------------------------------------------------------------

def _conserved_forcing_1d(rho, rt, rx, u, ut, ux, p, pt, px, gamma):
    s_rho = rt + rx * u + rho * ux
    s_mom = rt * u + rho * ut + rx * u * u + 2 * rho * u * ux + px
    E = p / (gamma - 1) + 0.5 * rho * u * u
    Et = pt / (gamma - 1) + 0.5 * rt * u * u + rho * u * ut
    Ex = px / (gamma - 1) + 0.5 * rx * u * u + rho * u * ux
    s_E = Et + (Ex + px) * u + (E + p) * ux
    return np.stack([s_rho, s_mom, s_E])


def conserved_forcing_to_skew(U_skew: np.ndarray, S: np.ndarray, gamma: float) -> np.ndarray:
    """Chain rule from sources of ``(rho, rho u[, rho v], E)`` to ``(r, m[, w], q)``."""
    r, q = U_skew[0], U_skew[-1]
    nv = U_skew.shape[0] - 2
    vel = U_skew[1:1 + nv] / r
    out = np.empty_like(S)
    s_r = S[0] / (2 * r)
    out[0] = s_r
    for k in range(nv):
        out[1 + k] = S[1 + k] / r - (U_skew[1 + k] / r) * s_r
    s_p = (gamma - 1) * (S[-1] - np.sum(vel * S[1:1 + nv], axis=0)
                         + 0.5 * np.sum(vel * vel, axis=0) * S[0])
    out[-1] = s_p / (2 * q)
    return out


def euler1d_mms(x: np.ndarray, t: float, gamma: float = 1.4):
    """``rho = 2 + 0.3 sin(2pi(x-t))``, ``u = 1``, ``p = 2 + 0.3 sin(2pi(x+t))``.

    Returns ``((rho, u, p), conserved forcing)``.
    """
    x = np.asarray(x, dtype=float)
    a, c = 2 * np.pi * (x - t), 2 * np.pi * (x + t)
    k = 0.6 * np.pi
    rho, rx = 2 + 0.3 * np.sin(a), k * np.cos(a)
    p, px = 2 + 0.3 * np.sin(c), k * np.cos(c)
    u = np.ones_like(x)
    z = np.zeros_like(x)
    S = _conserved_forcing_1d(rho, -rx, rx, u, z, z, p, px, px, gamma)
    return (rho, u, p), S


VORTEX = dict(eps=10.0, rho_bar=1.0, T_bar=10.0, u_bar=1.0, v_bar=1.0, gamma=1.4,
              half_width=8.0)


def isentropic_vortex(x, y, t=0.0, eps=10.0, rho_bar=1.0, T_bar=10.0, u_bar=1.0,
                      v_bar=1.0, gamma=1.4, half_width=8.0):
    """Primitive fields ``(rho, u, v, p)`` of the vortex advected to time ``t``.

    The domain is ``[-half_width, half_width]^2``; the profile is translated
    periodically by ``(u_bar t, v_bar t)``.
    """
    L = 2 * half_width
    xs = np.mod(np.asarray(x, dtype=float) - u_bar * t + half_width, L) - half_width
    ys = np.mod(np.asarray(y, dtype=float) - v_bar * t + half_width, L) - half_width
    r2 = xs * xs + ys * ys
    T = T_bar - (gamma - 1) * eps ** 2 / (8 * gamma * np.pi ** 2) * np.exp(1 - r2)
    rho = rho_bar * (T / T_bar) ** (1 / (gamma - 1))
    amp = eps / (2 * np.pi) * np.exp(0.5 * (1 - r2))
    u = u_bar - amp * ys
    v = v_bar + amp * xs
    p = rho * T
    return rho, u, v, p


def kelvin_helmholtz(x, y):
    """Shear layer on ``[-1, 1]^2`` with a single-mode transverse kick."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    B = np.tanh(15 * y + 7.5) - np.tanh(15 * y - 7.5)
    rho = 0.5 + 0.75 * B
    u = 0.5 * (B - 1)
    v = 0.1 * np.sin(2 * np.pi * x)
    p = np.ones_like(x)
    return rho, u, v, p
