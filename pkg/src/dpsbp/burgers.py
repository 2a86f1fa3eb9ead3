"""Inviscid Burgers equation ``u_t + (u^2/2)_x = 0`` in split form.

The skew variants use ``u_t + 1/3 (u u_x + (u^2)_x) = 0`` discretized with
the central operator, which makes ``1/2 <u, u>_H`` invariant; the upwind term
then removes entropy at rate ``gamma/2 <u, (D+ - D-) u>_H``.
"""

from __future__ import annotations

import numpy as np

from .model import Model, random_smooth
from .sbp import DpOperatorPair, OperatorSet
from .splitting import SplitSpec, lax_friedrichs_gamma, upwind_dissipation


def _ops(pair) -> OperatorSet:
    return pair if isinstance(pair, OperatorSet) else OperatorSet(pair)


def burgers_gamma(u: np.ndarray, variant: str) -> float:
    if variant == "entropy_conserving":
        return 0.0
    return lax_friedrichs_gamma(u, np.abs)


def burgers_parts(u: np.ndarray, pair: DpOperatorPair | OperatorSet, variant: str):
    ops = _ops(pair)
    if variant == "linearly_stable":
        transport = -ops.d(0.5 * u * u)
    else:
        transport = -(u * ops.d(u) + ops.d(u * u)) / 3.0
    gamma = burgers_gamma(u, variant)
    diss = upwind_dissipation(ops, SplitSpec((gamma,)), u)
    return transport, diss


def rhs_burgers(u: np.ndarray, pair: DpOperatorPair | OperatorSet, variant: str) -> np.ndarray:
    a, b = burgers_parts(np.asarray(u, dtype=float), pair, variant)
    return a + b


def burgers_entropy_total(u: np.ndarray, norm) -> float:
    from .sbp import inner_product
    return 0.5 * inner_product(norm, u, u)


def burgers_mms(x: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact ``u = 2 + 0.3 sin(2 pi (x - t))`` and its forcing."""
    theta = 2 * np.pi * (np.asarray(x, dtype=float) - t)
    u = 2.0 + 0.3 * np.sin(theta)
    s = 0.6 * np.pi * np.cos(theta) * (u - 1.0)
    return u, s


def gaussian_pulse(x: np.ndarray) -> np.ndarray:
    return np.exp(-((np.asarray(x) - 0.25) ** 2) / 0.01)


class BurgersModel(Model):
    name = "burgers"
    components = ("u",)

    def __init__(self, ops: OperatorSet | DpOperatorPair, variant: str):
        super().__init__(_ops(ops), variant)

    def rhs_parts(self, U):
        a, b = burgers_parts(U[0], self.ops, self.variant)
        return a[None], b[None]

    def entropy_variables(self, U):
        return U.copy()

    def conserved_rates(self, U, dU):
        return {"mass": dU[0]}

    def densities(self, U):
        u = U[0]
        return {"entropy": 0.5 * u * u, "mass": u}

    def random_state(self, rng):
        return random_smooth(self.ops, rng, amplitude=2.0, modes=5,
                             offset=rng.uniform(-1, 1))[None]
