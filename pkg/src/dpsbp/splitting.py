"""Global Lax-Friedrichs coefficients and the upwind dissipation term.

Every scheme variant adds

    1/2 * sum_eta Gamma_eta (D+ - D-)_eta g

to its right-hand side, where ``g`` is either the conserved state (linearly
stable variants) or the entropy variables (entropy-stable variants). Because
``H (D+ - D-)`` is symmetric negative semi-definite and annihilates constants,
this term removes entropy and leaves every linear invariant untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .faults import NonFiniteStateError
from .sbp import DpOperatorPair, OperatorSet


@dataclass(frozen=True)
class SplitSpec:
    """Per-component dissipation coefficients for one axis."""

    gammas: tuple[float, ...]
    variables: tuple[str, ...] = ()

    def __post_init__(self):
        g = tuple(float(x) for x in self.gammas)
        for x in g:
            if not (math.isfinite(x) and x >= 0.0):
                raise NonFiniteStateError(f"invalid dissipation coefficient {x}")
        object.__setattr__(self, "gammas", g)

    @classmethod
    def uniform(cls, gamma: float, ncomp: int, variables: Sequence[str] = ()):
        return cls((gamma,) * ncomp, tuple(variables))

    @property
    def is_zero(self) -> bool:
        return all(x == 0.0 for x in self.gammas)


def ensure_finite(*arrays: np.ndarray) -> None:
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise NonFiniteStateError("state contains NaN or Inf")


def lax_friedrichs_gamma(state: np.ndarray, wave_speed_fn: Callable[[np.ndarray], np.ndarray]
                         ) -> float:
    """``max |lambda|`` over the grid for the model's wave-speed function."""
    ensure_finite(state)
    speeds = np.asarray(wave_speed_fn(state))
    ensure_finite(speeds)
    return float(np.max(np.abs(speeds)))


def upwind_dissipation(ops: OperatorSet | DpOperatorPair, spec: SplitSpec, g: np.ndarray,
                       axis: int = 0) -> np.ndarray:
    """``1/2 * Gamma (D+ - D-) g`` componentwise along ``axis``.

    ``g`` has shape ``(ncomp, npts)`` (or ``(npts,)`` for a single component).
    """
    if isinstance(ops, DpOperatorPair):
        ops = OperatorSet(ops)
    g = np.asarray(g, dtype=float)
    single = g.ndim == 1
    G = g[None] if single else g
    if G.shape[0] != len(spec.gammas):
        raise ValueError(f"{len(spec.gammas)} coefficients for {G.shape[0]} components")
    out = np.zeros_like(G)
    if not spec.is_zero:
        active = [i for i, x in enumerate(spec.gammas) if x != 0.0]
        diff = ops.upwind(G[active], axis)
        for k, i in enumerate(active):
            out[i] = 0.5 * spec.gammas[i] * diff[k]
    return out[0] if single else out
