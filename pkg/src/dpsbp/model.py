"""Common shape of a semi-discrete model.

A state is an array of shape ``(ncomp, npts)``; the last axis is the flat grid
of the model's :class:`~dpsbp.sbp.OperatorSet`.
"""

from __future__ import annotations

import numpy as np

from .faults import PositivityFault
from .sbp import OperatorSet
from .splitting import ensure_finite

VARIANTS = ("entropy_stable", "entropy_conserving", "linearly_stable")


def check_variant(variant: str, allowed=VARIANTS) -> str:
    if variant not in allowed:
        raise ValueError(f"unsupported scheme variant {variant!r}; expected one of {allowed}")
    return variant


class Model:
    name = "model"
    components: tuple[str, ...] = ()
    positive: tuple[int, ...] = ()

    def __init__(self, ops: OperatorSet, variant: str):
        self.ops = ops
        self.variant = check_variant(variant)

    @property
    def dims(self) -> int:
        return self.ops.dims

    @property
    def dissipative(self) -> bool:
        return self.variant != "entropy_conserving"

    # -- evaluation -------------------------------------------------------

    def rhs_parts(self, U: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(transport, dissipation)``; the rate is their sum."""
        raise NotImplementedError

    def rhs(self, U: np.ndarray) -> np.ndarray:
        a, b = self.rhs_parts(U)
        return a + b

    def check(self, U: np.ndarray) -> None:
        ensure_finite(U)
        for i in self.positive:
            lo = float(U[i].min())
            if not lo > 0.0:
                raise PositivityFault(f"{self.components[i]} reached {lo:.3e}")

    # -- structure used by probes ----------------------------------------

    def entropy_variables(self, U: np.ndarray) -> np.ndarray | None:
        """Multiplier whose inner product with the rate is dE/dt."""
        return None

    def dissipated_variables(self, U: np.ndarray) -> np.ndarray:
        """Variables the upwind term acts on (entropy or conserved variables)."""
        g = self.entropy_variables(U) if self.variant != "linearly_stable" else None
        return U if g is None else g

    def conserved_rates(self, U: np.ndarray, dU: np.ndarray) -> dict[str, np.ndarray]:
        """Pointwise time derivative of each conserved density."""
        raise NotImplementedError

    def densities(self, U: np.ndarray) -> dict[str, np.ndarray]:
        """Pointwise densities of the monitored invariants."""
        raise NotImplementedError

    def diagnostics(self, U: np.ndarray) -> dict[str, float]:
        return {k: self.ops.integrate(v) for k, v in self.densities(U).items()}

    def diagnostic_scales(self, U: np.ndarray) -> dict[str, float]:
        """``<1, |density|>``, the fallback denominator for relative changes."""
        return {k: self.ops.integrate(np.abs(v)) for k, v in self.densities(U).items()}

    def random_state(self, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    # -- output helpers ---------------------------------------------------

    def output_fields(self, U: np.ndarray) -> dict[str, np.ndarray]:
        return {c: U[i] for i, c in enumerate(self.components)}


def random_smooth(ops: OperatorSet, rng: np.random.Generator, amplitude: float = 1.0,
                  modes: int = 4, offset: float = 0.0) -> np.ndarray:
    """Sum of low Fourier modes periodic on the operator domain."""
    coords = ops.nodes()
    grids = [p.grid for p in ops.pairs]
    out = np.full(ops.size, offset, dtype=float)
    for _ in range(modes):
        phase = rng.uniform(0, 2 * np.pi)
        arg = phase
        for x, g in zip(coords, grids):
            arg = arg + 2 * np.pi * rng.integers(0, 4) * (x - g.x_min) / g.length
        out += amplitude / modes * rng.uniform(-1, 1) * np.sin(arg)
    return out
