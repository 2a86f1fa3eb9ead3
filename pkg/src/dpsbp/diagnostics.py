"""Error norms, convergence rates, invariant time series and property probes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .sbp import OperatorSet, norm_weights


def l2_error(numeric: np.ndarray, exact: np.ndarray, norms) -> float:
    """``sqrt(sum_c <e_c, e_c>_H)``; ``norms`` is an OperatorSet, pair(s) or norm(s)."""
    w = norms.weights if isinstance(norms, OperatorSet) else norm_weights(norms)
    a = np.atleast_2d(np.asarray(numeric, dtype=float))
    b = np.atleast_2d(np.asarray(exact, dtype=float))
    if a.shape != b.shape or a.shape[-1] != w.size:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape} on {w.size} nodes")
    d = a - b
    return math.sqrt(math.fsum((w * d * d).ravel().tolist()))


# ---------------------------------------------------------------------------
# convergence tables
# ---------------------------------------------------------------------------

@dataclass
class ConvergenceRow:
    n: int
    error: float
    eoc: float | None  # None on the first row or when undefined


@dataclass
class ConvergenceTable:
    rows: list[ConvergenceRow]
    label: str = ""
    flags: list[str] = field(default_factory=list)

    @property
    def eocs(self) -> list[float]:
        return [r.eoc for r in self.rows[1:] if r.eoc is not None]

    def to_csv(self) -> str:
        lines = ["n,error,eoc"]
        for r in self.rows:
            e = "" if r.eoc is None else repr(r.eoc)
            lines.append(f"{r.n},{r.error!r},{e}")
        return "\n".join(lines) + "\n"


def eoc(ns: Sequence[int], errors: Sequence[float], label: str = "") -> ConvergenceTable:
    """``eoc_i = ln(e_{i-1}/e_i) / ln(n_i/n_{i-1})``."""
    if len(ns) != len(errors):
        raise ValueError("ns and errors differ in length")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("n values must be strictly increasing")
    rows, flags = [], []
    for i, (n, e) in enumerate(zip(ns, errors)):
        rate = None
        if i > 0:
            prev = errors[i - 1]
            if e > 0 and prev > 0 and math.isfinite(e) and math.isfinite(prev):
                rate = math.log(prev / e) / math.log(n / ns[i - 1])
            else:
                flags.append(f"row {i}: non-positive or non-finite error, EOC undefined")
        rows.append(ConvergenceRow(int(n), float(e), rate))
    return ConvergenceTable(rows, label, flags)


# ---------------------------------------------------------------------------
# invariant series
# ---------------------------------------------------------------------------

@dataclass
class InvariantSeries:
    """Totals of the model's monitored densities, stored as raw values.

    :meth:`relative` reports ``(Q(t) - Q(0)) / d`` with ``d = |Q(0)|``, or the
    scale ``<1, |q(0)|>`` when ``|Q(0)|`` is negligible against it (for
    example total momentum of a symmetric flow).
    """

    channels: tuple[str, ...]
    times: list[float]
    values: list[list[float]]
    scales: dict[str, float]

    @classmethod
    def start(cls, model, U0: np.ndarray) -> "InvariantSeries":
        d = model.diagnostics(U0)
        return cls(tuple(d), [0.0], [[d[k] for k in d]],
                   model.diagnostic_scales(U0)).bind(model)

    def __post_init__(self):
        self._model = None

    def bind(self, model):
        self._model = model
        return self

    def record(self, t: float, U: np.ndarray, model=None) -> None:
        m = model or self._model
        d = m.diagnostics(U)
        self.times.append(float(t))
        self.values.append([d[k] for k in self.channels])

    def denominators(self) -> dict[str, float]:
        out = {}
        for i, k in enumerate(self.channels):
            q0 = abs(self.values[0][i])
            s = self.scales.get(k, q0)
            out[k] = q0 if q0 > 1e-8 * s else (s if s > 0 else 1.0)
        return out

    def absolute(self, channel: str) -> np.ndarray:
        i = self.channels.index(channel)
        return np.array([row[i] for row in self.values])

    def relative(self, channel: str) -> np.ndarray:
        v = self.absolute(channel)
        return (v - v[0]) / self.denominators()[channel]

    def max_drift(self, channel: str) -> float:
        return float(np.max(np.abs(self.relative(channel))))

    def extremes(self) -> dict[str, tuple[float, float]]:
        return {k: (float(self.relative(k).min()), float(self.relative(k).max()))
                for k in self.channels}

    def to_csv(self) -> str:
        rel = [self.relative(k) for k in self.channels]
        lines = [",".join(("time",) + self.channels)]
        for j, t in enumerate(self.times):
            lines.append(",".join([repr(float(t))] + [repr(float(r[j])) for r in rel]))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# semi-discrete probes
# ---------------------------------------------------------------------------

@dataclass
class ProbeReport:
    model: str
    variant: str
    trials: int
    conservation: dict[str, float]       # max |<1, rate_c>| / <1, |rate_c|>
    entropy_residual: float | None       # max |<g, rate> - <g, S>| / sum <|g|, |rate|>
    dissipation_max: float | None        # max over trials of <g, S>
    dissipation_min: float | None

    def lines(self) -> list[str]:
        out = [f"model {self.model}  variant {self.variant}  trials {self.trials}"]
        for k, v in self.conservation.items():
            out.append(f"  conservation {k:<20s} {v:.3e}")
        if self.entropy_residual is not None:
            out.append(f"  entropy residual             {self.entropy_residual:.3e}")
        if self.dissipation_max is not None:
            out.append(f"  dissipation form range       [{self.dissipation_min:.3e}, "
                       f"{self.dissipation_max:.3e}]")
        return out


def probe_semidiscrete(model, trials: int = 100, seed: int = 0) -> ProbeReport:
    """Evaluate the conservation and entropy identities on random states.

    Residuals are relative: each inner product is divided by the same inner
    product taken with absolute values, which bounds every rounding error in
    it. The entropy identity is only meaningful for the skew variants and is
    left as ``None`` otherwise.
    """
    rng = np.random.default_rng(seed)
    ops = model.ops
    cons: dict[str, float] = {}
    ent_res = None
    skew = model.variant != "linearly_stable"
    dmin, dmax = math.inf, -math.inf
    for _ in range(trials):
        U = model.random_state(rng)
        F, S = model.rhs_parts(U)
        dU = F + S
        for k, c in model.conserved_rates(U, dU).items():
            scale = ops.integrate(np.abs(c))
            val = abs(ops.integrate(c)) / scale if scale > 0 else 0.0
            cons[k] = max(cons.get(k, 0.0), val)
        g = model.dissipated_variables(U)
        form = math.fsum(ops.ip(g[i], S[i]) for i in range(g.shape[0]))
        dmin, dmax = min(dmin, form), max(dmax, form)
        if skew and model.entropy_variables(U) is not None:
            rate = math.fsum(ops.ip(g[i], dU[i]) for i in range(g.shape[0]))
            scale = math.fsum(ops.integrate(np.abs(g[i] * F[i]) + np.abs(g[i] * S[i]))
                              for i in range(g.shape[0]))
            r = abs(rate - form) / scale
            ent_res = r if ent_res is None else max(ent_res, r)
    return ProbeReport(model.name, model.variant, trials, cons, ent_res,
                       dmax if trials else None, dmin if trials else None)
