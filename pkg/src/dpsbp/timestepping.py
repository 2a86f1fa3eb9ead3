"""SSP-RK(5,4) time integration and the run loop.

The optimal five-stage, fourth-order strong-stability-preserving scheme is
used in Shu-Osher form (coefficients to 15 digits).
"""

from __future__ import annotations

import math
import time as _time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .diagnostics import InvariantSeries
from .faults import CrashSignal
from .model import Model


@dataclass(frozen=True)
class SspRk54Tableau:
    """Shu-Osher coefficients: ``u_i = sum_k alpha[i][k] u_k + dt * sum_k beta[i][k] L(u_k)``."""

    alpha: tuple[tuple[float, ...], ...]
    beta: tuple[tuple[float, ...], ...]

    @property
    def stages(self) -> int:
        return len(self.alpha)

    @property
    def c(self) -> tuple[float, ...]:
        """Stage times as fractions of ``dt`` (``c[0] = 0``)."""
        cs = [0.0]
        for a, b in zip(self.alpha, self.beta):
            cs.append(sum(ak * ck for ak, ck in zip(a, cs)) + sum(b))
        return tuple(cs)


SSPRK54 = SspRk54Tableau(
    alpha=(
        (1.0,),
        (0.444370493651235, 0.555629506348765),
        (0.620101851488403, 0.0, 0.379898148511597),
        (0.178079954393132, 0.0, 0.0, 0.821920045606868),
        (0.0, 0.0, 0.517231671970585, 0.096059710526147, 0.386708617503269),
    ),
    beta=(
        (0.391752226571890,),
        (0.0, 0.368410593050371),
        (0.0, 0.0, 0.251891774271694),
        (0.0, 0.0, 0.0, 0.544974750228521),
        (0.0, 0.0, 0.0, 0.063692468666290, 0.226007483236906),
    ),
)

RhsFn = Callable[[np.ndarray, float], np.ndarray]


def step(rhs_fn: RhsFn, state: np.ndarray, dt: float, t: float = 0.0,
         tableau: SspRk54Tableau = SSPRK54) -> np.ndarray:
    """Advance ``state`` by one step.

    ``rhs_fn(U, t)`` is evaluated once per stage on the stage state. A
    :class:`CrashSignal` raised there is re-raised with its stage time set.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    c = tableau.c
    us = [state]
    rates: list[np.ndarray] = []
    for i, (a, b) in enumerate(zip(tableau.alpha, tableau.beta)):
        k = len(rates)
        t_stage = t + c[k] * dt
        try:
            rates.append(rhs_fn(us[k], t_stage))
        except CrashSignal as exc:
            if exc.time is None:
                exc.time = t_stage
            raise
        # sum_k alpha_k u_k written as u_0 + sum_k alpha_k (u_k - u_0), valid since
        # each row of alpha sums to one; a zero rate then reproduces u_0 exactly
        new = state.copy()
        for ak, uk in zip(a[1:], us[1:]):
            if ak:
                new += ak * (uk - state)
        for bk, rk in zip(b, rates):
            if bk:
                new += (bk * dt) * rk
        us.append(new)
    return us[-1]


@dataclass
class Problem:
    """A model with its initial data and optional forcing/exact solution."""

    model: Model
    initial: np.ndarray
    t_final: float
    cfl: float
    name: str = ""
    forcing: Callable[[float], np.ndarray] | None = None
    exact: Callable[[float], np.ndarray] | None = None
    speed_scale: float = 1.0
    snapshot_times: tuple[float, ...] = ()

    @property
    def dt(self) -> float:
        return self.cfl * self.model.ops.dx / self.speed_scale

    def rhs_fn(self) -> RhsFn:
        model, forcing = self.model, self.forcing

        def rhs(U, t):
            model.check(U)
            # overflow surfaces as a non-finite state and is recorded as a crash
            with np.errstate(over="ignore", invalid="ignore"):
                dU = model.rhs(U)
            if forcing is not None:
                dU = dU + forcing(t)
            return dU

        return rhs


@dataclass
class RunRecord:
    t_requested: float
    final_time: float
    crashed: bool
    crash_time: float | None
    crash_reason: str
    steps: int
    dt: float
    series: InvariantSeries
    final_state: np.ndarray = field(repr=False)
    wall_time: float = 0.0
    snapshots: dict[float, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def end_time(self) -> float:
        """Time reached: the crash time for crashed runs."""
        return self.crash_time if self.crashed else self.final_time


def step_times(t_final: float, dt: float) -> list[float]:
    """Step end times ``dt, 2 dt, ..., t_final``, the last step shortened."""
    n = max(1, math.ceil(t_final / dt - 1e-9))
    out = [k * dt for k in range(1, n)]
    out.append(t_final)
    return out


def run(problem: Problem, stride: int = 1,
        on_snapshot: Callable[[float, np.ndarray], None] | None = None) -> RunRecord:
    """Integrate to ``problem.t_final``; crashes are recorded, not raised."""
    if stride < 1:
        raise ValueError("stride must be >= 1")
    if not (problem.t_final > 0 and problem.cfl > 0):
        raise ValueError("t_final and cfl must be positive")
    model = problem.model
    U = np.array(problem.initial, dtype=float)
    model.check(U)
    dt = problem.dt
    rhs = problem.rhs_fn()
    series = InvariantSeries.start(model, U)
    snaps: dict[float, np.ndarray] = {}
    pending = sorted(t for t in problem.snapshot_times if 0 <= t <= problem.t_final)

    def take_snapshots(t_now, U_now, t_prev):
        while pending and pending[0] <= t_now + 1e-12:
            ts = pending.pop(0)
            # record the state at the first step end at or after the requested time
            snaps[ts] = U_now.copy()
            if on_snapshot is not None:
                on_snapshot(ts, U_now)

    take_snapshots(0.0, U, 0.0)
    t, steps, crashed, crash_time, reason = 0.0, 0, False, None, ""
    wall0 = _time.perf_counter()
    for t_next in step_times(problem.t_final, dt):
        try:
            U_new = step(rhs, U, t_next - t, t)
            model.check(U_new)
        except CrashSignal as exc:
            crashed, reason = True, f"{exc.reason}: {exc}"
            crash_time = exc.time if exc.time is not None else t_next
            break
        U, t = U_new, t_next
        steps += 1
        last = t_next == problem.t_final
        if steps % stride == 0 or last:
            series.record(t, U)
        take_snapshots(t, U, t)
    if crashed and series.times[-1] != t:
        series.record(t, U)
    return RunRecord(t_requested=problem.t_final, final_time=t, crashed=crashed,
                     crash_time=crash_time, crash_reason=reason, steps=steps, dt=dt,
                     series=series, final_state=U, wall_time=_time.perf_counter() - wall0,
                     snapshots=snaps)
