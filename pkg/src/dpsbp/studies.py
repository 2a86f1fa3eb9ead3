"""Multi-run studies: single runs from a config, resolution sweeps, crash matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import RunConfig
from .diagnostics import ConvergenceTable, ProbeReport, eoc, l2_error, probe_semidiscrete
from .scenarios import build_problem
from .timestepping import Problem, RunRecord, run


def problem_from_config(cfg: RunConfig, variant: str | None = None, n: int | None = None,
                        operator: str | None = None) -> Problem:
    prob = build_problem(cfg.scenario, n or cfg.n, variant or cfg.variant,
                         operator or cfg.operator, cfg.params, cfg.cfl, cfg.t_final)
    if cfg.snapshots is not None:
        prob.snapshot_times = cfg.snapshots
    return prob


def run_config(cfg: RunConfig) -> tuple[Problem, RunRecord]:
    prob = problem_from_config(cfg)
    return prob, run(prob, stride=cfg.stride)


def fitted_order(ns, errors) -> float:
    """Least-squares slope of ``-log(error)`` against ``log(n)``."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(errors, dtype=float))
    if not np.all(np.isfinite(y)):
        return math.nan
    return float(-np.polyfit(x, y, 1)[0])


@dataclass
class ConvergenceResult:
    table: ConvergenceTable
    fitted: float
    records: list[RunRecord]

    @property
    def crashed(self) -> bool:
        return any(r.crashed for r in self.records)


def convergence(scenario: str, ns, variant: str, operator: str = "dp2",
                params: dict | None = None, cfl: float | None = None,
                t_final: float | None = None) -> ConvergenceResult:
    """Error against the exact solution at the final time for each ``n``."""
    errors, records = [], []
    for n in ns:
        prob = build_problem(scenario, n, variant, operator, params, cfl, t_final)
        if prob.exact is None:
            raise ValueError(f"scenario {scenario!r} has no exact solution")
        prob.snapshot_times = ()
        rec = run(prob, stride=10 ** 9)
        records.append(rec)
        err = math.nan if rec.crashed else l2_error(rec.final_state, prob.exact(rec.final_time),
                                                    prob.model.ops)
        errors.append(err)
    table = eoc(list(ns), errors, label=variant)
    return ConvergenceResult(table, fitted_order(ns, errors), records)


def crash_study(scenario: str, ns, variants, operators, params: dict | None = None,
                cfl: float | None = None, t_final: float | None = None
                ) -> dict[tuple[int, str, str], RunRecord]:
    out = {}
    for n in ns:
        for op in operators:
            for v in variants:
                prob = build_problem(scenario, n, v, op, params, cfl, t_final)
                prob.snapshot_times = ()
                out[(n, op, v)] = run(prob, stride=1)
    return out


def probe_config(cfg: RunConfig, variant: str | None = None) -> ProbeReport:
    prob = problem_from_config(cfg, variant=variant)
    return probe_semidiscrete(prob.model, cfg.trials, cfg.seed)


PROBE_TOL = 1e-11


def probe_passes(rep: ProbeReport, tol: float = PROBE_TOL) -> bool:
    ok = all(v <= tol for v in rep.conservation.values())
    if rep.entropy_residual is not None:
        ok &= rep.entropy_residual <= tol
    if rep.dissipation_max is not None:
        if rep.variant == "entropy_conserving":
            ok &= rep.dissipation_max == 0.0 and rep.dissipation_min == 0.0
        else:
            ok &= rep.dissipation_max <= 0.0
    return bool(ok)
