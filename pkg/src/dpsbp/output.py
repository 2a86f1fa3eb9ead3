"""File outputs: diagnostics CSV, field snapshots, run summaries, tables.

All floats are written with ``repr`` so files are locale independent, full
precision and byte-identical for identical runs.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .diagnostics import ConvergenceTable
from .timestepping import Problem, RunRecord


class OutputError(OSError):
    """Writing an output file failed; the message names the path."""


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def time_tag(t: float) -> str:
    return f"t{t:.6g}"


# ---------------------------------------------------------------------------
# snapshots
# ---------------------------------------------------------------------------

def snapshot_csv(x: np.ndarray, fields: dict[str, np.ndarray]) -> str:
    lines = [",".join(["x", *fields])]
    cols = [np.asarray(x, dtype=float)] + [np.asarray(v, dtype=float) for v in fields.values()]
    for row in zip(*cols):
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def structured_points_vtk(name: str, values: np.ndarray, shape: tuple[int, int],
                          origin: tuple[float, float], spacing: tuple[float, float],
                          title: str = "dpsbp field") -> str:
    """Legacy ASCII VTK ``STRUCTURED_POINTS`` volume with one scalar field.

    ``values`` is flat x-major (index ``i * ny + j``); VTK wants x varying
    fastest, so the field is transposed on output.
    """
    nx, ny = shape
    arr = np.asarray(values, dtype=float).reshape(nx, ny).T.ravel()
    head = [
        "# vtk DataFile Version 3.0",
        title,
        "ASCII",
        "DATASET STRUCTURED_POINTS",
        f"DIMENSIONS {nx} {ny} 1",
        f"ORIGIN {origin[0]!r} {origin[1]!r} 0.0",
        f"SPACING {spacing[0]!r} {spacing[1]!r} 1.0",
        f"POINT_DATA {nx * ny}",
        f"SCALARS {name} double 1",
        "LOOKUP_TABLE default",
    ]
    return "\n".join(head + [repr(float(v)) for v in arr]) + "\n"


def read_structured_points(text: str) -> tuple[dict, np.ndarray]:
    """Parse files written by :func:`structured_points_vtk` (header, x-major values)."""
    lines = text.splitlines()
    hdr = {}
    i = 0
    while not lines[i].startswith("LOOKUP_TABLE"):
        parts = lines[i].split()
        if parts and parts[0] in ("DIMENSIONS", "ORIGIN", "SPACING", "POINT_DATA", "SCALARS"):
            hdr[parts[0]] = parts[1:]
        i += 1
    nx, ny = int(hdr["DIMENSIONS"][0]), int(hdr["DIMENSIONS"][1])
    vals = np.array([float(v) for v in lines[i + 1:] if v.strip()])
    return hdr, vals.reshape(ny, nx).T.ravel()


def write_snapshot(out: Path, model, U: np.ndarray, t: float) -> list[Path]:
    ops = model.ops
    fields = model.output_fields(U)
    tag = time_tag(t)
    if ops.dims == 1:
        return [_write(out / f"snapshot_{tag}.csv", snapshot_csv(ops.nodes()[0], fields))]
    gx, gy = (p.grid for p in ops.pairs)
    paths = []
    for name, vals in fields.items():
        text = structured_points_vtk(name, vals, ops.shape, (gx.x_min, gy.x_min),
                                     (gx.dx, gy.dx), f"{model.name} {name} t={t!r}")
        paths.append(_write(out / f"{name}_{tag}.vtk", text))
    return paths


# ---------------------------------------------------------------------------
# summaries
# ---------------------------------------------------------------------------

def summary_dict(record: RunRecord, problem: Problem, meta: dict | None = None) -> dict:
    """Flat key/value view of a run; values are str, int, float, bool or None."""
    d: dict = dict(meta or {})
    d.update({
        "model": problem.model.name,
        "variant": problem.model.variant,
        "cfl": float(problem.cfl),
        "dt": float(record.dt),
        "t_final": float(record.t_requested),
        "final_time": float(record.final_time),
        "end_time": float(record.end_time),
        "crashed": bool(record.crashed),
        "crash_time": None if record.crash_time is None else float(record.crash_time),
        "crash_reason": record.crash_reason,
        "steps": int(record.steps),
        "wall_time": float(record.wall_time),
    })
    for ch, (lo, hi) in record.series.extremes().items():
        d[f"drift_min.{ch}"] = lo
        d[f"drift_max.{ch}"] = hi
    return d


def format_summary(d: dict) -> str:
    def fmt(v):
        if v is None:
            return "none"
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return repr(v)
        return str(v).replace("\n", " ")
    return "".join(f"{k} = {fmt(v)}\n" for k, v in d.items())


def parse_summary(text: str) -> dict:
    """Inverse of :func:`format_summary`."""
    out: dict = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        k, v = (p.strip() for p in line.split("=", 1))
        out[k] = _value(v)
    return out


def _value(v: str):
    if v == "none":
        return None
    if v in ("true", "false"):
        return v == "true"
    try:
        return int(v)
    except ValueError:
        pass
    try:
        f = float(v)
    except ValueError:
        return v
    return f if (math.isfinite(f) or v in ("nan", "inf", "-inf")) else v


# ---------------------------------------------------------------------------
# run outputs
# ---------------------------------------------------------------------------

def write_run(out: str | Path, record: RunRecord, problem: Problem,
              meta: dict | None = None) -> dict[str, list[Path]]:
    out = Path(out)
    written = {"diagnostics": [_write(out / "diagnostics.csv", record.series.to_csv())],
               "snapshots": []}
    for t, U in sorted(record.snapshots.items()):
        written["snapshots"].extend(write_snapshot(out, problem.model, U, t))
    written["summary"] = [_write(out / "summary.txt",
                                 format_summary(summary_dict(record, problem, meta)))]
    return written


def write_convergence(out: str | Path, table: ConvergenceTable) -> Path:
    name = f"convergence_{table.label}.csv" if table.label else "convergence.csv"
    return _write(Path(out) / name, table.to_csv())


def crash_matrix_csv(cells: dict[tuple[int, str, str], float]) -> str:
    """Wide table: one row per resolution, one column per ``operator:variant``."""
    ns = sorted({k[0] for k in cells})
    cols = sorted({(k[1], k[2]) for k in cells})
    lines = [",".join(["n"] + [f"{o}:{v}" for o, v in cols])]
    for n in ns:
        row = [str(n)]
        for o, v in cols:
            val = cells.get((n, o, v))
            row.append("" if val is None else repr(float(val)))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def write_text(path: str | Path, text: str) -> Path:
    return _write(Path(path), text)
