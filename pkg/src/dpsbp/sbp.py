"""Uniform grids, diagonal norms and dual-pairing upwind SBP operators.

A dual-pairing (DP) pair is a backward/forward couple ``(D-, D+)`` sharing a
diagonal norm ``H`` such that

* ``Q- + Q+^T = B`` with ``Q = H D`` and ``B = diag(-1, 0, ..., 0, 1)``,
* ``A = H (D+ - D-)`` is symmetric negative semi-definite.

``D+`` is never stored in coefficient data: it is derived from ``D-`` through
the first identity, so that identity holds by construction and the verifier
only has to check accuracy and the sign of ``A``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np
import scipy.sparse as sp


class GridSizeError(ValueError):
    """Grid too small for an operator's boundary closures."""


class OperatorVerificationError(ValueError):
    """Raised when an assembled pair violates one of the SBP assumptions."""

    def __init__(self, report: "VerificationReport"):
        self.report = report
        super().__init__(report.summary())


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Grid1D:
    """Uniform node set ``x_j = x_min + j*dx``, ``j = 0..n-1``, both ends included."""

    n_points: int
    length: float = 1.0
    x_min: float = 0.0

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise GridSizeError(f"n_points must be an integer >= 2, got {self.n_points}")
        if not (self.length > 0 and math.isfinite(self.length)):
            raise ValueError(f"length must be positive and finite, got {self.length}")

    @property
    def dx(self) -> float:
        return self.length / (self.n_points - 1)

    @cached_property
    def nodes(self) -> np.ndarray:
        x = self.x_min + self.dx * np.arange(self.n_points, dtype=float)
        x[-1] = self.x_min + self.length
        x.setflags(write=False)
        return x

    @property
    def size(self) -> int:
        return self.n_points

    @property
    def x_max(self) -> float:
        return self.x_min + self.length


@dataclass(frozen=True)
class Grid2D:
    """Tensor-product grid with x-major flat layout ``k = ix*ny + iy``."""

    gx: Grid1D
    gy: Grid1D

    @property
    def shape(self) -> tuple[int, int]:
        return (self.gx.n_points, self.gy.n_points)

    @property
    def size(self) -> int:
        return self.gx.n_points * self.gy.n_points

    def index(self, ix: int, iy: int) -> int:
        return ix * self.gy.n_points + iy

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Flat coordinate arrays ``(X, Y)`` in the grid's layout."""
        X, Y = np.meshgrid(self.gx.nodes, self.gy.nodes, indexing="ij")
        return X.ravel(), Y.ravel()

    @property
    def area(self) -> float:
        return self.gx.length * self.gy.length


@dataclass(frozen=True)
class GridField:
    """Flat samples of a scalar function on a 1D or 2D grid."""

    values: np.ndarray
    grid: Grid1D | Grid2D

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size != self.grid.size:
            raise ValueError(
                f"field of size {v.size} does not match grid of size {self.grid.size}")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class DiagonalNorm:
    weights: np.ndarray
    grid: Grid1D

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (self.grid.n_points,):
            raise ValueError("norm weights do not match the grid")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)


# ---------------------------------------------------------------------------
# coefficient data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperatorCoefficients:
    """Dimensionless closure data for a backward operator ``D-``.

    ``d_minus_boundary`` holds the first ``closure_width`` rows of ``D-``,
    anchored at column 0. The right closure of ``D-`` is not stored; it is
    obtained from the left closure of the derived ``D+`` through
    ``(D-)[n-1-i, n-1-j] = -(D+)[i, j]``.
    """

    name: str
    interior_order: int
    boundary_order: int
    closure_width: int
    h_boundary: tuple[float, ...]
    d_minus_boundary: tuple[tuple[float, ...], ...]
    d_minus_interior_offsets: tuple[int, ...]
    d_minus_interior_weights: tuple[float, ...]

    def __post_init__(self):
        s = self.closure_width
        if s < 0:
            raise ValueError("closure_width must be >= 0")
        if len(self.h_boundary) != s or len(self.d_minus_boundary) != s:
            raise ValueError(
                f"{self.name}: expected {s} boundary weights and {s} boundary rows")
        if len(self.d_minus_interior_offsets) != len(self.d_minus_interior_weights):
            raise ValueError(f"{self.name}: interior offsets and weights differ in length")
        if not self.d_minus_interior_offsets:
            raise ValueError(f"{self.name}: empty interior stencil")
        if self.interior_order < 1 or self.boundary_order < 0:
            raise ValueError(f"{self.name}: invalid declared orders")

    @property
    def stencil_reach(self) -> int:
        offs = self.d_minus_interior_offsets
        return max(abs(min(offs)), abs(max(offs)))

    @property
    def block_width(self) -> int:
        return max((len(r) for r in self.d_minus_boundary), default=0)

    def min_points(self) -> int:
        return 2 * max(self.closure_width, self.block_width) + 2 * self.stencil_reach


_KEYS_INT = ("interior_order", "boundary_order", "closure_width")


def _number(tok: str) -> float:
    tok = tok.replace("−", "-").strip()
    return float(Fraction(tok))


def parse_coefficients(text: str) -> OperatorCoefficients:
    """Parse the plain-text coefficient format.

    Lines are ``key = value``; a line without ``=`` continues the previous key
    as a new row. Rows may also be separated with ``;``. ``#`` starts a
    comment. Numbers may be decimals or rationals such as ``-8/5``.
    """
    raw: dict[str, list[str]] = {}
    key = None
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, val = (p.strip() for p in line.split("=", 1))
            raw[key] = [val]
        elif key is None:
            raise ValueError(f"value line before any key: {line!r}")
        else:
            raw[key].append(line)

    required = ("name", *_KEYS_INT, "h_boundary", "d_minus_boundary",
                "d_minus_interior_offsets", "d_minus_interior_weights")
    missing = [k for k in required if k not in raw]
    if missing:
        raise ValueError(f"coefficient file missing keys: {', '.join(missing)}")

    def rows(k):
        out = []
        for chunk in raw[k]:
            out.extend(r for r in chunk.split(";") if r.strip())
        return out

    def flat(k):
        return [t for r in rows(k) for t in re.split(r"[\s,]+", r.strip()) if t]

    try:
        return OperatorCoefficients(
            name=" ".join(raw["name"]).strip(),
            interior_order=int(flat("interior_order")[0]),
            boundary_order=int(flat("boundary_order")[0]),
            closure_width=int(flat("closure_width")[0]),
            h_boundary=tuple(_number(t) for t in flat("h_boundary")),
            d_minus_boundary=tuple(
                tuple(_number(t) for t in re.split(r"[\s,]+", r.strip()) if t)
                for r in rows("d_minus_boundary")),
            d_minus_interior_offsets=tuple(int(t) for t in flat("d_minus_interior_offsets")),
            d_minus_interior_weights=tuple(_number(t) for t in flat("d_minus_interior_weights")),
        )
    except (ZeroDivisionError, ValueError) as exc:
        raise ValueError(f"malformed coefficient file: {exc}") from exc


def load_coefficients(path: str | Path) -> OperatorCoefficients:
    return parse_coefficients(Path(path).read_text(encoding="utf-8"))


DATA_DIR = Path(__file__).with_name("data")

#: Order-2 upwind pair. Boundary weights 1/4, 5/4; D- closure rows (-1, 1).
DP2 = OperatorCoefficients(
    name="dp2",
    interior_order=2,
    boundary_order=1,
    closure_width=2,
    h_boundary=(0.25, 1.25),
    d_minus_boundary=((-1.0, 1.0), (-1.0, 1.0)),
    d_minus_interior_offsets=(-2, -1, 0),
    d_minus_interior_weights=(0.5, -2.0, 1.5),
)

#: Traditional second-order central SBP operator, used as ``D- = D+``.
CENTRAL2 = OperatorCoefficients(
    name="central2",
    interior_order=2,
    boundary_order=1,
    closure_width=1,
    h_boundary=(0.5,),
    d_minus_boundary=((-1.0, 1.0),),
    d_minus_interior_offsets=(-1, 0, 1),
    d_minus_interior_weights=(-0.5, 0.0, 0.5),
)

BUILTIN = {"dp2": DP2, "central2": CENTRAL2}


def resolve_coefficients(spec: str | OperatorCoefficients) -> OperatorCoefficients:
    """Accept ``builtin:<name>``, a bare builtin name, or a file path."""
    if isinstance(spec, OperatorCoefficients):
        return spec
    name = spec[len("builtin:"):] if spec.startswith("builtin:") else spec
    if name in BUILTIN:
        return BUILTIN[name]
    if spec.startswith("builtin:"):
        raise ValueError(f"unknown builtin operator {name!r}; known: {sorted(BUILTIN)}")
    return load_coefficients(spec)


# ---------------------------------------------------------------------------
# operator pair
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DpOperatorPair:
    d_minus: np.ndarray
    d_plus: np.ndarray
    norm: DiagonalNorm
    interior_order: int
    boundary_order: int
    periodic: bool = False
    name: str = ""

    def __post_init__(self):
        for a in (self.d_minus, self.d_plus):
            a.setflags(write=False)

    @property
    def grid(self) -> Grid1D:
        return self.norm.grid

    @property
    def n(self) -> int:
        return self.grid.n_points

    @cached_property
    def central(self) -> np.ndarray:
        c = 0.5 * (self.d_plus + self.d_minus)
        c.setflags(write=False)
        return c

    @cached_property
    def upwind_difference(self) -> np.ndarray:
        """``D+ - D-``; ``H`` times this is symmetric and NSD."""
        d = self.d_plus - self.d_minus
        d.setflags(write=False)
        return d

    def matrix(self, op: str) -> np.ndarray:
        try:
            return {"d_minus": self.d_minus, "d_plus": self.d_plus,
                    "central": self.central, "upwind": self.upwind_difference}[op]
        except KeyError:
            raise ValueError(f"unknown operator kind {op!r}") from None


def _boundary_matrix(n: int) -> np.ndarray:
    B = np.zeros((n, n))
    B[0, 0], B[-1, -1] = -1.0, 1.0
    return B


def assemble_pair(coeffs: OperatorCoefficients, grid: Grid1D, *,
                  verify: bool = True) -> DpOperatorPair:
    """Build ``(D-, D+, H)`` on ``grid`` from dimensionless closure data."""
    n, s = grid.n_points, coeffs.closure_width
    if n < coeffs.min_points():
        raise GridSizeError(
            f"{coeffs.name} needs at least {coeffs.min_points()} points, got {n}")
    dx = grid.dx

    hw = np.ones(n)
    hw[:s] = coeffs.h_boundary
    hw[n - s:] = coeffs.h_boundary[::-1]
    H = hw * dx

    Dm = np.zeros((n, n))
    for i, row in enumerate(coeffs.d_minus_boundary):
        Dm[i, :len(row)] = row
    offs = np.asarray(coeffs.d_minus_interior_offsets)
    wts = np.asarray(coeffs.d_minus_interior_weights, dtype=float)
    for i in range(s, n - s):
        cols = i + offs
        if cols.min() < 0 or cols.max() >= n:
            raise GridSizeError(f"{coeffs.name}: interior stencil leaves the grid at row {i}")
        Dm[i, cols] = wts
    Dm /= dx

    B = _boundary_matrix(n)
    # Left closure of D+ only involves the left closure and interior of D-.
    Dp_top = (B - (H[:, None] * Dm).T)[:s] / H[:s, None]
    for i in range(s):
        Dm[n - 1 - i, :] = -Dp_top[i, ::-1]
    Dp = (B - (H[:, None] * Dm).T) / H[:, None]

    pair = DpOperatorPair(Dm, Dp, DiagonalNorm(H, grid), coeffs.interior_order,
                          coeffs.boundary_order, periodic=False, name=coeffs.name)
    if verify:
        report = verify_pair(pair)
        if not report.passed:
            raise OperatorVerificationError(report)
    return pair


def build_order2_pair(grid: Grid1D) -> DpOperatorPair:
    if grid.n_points < 8:
        raise GridSizeError(f"order-2 pair needs n_points >= 8, got {grid.n_points}")
    return assemble_pair(DP2, grid)


def periodic_penalty(n: int) -> np.ndarray:
    """``B_N = 1/2 (e1 e1^T - e1 eN^T + eN e1^T - eN eN^T)``."""
    BN = np.zeros((n, n))
    BN[0, 0] = BN[-1, 0] = 0.5
    BN[0, -1] = BN[-1, -1] = -0.5
    return BN


def make_periodic(pair: DpOperatorPair) -> DpOperatorPair:
    """Weakly couple the two end nodes: ``D~ = D + H^-1 B_N``."""
    if pair.periodic:
        raise ValueError("pair is already periodic")
    pen = periodic_penalty(pair.n) / pair.norm.weights[:, None]
    return DpOperatorPair(pair.d_minus + pen, pair.d_plus + pen, pair.norm,
                          pair.interior_order, pair.boundary_order,
                          periodic=True, name=pair.name)


def periodic_pair(coeffs: str | OperatorCoefficients, grid: Grid1D) -> DpOperatorPair:
    return make_periodic(assemble_pair(resolve_coefficients(coeffs), grid))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    name: str
    n_points: int
    dx: float
    periodic: bool
    declared_interior_order: int
    declared_boundary_order: int
    min_weight: float
    quadrature_sum: float
    length: float
    sbp_residual: float
    symmetry_residual: float
    max_eigenvalue: float
    eig_method: str
    exactness_boundary: dict[int, float] = field(default_factory=dict)
    exactness_interior: dict[int, float] = field(default_factory=dict)
    measured_interior_order: int = -1
    measured_boundary_order: int = -1
    failures: list[tuple[str, str, float]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.passed:
            return f"{self.name} (n={self.n_points}): all checks passed"
        parts = [f"{a} {what}: residual {r:.3e}" for a, what, r in self.failures]
        return f"{self.name} (n={self.n_points}) failed: " + "; ".join(parts)

    def lines(self) -> list[str]:
        out = [
            f"operator               {self.name}",
            f"n_points               {self.n_points}",
            f"periodic               {self.periodic}",
            f"declared orders        interior {self.declared_interior_order}, "
            f"boundary {self.declared_boundary_order}",
            f"measured orders        interior {self.measured_interior_order}, boundary "
            + ("n/a (no boundary rows)" if self.periodic else str(self.measured_boundary_order)),
            f"min H weight           {self.min_weight:.6e}",
            f"sum H - L              {self.quadrature_sum - self.length:.3e}",
            f"|Q- + Q+^T - B|max     {self.sbp_residual:.3e}",
            f"|A - A^T|max           {self.symmetry_residual:.3e}",
            f"max eig sym(A)         {self.max_eigenvalue:.3e} ({self.eig_method})",
        ]
        for k in sorted(self.exactness_interior):
            line = f"degree {k} residual      interior {self.exactness_interior[k]:.3e}"
            if not self.periodic:
                line += f", boundary {self.exactness_boundary.get(k, float('nan')):.3e}"
            out.append(line)
        if self.periodic:
            out.append("boundary exactness     skipped (seam rows are penalty terms)")
        out.append("PASS" if self.passed else "FAIL")
        out.extend(f"  {a} {what}: {r:.3e}" for a, what, r in self.failures)
        return out


@dataclass(frozen=True)
class Tolerances:
    sbp: float = 1e-12        # times 1/dx on a unit domain
    symmetry: float = 1e-12   # times 1/dx on a unit domain
    eig: float = 1e-10        # times 1/dx on a unit domain
    exactness: float = 1e-10  # times 1/dx on a unit domain
    quadrature: float = 1e-12  # relative
    eig_dense_max_n: int = 512
    samples: int = 1000


def _max_sym_eig(S: np.ndarray, tol: Tolerances) -> tuple[float, str]:
    n = S.shape[0]
    if n <= tol.eig_dense_max_n:
        return float(np.linalg.eigvalsh(S)[-1]), "eigvalsh"
    rng = np.random.default_rng(0)
    X = rng.standard_normal((n, tol.samples))
    X /= np.linalg.norm(X, axis=0)
    return float(np.max(np.einsum("ik,ik->k", X, S @ X))), f"{tol.samples} samples"


def verify_pair(pair: DpOperatorPair, tol: Tolerances = Tolerances(),
                max_degree: int | None = None) -> VerificationReport:
    """Check norm positivity, accuracy, the dual-pairing identity and the
    upwind sign. Always returns a report; failures are tagged with the
    property they violate."""
    n, grid = pair.n, pair.grid
    dx, L = grid.dx, grid.length
    H = pair.norm.weights
    Dm, Dp = pair.d_minus, pair.d_plus

    B = np.zeros((n, n)) if pair.periodic else _boundary_matrix(n)
    sbp_res = float(np.max(np.abs(H[:, None] * Dm + (H[:, None] * Dp).T - B)))
    A = H[:, None] * (Dp - Dm)
    sym_res = float(np.max(np.abs(A - A.T)))
    lam, method = _max_sym_eig(0.5 * (A + A.T), tol)

    # accuracy on the unit-scaled coordinate xi = (x - x_min)/L
    xi = (grid.nodes - grid.x_min) / L
    dxi = dx / L
    interior = _interior_rows(pair)
    top = max(pair.interior_order, pair.boundary_order) + 2
    if max_degree is not None:
        top = max_degree
    ex_b, ex_i = {}, {}
    for k in range(top + 1):
        f = xi ** k
        df = k * xi ** (k - 1) if k else np.zeros(n)
        r = np.maximum(np.abs(L * (Dm @ f) - df), np.abs(L * (Dp @ f) - df))
        r_int = float(np.max(r[interior]))
        bmask = np.ones(n, bool)
        bmask[interior] = False
        if pair.periodic:
            bmask[:] = False
        ex_i[k] = r_int
        ex_b[k] = float(np.max(r[bmask])) if bmask.any() else 0.0

    thr = tol.exactness / dxi
    meas_i = _measured(ex_i, thr)
    meas_b = min(meas_i, _measured(ex_b, thr)) if not pair.periodic else -1

    rep = VerificationReport(
        name=pair.name, n_points=n, dx=dx, periodic=pair.periodic,
        declared_interior_order=pair.interior_order,
        declared_boundary_order=pair.boundary_order,
        min_weight=float(H.min()), quadrature_sum=float(np.sum(H)), length=L,
        sbp_residual=sbp_res, symmetry_residual=sym_res, max_eigenvalue=lam,
        eig_method=method, exactness_boundary=ex_b, exactness_interior=ex_i,
        measured_interior_order=meas_i, measured_boundary_order=meas_b)

    fails = rep.failures
    if H.min() <= 0:
        fails.append(("positivity", "non-positive norm weight", float(H.min())))
    if abs(np.sum(H) - L) > tol.quadrature * L:
        fails.append(("positivity", "norm weights do not sum to the domain length",
                      abs(float(np.sum(H)) - L)))
    for k in range(pair.interior_order + 1):
        if ex_i[k] > thr:
            fails.append(("accuracy", f"interior exactness, degree {k}", ex_i[k]))
    if not pair.periodic:
        for k in range(pair.boundary_order + 1):
            if ex_b[k] > thr:
                fails.append(("accuracy", f"boundary exactness, degree {k}", ex_b[k]))
    # Q and A are dimensionless, so the 1/dx scaling uses the unit-domain spacing
    if sbp_res > tol.sbp / dxi:
        fails.append(("dual-pairing", "Q- + Q+^T - B", sbp_res))
    if sym_res > tol.symmetry / dxi:
        fails.append(("upwind", "A not symmetric", sym_res))
    if lam > tol.eig / dxi:
        fails.append(("upwind", "A not negative semi-definite", lam))
    return rep


def _interior_rows(pair: DpOperatorPair) -> np.ndarray:
    """Rows whose D- and D+ entries both follow a translation-invariant stencil."""
    n = pair.n
    mid = n // 2
    ref_m = pair.d_minus[mid]
    ref_p = pair.d_plus[mid]
    keep = []
    for i in range(n):
        shift = i - mid
        ok = (np.array_equal(pair.d_minus[i], np.roll(ref_m, shift)) and
              np.array_equal(pair.d_plus[i], np.roll(ref_p, shift)))
        # reject wrap-around: the rolled stencil must not straddle the ends
        if ok:
            nz = np.flatnonzero(ref_m) + shift
            nzp = np.flatnonzero(ref_p) + shift
            ok = nz.min(initial=0) >= 0 and nz.max(initial=0) < n and \
                nzp.min(initial=0) >= 0 and nzp.max(initial=0) < n
        keep.append(ok)
    return np.flatnonzero(keep)


def _measured(res: dict[int, float], thr: float) -> int:
    k = -1
    for deg in sorted(res):
        if res[deg] <= thr:
            k = deg
        else:
            break
    return k


# ---------------------------------------------------------------------------
# application and inner products
# ---------------------------------------------------------------------------

def _values(f) -> np.ndarray:
    return f.values if isinstance(f, GridField) else np.asarray(f, dtype=float)


def apply_1d(pair: DpOperatorPair, op: str, f):
    """Apply ``d_minus``, ``d_plus``, ``central`` or ``upwind`` (= D+ - D-).

    Accepts a :class:`GridField` or an array whose last axis is the grid.
    """
    v = _values(f)
    if v.shape[-1] != pair.n:
        raise ValueError(f"field length {v.shape[-1]} does not match operator size {pair.n}")
    out = v @ pair.matrix(op).T
    return GridField(out, f.grid) if isinstance(f, GridField) else out


def apply_2d(pairs: tuple[DpOperatorPair, DpOperatorPair], axis: str, op: str, f):
    """Apply a 1D operator along ``axis`` of a flat x-major 2D field.

    ``f`` may carry leading component axes; its last axis has length nx*ny.
    """
    px, py = pairs
    nx, ny = px.n, py.n
    v = _values(f)
    if v.shape[-1] != nx * ny:
        raise ValueError(f"field length {v.shape[-1]} does not match grid {nx}x{ny}")
    F = v.reshape(v.shape[:-1] + (nx, ny))
    if axis == "x":
        out = px.matrix(op) @ F
    elif axis == "y":
        out = F @ py.matrix(op).T
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    out = out.reshape(v.shape)
    return GridField(out, f.grid) if isinstance(f, GridField) else out


def norm_weights(norms: DiagonalNorm | Sequence[DiagonalNorm] | DpOperatorPair
                 | Sequence[DpOperatorPair]) -> np.ndarray:
    """Flat quadrature weights (``H`` in 1D, ``H (x) H`` in 2D)."""
    if isinstance(norms, (DiagonalNorm, DpOperatorPair)):
        norms = (norms,)
    ws = [(n.norm if isinstance(n, DpOperatorPair) else n).weights for n in norms]
    if len(ws) == 1:
        return ws[0]
    if len(ws) == 2:
        return np.outer(ws[0], ws[1]).ravel()
    raise ValueError("expected one or two norms")


def inner_product(norms, f, g) -> float:
    """``sum_k w_k f_k g_k`` accumulated sequentially in index order."""
    w = norm_weights(norms)
    a, b = _values(f), _values(g)
    if a.shape != w.shape or b.shape != w.shape:
        raise ValueError("inner product operands do not match the norm")
    return math.fsum((w * a * b).tolist())


class OperatorSet:
    """Periodic pairs for each axis of a 1D or 2D grid, with flat application.

    Fields may carry leading component axes; the last axis is the grid.
    """

    def __init__(self, pairs: DpOperatorPair | Sequence[DpOperatorPair]):
        if isinstance(pairs, DpOperatorPair):
            pairs = (pairs,)
        self.pairs = tuple(pairs)
        if len(self.pairs) not in (1, 2):
            raise ValueError("expected one or two operator pairs")
        self.dims = len(self.pairs)
        self.shape = tuple(p.n for p in self.pairs)
        self.size = int(np.prod(self.shape))
        self.weights = norm_weights(self.pairs)
        if self.dims == 1:
            self.grid = self.pairs[0].grid
        else:
            self.grid = Grid2D(self.pairs[0].grid, self.pairs[1].grid)
        # sparse flat-grid matrices: D (x) I for x, I (x) D for y
        ops = ("d_minus", "d_plus", "central", "upwind")
        if self.dims == 1:
            self._m = {k: (sp.csr_matrix(self.pairs[0].matrix(k)),) for k in ops}
        else:
            ix, iy = (sp.identity(p.n, format="csr") for p in self.pairs)
            self._m = {k: (sp.kron(self.pairs[0].matrix(k), iy, format="csr"),
                           sp.kron(ix, self.pairs[1].matrix(k), format="csr"))
                       for k in ops}

    @property
    def dx(self) -> float:
        return min(p.grid.dx for p in self.pairs)

    def apply(self, op: str, f: np.ndarray, axis: int = 0) -> np.ndarray:
        if f.shape[-1] != self.size:
            raise ValueError(f"field length {f.shape[-1]} does not match grid size {self.size}")
        if axis not in range(self.dims):
            raise ValueError(f"axis must be in 0..{self.dims - 1}, got {axis}")
        M = self._m[op][axis]
        if f.ndim == 1:
            return M @ f
        return (M @ f.reshape(-1, self.size).T).T.reshape(f.shape)

    def d(self, f, axis=0):
        """Central derivative ``(D+ + D-)/2``."""
        return self.apply("central", f, axis)

    def upwind(self, f, axis=0):
        """``(D+ - D-) f``."""
        return self.apply("upwind", f, axis)

    def integrate(self, f: np.ndarray) -> float:
        return math.fsum((self.weights * f).tolist())

    def ip(self, f: np.ndarray, g: np.ndarray) -> float:
        return math.fsum((self.weights * f * g).tolist())

    def nodes(self) -> tuple[np.ndarray, ...]:
        if self.dims == 1:
            return (np.asarray(self.grid.nodes),)
        return self.grid.mesh()


def periodic_operators(coeffs: str | OperatorCoefficients, n: int | Sequence[int],
                       lengths: float | Sequence[float],
                       x_min: float | Sequence[float] = 0.0) -> OperatorSet:
    """Periodic pairs on a 1D interval or 2D box in one call."""
    ns = [n] if np.isscalar(n) else list(n)
    Ls = [lengths] * len(ns) if np.isscalar(lengths) else list(lengths)
    x0 = [x_min] * len(ns) if np.isscalar(x_min) else list(x_min)
    c = resolve_coefficients(coeffs)
    return OperatorSet([periodic_pair(c, Grid1D(k, L, a)) for k, L, a in zip(ns, Ls, x0)])
