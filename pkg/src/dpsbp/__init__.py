"""Dual-pairing summation-by-parts schemes for nonlinear conservation laws.

Upwind DP-SBP operators with periodic penalty closures, skew-symmetric
entropy-stable, entropy-conserving and linearly-stable semi-discretizations of
the Burgers, shallow water and compressible Euler equations, SSP-RK(5,4)
time stepping, and diagnostics.
"""

from .burgers import BurgersModel, burgers_mms, rhs_burgers
from .diagnostics import (ConvergenceTable, InvariantSeries, eoc, l2_error,
                          probe_semidiscrete)
from .euler import EulerModel, EulerParams, rhs_euler
from .faults import CrashSignal, NonFiniteStateError, PositivityFault
from .model import VARIANTS
from .sbp import (CENTRAL2, DP2, DpOperatorPair, Grid1D, Grid2D, OperatorCoefficients,
                  OperatorSet, Tolerances, VerificationReport, assemble_pair,
                  build_order2_pair, load_coefficients, make_periodic, periodic_operators,
                  periodic_pair, verify_pair)
from .scenarios import SCENARIOS, build_problem
from .splitting import SplitSpec, lax_friedrichs_gamma, upwind_dissipation
from .swe import SweFluxModel, SweParams, SweVecInvModel
from .timestepping import SSPRK54, Problem, RunRecord, run, step

__version__ = "0.1.0"

__all__ = [
    "BurgersModel", "burgers_mms", "rhs_burgers", "ConvergenceTable", "InvariantSeries",
    "eoc", "l2_error", "probe_semidiscrete", "EulerModel", "EulerParams", "rhs_euler",
    "CrashSignal", "NonFiniteStateError", "PositivityFault", "VARIANTS", "CENTRAL2", "DP2",
    "DpOperatorPair", "Grid1D", "Grid2D", "OperatorCoefficients", "OperatorSet",
    "Tolerances", "VerificationReport", "assemble_pair", "build_order2_pair",
    "load_coefficients", "make_periodic", "periodic_operators", "periodic_pair",
    "verify_pair", "SCENARIOS", "build_problem", "SplitSpec", "lax_friedrichs_gamma",
    "upwind_dissipation", "SweFluxModel", "SweParams", "SweVecInvModel", "SSPRK54",
    "Problem", "RunRecord", "run", "step",
]
