"""Run-terminating conditions recorded as crashes rather than raised as bugs."""

from __future__ import annotations


class CrashSignal(RuntimeError):
    """A stage state that the model cannot continue from.

    ``time`` is filled in by the integrator with the stage-local time.
    """

    reason = "crash"

    def __init__(self, message: str, time: float | None = None):
        super().__init__(message)
        self.time = time


class NonFiniteStateError(CrashSignal):
    reason = "non-finite"


class PositivityFault(CrashSignal):
    reason = "positivity"
