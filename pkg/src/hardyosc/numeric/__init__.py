"""Floating-point cross-checks for the exact classifier."""
from ._config import BACKEND, USE_NUMBA
from .evaluator import Evaluator, compile, iterated_exp, iterated_log
from .export import write_csv
from .integrate import (
    SolutionPair,
    Trajectory,
    WronskianReport,
    gronwall_check,
    integrate,
    integrate_pair,
    make_pair,
    second_solution,
    wronskian_check,
)
from .probe import ProbeResult, ProbeTrend, level_transform, numeric_oscillation_probe

__all__ = [
    "BACKEND", "USE_NUMBA", "Evaluator", "compile", "iterated_exp", "iterated_log",
    "write_csv", "SolutionPair", "Trajectory", "WronskianReport", "gronwall_check",
    "integrate", "integrate_pair", "make_pair", "second_solution", "wronskian_check",
    "ProbeResult", "ProbeTrend", "level_transform", "numeric_oscillation_probe",
]
