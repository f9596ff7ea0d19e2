"""Riemann problem for the Aw-Rascle model with an extended Chaplygin pressure."""

from aw_rascle.tools.eos import EosParams, State
from aw_rascle.tools.exact_riemann import RiemannSolution, sample, solve
from aw_rascle.tools.limit_analysis import LimitPrediction, predict, sweep

__all__ = [
    "EosParams",
    "LimitPrediction",
    "RiemannSolution",
    "State",
    "predict",
    "sample",
    "solve",
    "sweep",
]
