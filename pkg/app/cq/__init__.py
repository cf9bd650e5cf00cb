"""Convolution quadrature core: DFT helpers, symbols, multistep and Runge-Kutta CQ"""
from app.cq.symbols import Symbol, SymbolBound
from app.cq.multistep_cq import (
    DeltaGenerator,
    WeightTable,
    cq_weights,
    get_delta,
    look_ahead_solve,
)
from app.cq.rk_cq import RKTableau, RKWeightTable, get_tableau, rk_cq_weights

__all__ = [
    "Symbol",
    "SymbolBound",
    "DeltaGenerator",
    "WeightTable",
    "cq_weights",
    "get_delta",
    "look_ahead_solve",
    "RKTableau",
    "RKWeightTable",
    "get_tableau",
    "rk_cq_weights",
]
