"""Data models for runs, schemes and reports"""
from app.models.scheme import SchemeId, SchemeInfo, SchemeKind, SolveMethod
from app.models.run_config import RunConfig, SignalId, SymbolId, SymbolSpec
from app.models.report import ConvergenceReport, ConvergenceRow, ScatterSummary

__all__ = [
    "SchemeId",
    "SchemeInfo",
    "SchemeKind",
    "SolveMethod",
    "RunConfig",
    "SignalId",
    "SymbolId",
    "SymbolSpec",
    "ConvergenceReport",
    "ConvergenceRow",
    "ScatterSummary",
]
