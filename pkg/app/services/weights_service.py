"""Weight export, to files and to JSON payloads"""
from pathlib import Path
from typing import Dict
import logging

from app.cq.multistep_cq import WeightTable
from app.models.run_config import RunConfig
from app.schemes.scheme_factory import SchemeFactory
from app.services.symbol_registry import build_symbol
from app.utils.table_io import save_weight_table

logger = logging.getLogger(__name__)


def compute_weights(cfg: RunConfig) -> WeightTable:
    """Weights ω_0..ω_N (or RK blocks) of the configured symbol and scheme"""
    scheme = SchemeFactory.get_scheme(cfg.scheme, cfg.eps, cfg.oversampling)
    return scheme.weights(build_symbol(cfg.symbol), cfg.kappa, cfg.steps)


def export_weights(cfg: RunConfig) -> Path:
    """Write the weight table to ``<out>/weights_<scheme>_<symbol>.txt``"""
    table = compute_weights(cfg)
    path = Path(cfg.out) / f"weights_{cfg.scheme.value}_{cfg.symbol.kind.value}.txt"
    return save_weight_table(path, table)


def weights_payload(cfg: RunConfig) -> Dict:
    """Header metadata and weights as nested [re, im] lists"""
    table = compute_weights(cfg)
    return {
        "kind": table.kind,
        "kappa": table.kappa,
        "N": table.N,
        "R": table.radius,
        "eps": table.eps,
        "symbol": table.symbol_name,
        "tableau": table.tableau,
        "dims": list(table.dims),
        "weights": [
            [[[entry.real, entry.imag] for entry in row] for row in matrix]
            for matrix in table.weights
        ],
    }
