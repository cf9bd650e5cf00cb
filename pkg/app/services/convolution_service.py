"""Single convolution and convolution-equation runs on a sampled signal"""
from pathlib import Path
from typing import Tuple
import logging

import numpy as np

from app.models.run_config import RunConfig
from app.models.scheme import SolveMethod
from app.oracles.signals import make_signal
from app.schemes.scheme_factory import SchemeFactory
from app.services.symbol_registry import build_symbol
from app.utils.table_io import write_history_csv

logger = logging.getLogger(__name__)


def _setup(cfg: RunConfig):
    scheme = SchemeFactory.get_scheme(cfg.scheme, cfg.eps, cfg.oversampling)
    symbol = build_symbol(cfg.symbol)
    g = make_signal(cfg.signal, power=cfg.signal_power, rate=cfg.signal_rate, amplitude=cfg.amplitude)
    samples = scheme.sample(g, cfg.kappa, cfg.steps)
    if symbol.dims[1] > 1:
        samples = np.repeat(samples[..., None], symbol.dims[1], axis=-1)
    return scheme, symbol, samples


def convolve(cfg: RunConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Step times and step values of F(∂_t) g"""
    scheme, symbol, samples = _setup(cfg)
    method = SolveMethod.MOT if cfg.method == SolveMethod.LOOK_AHEAD else cfg.method
    outputs = scheme.forward(symbol, cfg.kappa, samples, method)
    return scheme.step_times(cfg.kappa, cfg.steps), scheme.step_values(outputs)


def solve(cfg: RunConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Step times and step values of u with F(∂_t) u = g"""
    scheme, symbol, samples = _setup(cfg)
    outputs = scheme.solve(symbol, cfg.kappa, samples, method=cfg.method, block=cfg.block)
    return scheme.step_times(cfg.kappa, cfg.steps), scheme.step_values(outputs)


def run_convolve(cfg: RunConfig) -> Path:
    times, values = convolve(cfg)
    path = Path(cfg.out) / f"convolve_{cfg.scheme.value}_{cfg.symbol.kind.value}.csv"
    write_history_csv(path, times, values.real, "y")
    logger.info(f"Wrote {len(times)} convolution values to {path}")
    return path


def run_solve(cfg: RunConfig) -> Path:
    times, values = solve(cfg)
    path = Path(cfg.out) / f"solve_{cfg.scheme.value}_{cfg.symbol.kind.value}.csv"
    write_history_csv(path, times, values.real, "u")
    logger.info(f"Wrote {len(times)} solution values to {path}")
    return path
