"""Convergence studies against closed-form reference convolutions"""
from pathlib import Path
from typing import Optional
import logging

import numpy as np

from app.exceptions import ConvergenceReportError, InvalidArgumentError
from app.models.report import ConvergenceReport, ConvergenceRow
from app.models.run_config import RunConfig
from app.models.scheme import SchemeKind, SolveMethod
from app.oracles.convolution_oracle import has_oracle, oracle_convolution
from app.oracles.signals import make_signal
from app.schemes.scheme_factory import SchemeFactory
from app.services.symbol_registry import build_symbol

logger = logging.getLogger(__name__)

# contour nodes per step in refinement studies
STUDY_OVERSAMPLING = 3


def steps_to_reach(kind: SchemeKind, kappa: float, final_time: float) -> int:
    """Last time index n whose step value sits at T"""
    total = int(round(final_time / kappa))
    if abs(total * kappa - final_time) > 1e-9 * final_time:
        raise InvalidArgumentError(f"T={final_time:g} is not a multiple of kappa={kappa:g}")
    n = total if kind == SchemeKind.MULTISTEP else total - 1
    if n < 1:
        raise InvalidArgumentError(f"kappa={kappa:g} is too large for T={final_time:g}")
    return n


def run_convergence(cfg: RunConfig, write_csv: bool = False) -> ConvergenceReport:
    """
    Run the scheme at κ, κ/2, ..., κ/2^(levels-1) and compare with the oracle.

    The error of each level is the sup over step nodes in [0, T]; observed
    orders are log2(e(κ)/e(κ/2)).

    Raises:
        InvalidArgumentError: Symbol without a reference kernel
        ConvergenceReportError: NaN or zero errors
    """
    if not has_oracle(cfg.symbol):
        raise InvalidArgumentError(f"symbol {cfg.symbol.label()} has no reference kernel")

    scheme = SchemeFactory.get_scheme(cfg.scheme, cfg.eps, cfg.oversampling or STUDY_OVERSAMPLING)
    symbol = build_symbol(cfg.symbol)
    g = make_signal(cfg.signal, power=cfg.signal_power, rate=cfg.signal_rate, amplitude=cfg.amplitude)
    method = SolveMethod.ALL_STEPS if cfg.method == SolveMethod.ALL_STEPS else SolveMethod.MOT

    report = ConvergenceReport(scheme=scheme.scheme_id.value, symbol=cfg.symbol.label(),
                               signal=cfg.signal.value, final_time=cfg.final_time)
    logger.info(f"Convergence study: {report.scheme}, {report.symbol}, T={cfg.final_time:g}, "
                f"kappa={cfg.kappa:g}, levels={cfg.levels}")

    previous: Optional[float] = None
    for level in range(cfg.levels):
        kappa = cfg.kappa / 2 ** level
        n = steps_to_reach(scheme.kind, kappa, cfg.final_time)
        outputs = scheme.forward(symbol, kappa, scheme.sample(g, kappa, n), method)
        steps = scheme.step_values(outputs).real
        times = scheme.step_times(kappa, n)
        reference = oracle_convolution(cfg.symbol, g, times)
        error = float(np.max(np.abs(steps - reference)))

        if not np.isfinite(error) or error == 0.0:
            logger.error(f"Convergence study aborted at kappa={kappa:g}: error={error}")
            raise ConvergenceReportError(f"error {error} at kappa={kappa:g}; no order can be computed")

        order = None if previous is None else float(np.log2(previous / error))
        report.rows.append(ConvergenceRow(kappa=kappa, steps=n, error=error, order=order))
        logger.info(f"kappa={kappa:.6g} error={error:.3e}" + ("" if order is None else f" order={order:.3f}"))
        previous = error

    if write_csv:
        path = Path(cfg.out) / f"convergence_{report.scheme}_{cfg.symbol.kind.value}.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.to_csv())
        logger.info(f"Wrote convergence report to {path}")
    return report
