"""Runge-Kutta convolution quadrature behind the scheme interface"""
from typing import Optional
import logging

import numpy as np

from app.cq.multistep_cq import forward_convolution_mot, solve_equation_mot
from app.cq.rk_cq import (
    RKTableau,
    RKWeightTable,
    extract_steps,
    rk_cq_weights,
    rk_forward,
    rk_solve,
    stage_times,
)
from app.cq.symbols import Symbol
from app.exceptions import InvalidArgumentError
from app.models.scheme import SchemeId, SchemeInfo, SchemeKind, SolveMethod
from app.schemes.base_scheme import BaseScheme

logger = logging.getLogger(__name__)


class RungeKuttaScheme(BaseScheme):
    """Samples live on stage times t_n + κc (shape (N+1, p[, d])); steps on t_{n+1}"""

    kind = SchemeKind.RUNGE_KUTTA

    def __init__(self, tableau: RKTableau, eps: Optional[float] = None, oversampling: Optional[int] = None):
        super().__init__(SchemeId(tableau.name), eps, oversampling)
        self.tableau = tableau

    @property
    def order(self) -> int:
        return self.tableau.classical_order

    @property
    def a_stable(self) -> bool:
        return True

    @property
    def stages(self) -> int:
        return self.tableau.p

    def sample_times(self, kappa: float, n: int) -> np.ndarray:
        return stage_times(self.tableau, kappa, n)

    def weights(self, f: Symbol, kappa: float, n: int) -> RKWeightTable:
        return rk_cq_weights(f, self.tableau, kappa, n, self.eps, oversampling=self.oversampling)

    def _flatten(self, samples: np.ndarray) -> np.ndarray:
        return samples.reshape(samples.shape[0], -1)

    def forward(self, f: Symbol, kappa: float, samples, method: SolveMethod = SolveMethod.ALL_STEPS) -> np.ndarray:
        samples = np.asarray(samples, dtype=complex)
        n = samples.shape[0] - 1
        method = SolveMethod(method)
        if method == SolveMethod.ALL_STEPS:
            return rk_forward(f, self.tableau, kappa, samples, n, self.eps, oversampling=self.oversampling).stages
        if method == SolveMethod.MOT:
            out = forward_convolution_mot(self.weights(f, kappa, n), self._flatten(samples))
            if samples.ndim == 2:
                return out.reshape(n + 1, self.tableau.p)
            return out.reshape(n + 1, self.tableau.p, f.dims[0])
        raise InvalidArgumentError(f"forward convolution has no {method.value} path")

    def solve(
        self,
        f: Symbol,
        kappa: float,
        samples,
        method: SolveMethod = SolveMethod.ALL_STEPS,
        block: Optional[int] = None,
    ) -> np.ndarray:
        samples = np.asarray(samples, dtype=complex)
        n = samples.shape[0] - 1
        method = SolveMethod(method)
        if method == SolveMethod.ALL_STEPS:
            return rk_solve(f, self.tableau, kappa, samples, n, self.eps, oversampling=self.oversampling).stages
        if method == SolveMethod.MOT:
            out = solve_equation_mot(self.weights(f, kappa, n), self._flatten(samples))
            return out.reshape(samples.shape)
        raise InvalidArgumentError(f"Runge-Kutta equations have no {method.value} path")

    def step_values(self, values: np.ndarray) -> np.ndarray:
        return extract_steps(self.tableau, np.asarray(values, dtype=complex))

    def step_times(self, kappa: float, n: int) -> np.ndarray:
        return (np.arange(n + 1) + 1.0) * kappa

    def info(self) -> SchemeInfo:
        info = super().info()
        info.stage_order = self.tableau.stage_order
        return info
