"""Multistep (BDF / trapezoidal) convolution quadrature behind the scheme interface"""
from typing import Optional
import logging

import numpy as np

from app.cq.multistep_cq import (
    DeltaGenerator,
    WeightTable,
    all_steps_forward,
    all_steps_solve,
    cq_weights,
    forward_convolution_mot,
    look_ahead_solve,
    solve_equation_mot,
)
from app.cq.symbols import Symbol
from app.exceptions import InvalidArgumentError
from app.models.scheme import SchemeId, SchemeKind, SolveMethod
from app.schemes.base_scheme import BaseScheme

logger = logging.getLogger(__name__)


class MultistepScheme(BaseScheme):
    """Samples and steps live on t_n = nκ, n = 0..N"""

    kind = SchemeKind.MULTISTEP

    def __init__(self, delta: DeltaGenerator, eps: Optional[float] = None, oversampling: Optional[int] = None):
        super().__init__(SchemeId(delta.kind.value), eps, oversampling)
        self.delta = delta

    @property
    def order(self) -> int:
        return self.delta.order

    @property
    def a_stable(self) -> bool:
        return self.delta.a_stable

    def sample_times(self, kappa: float, n: int) -> np.ndarray:
        return np.arange(n + 1) * kappa

    def weights(self, f: Symbol, kappa: float, n: int) -> WeightTable:
        return cq_weights(f, self.delta, kappa, n, self.eps, oversampling=self.oversampling)

    def forward(self, f: Symbol, kappa: float, samples, method: SolveMethod = SolveMethod.ALL_STEPS) -> np.ndarray:
        samples = np.asarray(samples, dtype=complex)
        n = samples.shape[0] - 1
        method = SolveMethod(method)
        if method == SolveMethod.ALL_STEPS:
            return all_steps_forward(f, self.delta, kappa, samples, n, self.eps, oversampling=self.oversampling)
        if method == SolveMethod.MOT:
            return forward_convolution_mot(self.weights(f, kappa, n), samples)
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
            return all_steps_solve(f, self.delta, kappa, samples, n, self.eps, oversampling=self.oversampling)
        if method == SolveMethod.MOT:
            return solve_equation_mot(self.weights(f, kappa, n), samples)
        return look_ahead_solve(f, self.delta, kappa, samples, n, block=block, eps=self.eps,
                                oversampling=self.oversampling)

    def step_values(self, values: np.ndarray) -> np.ndarray:
        return values

    def step_times(self, kappa: float, n: int) -> np.ndarray:
        return self.sample_times(kappa, n)
