"""Base scheme class shared by multistep and Runge-Kutta discretizations"""
from abc import ABC, abstractmethod
from typing import Callable, Optional
import logging

import numpy as np

from app.cq.multistep_cq import WeightTable
from app.cq.symbols import Symbol
from app.models.scheme import SchemeId, SchemeInfo, SchemeKind, SolveMethod

logger = logging.getLogger(__name__)


class BaseScheme(ABC):
    """Abstract time discretization

    A scheme samples data on its time grid (steps for multistep methods,
    stages for Runge-Kutta methods), convolves or deconvolves those samples
    with a symbol and turns the result into step values. Concrete schemes
    (MultistepScheme, RungeKuttaScheme) inherit from this class.
    """

    kind: SchemeKind

    def __init__(self, scheme_id: SchemeId, eps: Optional[float] = None, oversampling: Optional[int] = None):
        """
        Args:
            scheme_id: Public id of the scheme
            eps: Contour accuracy parameter (default: settings.contour_eps)
            oversampling: Contour nodes per step (default: settings.contour_oversampling)
        """
        self.scheme_id = SchemeId(scheme_id)
        self.eps = eps
        self.oversampling = oversampling

    @property
    @abstractmethod
    def order(self) -> int:
        pass

    @property
    @abstractmethod
    def a_stable(self) -> bool:
        pass

    @property
    def stages(self) -> int:
        return 1

    @abstractmethod
    def sample_times(self, kappa: float, n: int) -> np.ndarray:
        """Times at which data is sampled for time indices 0..n"""
        pass

    def sample(self, g: Callable[[np.ndarray], np.ndarray], kappa: float, n: int) -> np.ndarray:
        """
        Sample a vectorized function of time on the scheme's grid.

        Args:
            g: Map from an array of times to values (same shape, or with a trailing vector axis)
            kappa: Time step
            n: Last time index

        Returns:
            Samples with the time index on axis 0
        """
        return np.asarray(g(self.sample_times(kappa, n)), dtype=complex)

    @abstractmethod
    def weights(self, f: Symbol, kappa: float, n: int) -> WeightTable:
        pass

    @abstractmethod
    def forward(self, f: Symbol, kappa: float, samples, method: SolveMethod = SolveMethod.ALL_STEPS) -> np.ndarray:
        """Discrete convolution of samples with the weights of f"""
        pass

    @abstractmethod
    def solve(
        self,
        f: Symbol,
        kappa: float,
        samples,
        method: SolveMethod = SolveMethod.ALL_STEPS,
        block: Optional[int] = None,
    ) -> np.ndarray:
        """Solution of the discrete convolution equation with right-hand side samples"""
        pass

    @abstractmethod
    def step_values(self, values: np.ndarray) -> np.ndarray:
        """Step values from outputs on the sampling grid"""
        pass

    @abstractmethod
    def step_times(self, kappa: float, n: int) -> np.ndarray:
        """Times of the step values returned by step_values"""
        pass

    def info(self) -> SchemeInfo:
        return SchemeInfo(id=self.scheme_id, kind=self.kind, order=self.order, a_stable=self.a_stable,
                          stages=self.stages)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.scheme_id.value})"
