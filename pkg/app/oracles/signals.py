"""Causal data signals g(t) (zero for t < 0), vectorized over numpy arrays"""
from typing import Callable

import numpy as np

from app.models.run_config import SignalId


def t5exp(rate: float = 1.0, amplitude: float = 1.0, power: int = 5) -> Callable[[np.ndarray], np.ndarray]:
    """g(t) = amplitude · t^power · e^{-rate t}"""

    def g(t):
        t = np.asarray(t, dtype=float)
        positive = np.where(t > 0, t, 0.0)
        return np.where(t > 0, amplitude * positive ** power * np.exp(-rate * positive), 0.0)

    return g


def monomial(power: int = 2, amplitude: float = 1.0) -> Callable[[np.ndarray], np.ndarray]:
    """g(t) = amplitude · t^power for t >= 0; power 0 is the Heaviside step"""

    def g(t):
        t = np.asarray(t, dtype=float)
        positive = np.where(t >= 0, t, 0.0)
        return np.where(t >= 0, amplitude * positive ** power, 0.0)

    return g


def zero() -> Callable[[np.ndarray], np.ndarray]:
    def g(t):
        return np.zeros_like(np.asarray(t, dtype=float))

    return g


def make_signal(signal: SignalId, power: int = 5, rate: float = 1.0, amplitude: float = 1.0):
    """Build a signal from its id and parameters"""
    signal = SignalId(signal)
    if signal == SignalId.T5EXP:
        return t5exp(rate=rate, amplitude=amplitude, power=power)
    if signal == SignalId.MONOMIAL:
        return monomial(power=power, amplitude=amplitude)
    return zero()
