"""Reference values of causal convolutions with closed-form kernels

y(t) = ∫_0^t k(τ) g(t - τ) dτ by adaptive quadrature (scipy.integrate.quad).

    resolvent(c)     k(τ) = e^{cτ}
    oscillator(c)    k(τ) = sin(cτ)/c
    abel             k(τ) = 1/√(πτ)      (τ = u² removes the endpoint singularity)
    antiderivative   k(τ) = 1
    delay(t0)        y(t) = g(t - t0)
    identity         y(t) = g(t)
"""
from typing import Callable, Optional
import logging
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from app.config import settings
from app.exceptions import OracleFailureError
from app.models.run_config import SymbolId, SymbolSpec

logger = logging.getLogger(__name__)

QUAD_LIMIT = 200


def _kernel(spec: SymbolSpec) -> Optional[Callable[[float], float]]:
    kind, params = spec.kind, spec.params
    if kind == SymbolId.RESOLVENT:
        c = params.get("c", 0.0)
        return lambda tau: np.exp(c * tau)
    if kind == SymbolId.OSCILLATOR:
        c = params.get("c", 1.0)
        return lambda tau: np.sin(c * tau) / c
    if kind == SymbolId.ANTIDERIVATIVE:
        return lambda tau: 1.0
    if kind == SymbolId.POWER and params.get("alpha") == -1.0:
        return lambda tau: 1.0
    return None


def _is_abel(spec: SymbolSpec) -> bool:
    return spec.kind == SymbolId.ABEL or (spec.kind == SymbolId.POWER and spec.params.get("alpha") == -0.5)


def has_oracle(spec: SymbolSpec) -> bool:
    return (_kernel(spec) is not None or _is_abel(spec)
            or spec.kind in (SymbolId.DELAY, SymbolId.IDENTITY))


def _integrate(func: Callable[[float], float], upper: float, tol: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, _ = quad(func, 0.0, upper, epsabs=tol, epsrel=tol, limit=QUAD_LIMIT)
        except IntegrationWarning as e:
            raise OracleFailureError(f"quadrature did not converge on [0, {upper:g}]: {e}")
    if not np.isfinite(value):
        raise OracleFailureError(f"quadrature returned {value} on [0, {upper:g}]")
    return value


def oracle_convolution(
    spec: SymbolSpec,
    g: Callable[[np.ndarray], np.ndarray],
    times,
    tol: Optional[float] = None,
) -> np.ndarray:
    """
    Exact convolution of a closed-form kernel with g at the given times.

    Args:
        spec: Symbol with a registered kernel
        g: Causal signal (vectorized)
        times: Evaluation times
        tol: Quadrature tolerance (default: settings.oracle_tol)

    Raises:
        OracleFailureError: No kernel for the symbol, or quadrature failure
    """
    tol = settings.oracle_tol if tol is None else tol
    times = np.asarray(times, dtype=float)

    if spec.kind == SymbolId.IDENTITY:
        return np.asarray(g(times), dtype=float)
    if spec.kind == SymbolId.DELAY:
        return np.asarray(g(times - spec.params.get("t0", 0.0)), dtype=float)

    scalar_g = lambda t: float(g(np.array(t)))
    out = np.zeros(times.shape)
    if _is_abel(spec):
        for idx, t in np.ndenumerate(times):
            if t > 0:
                out[idx] = 2.0 / np.sqrt(np.pi) * _integrate(lambda u: scalar_g(t - u * u), np.sqrt(t), tol)
        return out

    kernel = _kernel(spec)
    if kernel is None:
        raise OracleFailureError(f"no reference kernel registered for {spec.label()}")
    for idx, t in np.ndenumerate(times):
        if t > 0:
            out[idx] = _integrate(lambda tau: kernel(tau) * scalar_g(t - tau), t, tol)
    logger.debug(f"Oracle {spec.label()} evaluated at {times.size} times")
    return out
