"""Modified Bessel functions K0 and K1 of complex argument, Re z > 0

Two branches:
    |z| <= settings.bessel_series_radius   ascending series
    |z| >  settings.bessel_series_radius   Steed's continued fraction (Temme's CF2)

Both branches work on numpy arrays and have real coefficients, so
K(conj z) = conj K(z) holds by construction.
"""
from typing import Tuple
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.config import settings
from app.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.57721566490153286061
SERIES_TERMS = 40
CF_MAX_ITERATIONS = 20000
CF_TOLERANCE = 1e-16
# e^{-z} underflows for Re z beyond this
UNDERFLOW_RE = 700.0


class KPair(BaseModel):
    """K0 and K1 at the same arguments, plus the underflow mask"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    k0: np.ndarray
    k1: np.ndarray
    underflowed: np.ndarray


def _check_argument(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if np.any(~(z.real > 0)):
        raise InvalidArgumentError("K0/K1 need Re z > 0")
    return z


def _harmonic(n_terms: int) -> np.ndarray:
    """H_0..H_{n-1} (H_0 = 0)"""
    out = np.zeros(n_terms)
    out[1:] = np.cumsum(1.0 / np.arange(1, n_terms))
    return out


def _series(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Ascending series

        K0 = -(ln(z/2) + γ) I0 + Σ_{k>=1} H_k (z²/4)^k / (k!)²
        K1 = 1/z + ln(z/2) I1 - (z/4) Σ_{k>=0} (ψ(k+1) + ψ(k+2)) (z²/4)^k / (k!(k+1)!)
    """
    quarter = z * z / 4.0
    harmonic = _harmonic(SERIES_TERMS + 1)
    log_half = np.log(z / 2.0)

    term0 = np.ones_like(z)
    term1 = np.ones_like(z)
    i0 = np.zeros_like(z)
    i1 = np.zeros_like(z)
    sum0 = np.zeros_like(z)
    sum1 = np.zeros_like(z)
    for k in range(SERIES_TERMS):
        if k > 0:
            term0 = term0 * quarter / (k * k)
            term1 = term1 * quarter / (k * (k + 1))
        i0 += term0
        i1 += term1
        sum0 += harmonic[k] * term0
        sum1 += (harmonic[k] + harmonic[k + 1] - 2.0 * EULER_GAMMA) * term1

    i1 = i1 * z / 2.0
    k0 = -(log_half + EULER_GAMMA) * i0 + sum0
    k1 = 1.0 / z + log_half * i1 - (z / 4.0) * sum1
    return k0, k1


def _continued_fraction(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Steed's algorithm for CF2 at order zero; each entry iterates until its own sum converges"""
    k0 = np.zeros_like(z)
    k1 = np.zeros_like(z)
    if z.size == 0:
        return k0, k1

    idx = np.arange(z.size)
    x = z.copy()
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(x)
    q2 = np.ones_like(x)
    a1 = 0.25
    q = np.full_like(x, a1)
    c = np.full_like(x, a1)
    a = -a1
    s = 1.0 + q * delh

    done_h = np.zeros_like(x)
    done_s = np.zeros_like(x)
    for i in range(2, CF_MAX_ITERATIONS):
        a -= 2 * (i - 1)
        c = -a * c / i
        q_new = (q1 - b * q2) / a
        q1 = q2
        q2 = q_new
        q = q + c * q_new
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = h + delh
        dels = q * delh
        s = s + dels

        converged = np.abs(dels) < CF_TOLERANCE * np.abs(s)
        if np.any(converged):
            done_h[idx[converged]] = h[converged]
            done_s[idx[converged]] = s[converged]
            keep = ~converged
            idx, x, b, d, h, delh, q1, q2, q, c, s = (
                arr[keep] for arr in (idx, x, b, d, h, delh, q1, q2, q, c, s)
            )
            if idx.size == 0:
                break
    else:
        logger.warning(f"K0/K1 continued fraction did not converge for {idx.size} arguments")
        done_h[idx] = h
        done_s[idx] = s

    h = a1 * done_h
    k0 = np.sqrt(np.pi / (2.0 * z)) * np.exp(-z) / done_s
    k1 = k0 * (z + 0.5 - h) / z
    return k0, k1


def evaluate_k0_k1(z) -> KPair:
    """
    K0(z) and K1(z) together.

    Arguments with Re z beyond the underflow threshold return zero and are
    flagged in ``underflowed``.

    Raises:
        InvalidArgumentError: If some Re z <= 0
    """
    z = _check_argument(z)
    flat = z.ravel()
    k0 = np.zeros_like(flat)
    k1 = np.zeros_like(flat)

    underflowed = flat.real > UNDERFLOW_RE
    if np.any(underflowed):
        logger.warning(f"K0/K1 underflow to zero at {int(underflowed.sum())} arguments (Re z > {UNDERFLOW_RE:g})")

    series = (np.abs(flat) <= settings.bessel_series_radius) & ~underflowed
    fraction = ~series & ~underflowed
    if np.any(series):
        k0[series], k1[series] = _series(flat[series])
    if np.any(fraction):
        k0[fraction], k1[fraction] = _continued_fraction(flat[fraction])

    return KPair(k0=k0.reshape(z.shape), k1=k1.reshape(z.shape), underflowed=underflowed.reshape(z.shape))


def k0(z):
    """K0(z) for Re z > 0 (scalar in, complex scalar out)"""
    value = evaluate_k0_k1(z).k0
    return complex(value) if value.ndim == 0 else value


def k1(z):
    """K1(z) for Re z > 0 (scalar in, complex scalar out)"""
    value = evaluate_k0_k1(z).k1
    return complex(value) if value.ndim == 0 else value


def _hankel_series(w: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """H0^(1)(w), H1^(1)(w) from the ascending series of J and Y"""
    quarter = w * w / 4.0
    harmonic = _harmonic(SERIES_TERMS + 1)
    log_half = np.log(w / 2.0)

    term0 = np.ones_like(w)
    term1 = np.ones_like(w)
    j0 = np.zeros_like(w)
    j1 = np.zeros_like(w)
    sum0 = np.zeros_like(w)
    sum1 = np.zeros_like(w)
    for k in range(SERIES_TERMS):
        if k > 0:
            term0 = -term0 * quarter / (k * k)
            term1 = -term1 * quarter / (k * (k + 1))
        j0 += term0
        j1 += term1
        psi0 = harmonic[k] - EULER_GAMMA
        sum0 += 2.0 * psi0 * term0
        sum1 += (harmonic[k] + harmonic[k + 1] - 2.0 * EULER_GAMMA) * term1

    j1 = j1 * w / 2.0
    y0 = (2.0 / np.pi) * log_half * j0 - sum0 / np.pi
    y1 = -2.0 / (np.pi * w) + (2.0 / np.pi) * log_half * j1 - (w / (2.0 * np.pi)) * sum1
    return j0 + 1j * y0, j1 + 1j * y1


def hankel_bridge_check(z) -> Tuple[float, float]:
    """
    Residuals of (i/4) H0^(1)(iz) = K0(z)/(2π) and (1/4) H1^(1)(iz) = -K1(z)/(2π).

    The Hankel values come from an independent series for J and Y at w = iz.

    Returns:
        (relative residual of the K0 identity, relative residual of the K1 identity)
    """
    z = _check_argument(z)
    h0, h1 = _hankel_series(1j * z)
    pair = evaluate_k0_k1(z)
    lhs0, rhs0 = 0.25j * h0, pair.k0 / (2 * np.pi)
    lhs1, rhs1 = 0.25 * h1, -pair.k1 / (2 * np.pi)
    res0 = np.max(np.abs(lhs0 - rhs0) / np.abs(rhs0))
    res1 = np.max(np.abs(lhs1 - rhs1) / np.abs(rhs1))
    return float(res0), float(res1)
