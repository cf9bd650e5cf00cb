"""Discrete Fourier transform conventions and FFT-based convolutions

Conventions (fixed, every CQ algorithm relies on them):

    dft:   x̂_ℓ = Σ_n x_n ζ^{-ℓn},               ζ = exp(2πi/(M+1))
    idft:  x_n = (1/(M+1)) Σ_ℓ x̂_ℓ ζ^{ℓn}

Sequences run along axis 0; any trailing axes (vector or matrix valued
sequences) are transformed component by component. scipy.fft handles
arbitrary lengths (mixed radix with Bluestein fallback for large primes).
"""
import numpy as np
import scipy.fft

from app.config import settings
from app.exceptions import InvalidArgumentError


def as_sequence(x) -> np.ndarray:
    """Coerce input to a complex array with the sequence index on axis 0"""
    arr = np.asarray(x, dtype=complex)
    if arr.ndim == 0 or arr.shape[0] == 0:
        raise InvalidArgumentError("sequence must hold at least one entry")
    return arr


def dft(x) -> np.ndarray:
    """Forward transform, unnormalized (no 1/(M+1) factor)"""
    return scipy.fft.fft(as_sequence(x), axis=0, workers=settings.fft_workers)


def idft(x_hat) -> np.ndarray:
    """Inverse transform, carrying the 1/(M+1) factor"""
    return scipy.fft.ifft(as_sequence(x_hat), axis=0, workers=settings.fft_workers)


def periodic_conv(x, y) -> np.ndarray:
    """
    Periodic convolution (x ⊛ y)_n = Σ_m x_m y_{(n-m) mod (M+1)}.

    Args:
        x: First sequence
        y: Second sequence, same length as ``x``

    Returns:
        idft(dft(x) * dft(y))

    Raises:
        InvalidArgumentError: If the lengths differ
    """
    x = as_sequence(x)
    y = as_sequence(y)
    if x.shape[0] != y.shape[0]:
        raise InvalidArgumentError(
            f"periodic_conv needs equal lengths, got {x.shape[0]} and {y.shape[0]}"
        )
    return idft(dft(x) * dft(y))


def causal_conv(x, y, n: int) -> np.ndarray:
    """
    Causal (triangular) convolution Σ_{m=0}^{k} x_m y_{k-m} for k = 0..n.

    Both inputs are truncated to n+1 entries and zero padded to 2n+2, so the
    periodic convolution of the padded sequences has no wrap-around in its
    first n+1 entries.

    Raises:
        InvalidArgumentError: If either input holds fewer than n+1 entries
    """
    if n < 0:
        raise InvalidArgumentError(f"n must be non-negative, got {n}")
    x = as_sequence(x)
    y = as_sequence(y)
    if x.shape[0] < n + 1 or y.shape[0] < n + 1:
        raise InvalidArgumentError(
            f"causal_conv needs at least {n + 1} entries, got {x.shape[0]} and {y.shape[0]}"
        )
    padded_x = zero_pad(x[: n + 1], 2 * n + 2)
    padded_y = zero_pad(y[: n + 1], 2 * n + 2)
    return periodic_conv(padded_x, padded_y)[: n + 1]


def zero_pad(x: np.ndarray, length: int) -> np.ndarray:
    """Append zeros along axis 0 up to ``length`` entries"""
    out = np.zeros((length,) + x.shape[1:], dtype=complex)
    out[: x.shape[0]] = x
    return out


def half_length(n: int) -> int:
    """Number of leading entries that determine a Hermitian vector of length n+1"""
    return (n + 1) // 2 + 1


def symmetrize(half, n: int) -> np.ndarray:
    """
    Complete a Hermitian vector of length n+1 from its leading entries.

    Fills x_{n+1-ℓ} = conj(x_ℓ) for ℓ = 1..⌊n/2⌋. For even lengths the
    middle entry (ℓ = (n+1)/2) is kept as given.

    Args:
        half: Entries 0..⌊(n+1)/2⌋ (trailing axes allowed)
        n: Last index of the full vector

    Raises:
        InvalidArgumentError: If ``half`` does not hold ⌊(n+1)/2⌋+1 entries
    """
    half = as_sequence(half)
    expected = half_length(n)
    if half.shape[0] != expected:
        raise InvalidArgumentError(
            f"symmetrize(n={n}) needs {expected} leading entries, got {half.shape[0]}"
        )
    full = np.empty((n + 1,) + half.shape[1:], dtype=complex)
    full[:expected] = half
    for ell in range(1, n // 2 + 1):
        full[n + 1 - ell] = np.conj(full[ell])
    return full


def is_hermitian(x, tol: float = 1e-13) -> bool:
    """Check x_{M+1-ℓ} = conj(x_ℓ) up to ``tol`` relative to max |x|"""
    x = as_sequence(x)
    scale = max(np.max(np.abs(x)), 1.0)
    mirrored = np.conj(x[1:][::-1])
    return bool(np.all(np.abs(x[1:] - mirrored) <= tol * scale))
