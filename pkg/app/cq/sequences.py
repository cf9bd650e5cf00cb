"""Shape helpers for sampled sequences

Time samples run along axis 0. Scalar sequences (1-D input) are promoted to
one-column arrays internally and squeezed back on output.
"""
from typing import Tuple

import numpy as np

from app.exceptions import InvalidArgumentError


def as_samples(g, width: int, min_length: int = 1) -> Tuple[np.ndarray, bool]:
    """
    Promote samples to a complex (n+1, width) array.

    Returns:
        (array, squeezed) where ``squeezed`` records a 1-D input
    """
    arr = np.asarray(g, dtype=complex)
    squeezed = arr.ndim == 1
    if squeezed:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[1] != width:
        raise InvalidArgumentError(f"samples of shape {np.shape(g)} do not conform to width {width}")
    if arr.shape[0] < min_length:
        raise InvalidArgumentError(f"need at least {min_length} samples, got {arr.shape[0]}")
    return arr, squeezed


def as_stage_samples(g, stages: int, width: int, min_length: int = 1) -> Tuple[np.ndarray, bool]:
    """
    Promote stage samples to a complex (n+1, stages, width) array.

    Returns:
        (array, squeezed) where ``squeezed`` records an (n+1, stages) input
    """
    arr = np.asarray(g, dtype=complex)
    squeezed = arr.ndim == 2
    if squeezed:
        arr = arr[:, :, None]
    if arr.ndim != 3 or arr.shape[1] != stages or arr.shape[2] != width:
        raise InvalidArgumentError(
            f"stage samples of shape {np.shape(g)} do not conform to ({stages}, {width}) blocks"
        )
    if arr.shape[0] < min_length:
        raise InvalidArgumentError(f"need at least {min_length} stage blocks, got {arr.shape[0]}")
    return arr, squeezed


def restore(arr: np.ndarray, squeezed: bool) -> np.ndarray:
    """Undo the promotion done by as_samples / as_stage_samples"""
    return arr[..., 0] if squeezed else arr
