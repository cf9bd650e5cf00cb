"""8-bit portable graymap (binary PGM) with a JSON sidecar recording the value range"""
from pathlib import Path
from typing import Optional, Union
import logging

import numpy as np
from pydantic import BaseModel

logger = logging.getLogger(__name__)


class GraymapHeader(BaseModel):
    """Linear map value ↦ round(255 (value - min) / (max - min))"""

    width: int
    height: int
    min: float
    max: float
    time: Optional[float] = None
    requested_time: Optional[float] = None


def to_gray(matrix: np.ndarray, vmin: float, vmax: float) -> np.ndarray:
    if vmax > vmin:
        scaled = (matrix - vmin) / (vmax - vmin)
    else:
        scaled = np.zeros_like(matrix)
    return np.clip(np.rint(255.0 * scaled), 0, 255).astype(np.uint8)


def write_graymap(
    path: Union[str, Path],
    matrix,
    time: Optional[float] = None,
    requested_time: Optional[float] = None,
) -> GraymapHeader:
    """
    Write ``matrix`` (rows top to bottom) as P5 plus ``<path>.json``.

    Args:
        time: Step time the matrix belongs to
        requested_time: Time asked for, when it was snapped to ``time``

    Returns:
        The sidecar header
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    height, width = matrix.shape
    header = GraymapHeader(width=width, height=height, min=float(np.min(matrix)),
                           max=float(np.max(matrix)), time=time,
                           requested_time=requested_time)
    pixels = to_gray(matrix, header.min, header.max)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())
    path.with_suffix(path.suffix + ".json").write_text(header.model_dump_json(indent=2))
    logger.debug(f"Wrote {width}x{height} graymap to {path}")
    return header


def read_graymap(path: Union[str, Path]) -> np.ndarray:
    """Pixels of a P5 file written by write_graymap"""
    raw = Path(path).read_bytes()
    magic, dims, maxval, pixels = raw.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError(f"{path} is not an 8-bit P5 graymap")
    width, height = (int(v) for v in dims.split())
    return np.frombuffer(pixels, dtype=np.uint8).reshape(height, width)
