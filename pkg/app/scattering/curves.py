"""1-periodic parametrizations r ↦ x(r) of smooth closed plane curves

All maps are vectorized: an array of parameters of shape (n,) gives points
of shape (n, 2). Curves are traversed counterclockwise so that
n(r) = (x2'(r), -x1'(r)) points outward.
"""
from typing import Callable, Sequence
import logging

import numpy as np

from app.constants.calderon import MIN_SPEED
from app.exceptions import GeometryError, InvalidArgumentError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi
CHECK_SAMPLES = 2048


class Curve:
    """Closed curve with its parametrization and derivative"""

    def __init__(self, name: str, x: Callable[[np.ndarray], np.ndarray], dx: Callable[[np.ndarray], np.ndarray]):
        self.name = name
        self._x = x
        self._dx = dx
        self._check()

    def x(self, r) -> np.ndarray:
        return self._x(np.atleast_1d(np.asarray(r, dtype=float)))

    def dx(self, r) -> np.ndarray:
        return self._dx(np.atleast_1d(np.asarray(r, dtype=float)))

    def normal(self, r) -> np.ndarray:
        """Unnormalized outward normal (x2', -x1')"""
        d = self.dx(r)
        return np.stack([d[:, 1], -d[:, 0]], axis=1)

    def _check(self) -> None:
        r = np.linspace(0.0, 1.0, CHECK_SAMPLES, endpoint=False)
        speed = np.linalg.norm(self.dx(r), axis=1)
        if np.min(speed) <= MIN_SPEED:
            raise GeometryError(f"curve {self.name} is degenerate (|x'| vanishes)")
        if not np.allclose(self.x([0.0]), self.x([1.0]), atol=1e-12):
            raise GeometryError(f"curve {self.name} is not 1-periodic")
        if self.signed_area() <= 0.0:
            raise GeometryError(f"curve {self.name} is traversed clockwise (signed area {self.signed_area():.3g})")

    def signed_area(self) -> float:
        """Enclosed area, positive for counterclockwise traversal"""
        r = np.linspace(0.0, 1.0, CHECK_SAMPLES, endpoint=False)
        p, d = self.x(r), self.dx(r)
        return 0.5 * float(np.mean(p[:, 0] * d[:, 1] - p[:, 1] * d[:, 0]))

    def __repr__(self) -> str:
        return f"Curve({self.name})"


def circle(radius: float = 1.0, center: Sequence[float] = (0.0, 0.0)) -> Curve:
    if radius <= 0:
        raise InvalidArgumentError(f"radius must be positive, got {radius}")
    cx, cy = center

    def x(r):
        return np.stack([cx + radius * np.cos(TWO_PI * r), cy + radius * np.sin(TWO_PI * r)], axis=1)

    def dx(r):
        return TWO_PI * radius * np.stack([-np.sin(TWO_PI * r), np.cos(TWO_PI * r)], axis=1)

    return Curve(f"circle(radius={radius:g})", x, dx)


def ellipse(a: float, b: float, center: Sequence[float] = (0.0, 0.0)) -> Curve:
    if a <= 0 or b <= 0:
        raise InvalidArgumentError(f"semi-axes must be positive, got {a}, {b}")
    cx, cy = center

    def x(r):
        return np.stack([cx + a * np.cos(TWO_PI * r), cy + b * np.sin(TWO_PI * r)], axis=1)

    def dx(r):
        return TWO_PI * np.stack([-a * np.sin(TWO_PI * r), b * np.cos(TWO_PI * r)], axis=1)

    return Curve(f"ellipse(a={a:g},b={b:g})", x, dx)


def kite() -> Curve:
    """x(r) = (cos 2πr + 0.65 cos 4πr - 0.65, 1.5 sin 2πr)"""

    def x(r):
        t = TWO_PI * r
        return np.stack([np.cos(t) + 0.65 * np.cos(2 * t) - 0.65, 1.5 * np.sin(t)], axis=1)

    def dx(r):
        t = TWO_PI * r
        return TWO_PI * np.stack([-np.sin(t) - 1.3 * np.sin(2 * t), 1.5 * np.cos(t)], axis=1)

    return Curve("kite", x, dx)


def fourier_curve(cos_x, sin_x, cos_y, sin_y, name: str = "fourier") -> Curve:
    """
    Curve from Fourier coefficients.

        x1(r) = Σ_k cos_x[k] cos(2πkr) + sin_x[k] sin(2πkr)
        x2(r) = Σ_k cos_y[k] cos(2πkr) + sin_y[k] sin(2πkr)

    Coefficient k = 0 of the sine lists is ignored.
    """
    coeffs = [np.asarray(v, dtype=float) for v in (cos_x, sin_x, cos_y, sin_y)]
    length = max(v.size for v in coeffs)
    if length == 0:
        raise InvalidArgumentError("fourier curve needs at least one coefficient")
    cx, sx, cy, sy = (np.pad(v, (0, length - v.size)) for v in coeffs)
    k = np.arange(length)

    def x(r):
        phase = TWO_PI * np.outer(r, k)
        return np.stack([np.cos(phase) @ cx + np.sin(phase) @ sx,
                         np.cos(phase) @ cy + np.sin(phase) @ sy], axis=1)

    def dx(r):
        phase = TWO_PI * np.outer(r, k)
        scale = TWO_PI * k
        return np.stack([np.cos(phase) @ (scale * sx) - np.sin(phase) @ (scale * cx),
                         np.cos(phase) @ (scale * sy) - np.sin(phase) @ (scale * cy)], axis=1)

    return Curve(name, x, dx)


def get_curve(spec: str) -> Curve:
    """
    Parse a geometry id: ``circle[:radius=R]``, ``ellipse:a=A,b=B``, ``kite``.

    Raises:
        InvalidArgumentError: Unknown shape or malformed parameters
    """
    name, _, raw = spec.partition(":")
    params = {}
    for item in filter(None, raw.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidArgumentError(f"malformed geometry parameter {item!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise InvalidArgumentError(f"geometry parameter {key} must be numeric, got {value!r}")

    name = name.strip().lower()
    if name == "circle":
        return circle(params.get("radius", 1.0))
    if name == "ellipse":
        return ellipse(params.get("a", 1.0), params.get("b", 0.5))
    if name == "kite":
        return kite()
    raise InvalidArgumentError(f"unknown geometry {name!r}; expected circle, ellipse or kite")
