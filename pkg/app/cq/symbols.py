"""Transfer functions F: C₊ → complex matrices and a library of closed-form symbols

A Symbol is known only through pointwise evaluation. Scalar symbols are
1×1 matrices. Evaluations always return a complex (d1, d2) array.
"""
from typing import Callable, Optional, Sequence, Tuple
import logging

import numpy as np
from pydantic import BaseModel, Field

from app.exceptions import InvalidArgumentError, SingularSymbolError
from app.utils.parallel import map_nodes

logger = logging.getLogger(__name__)


class SymbolBound(BaseModel):
    """Growth bound ‖F(s)‖ ≤ C(Re s)|s|^mu, kept as metadata only"""

    mu: float = Field(..., description="Exponent of |s|")
    m: float = Field(0.0, ge=0, description="Exponent of the Re s blow-up factor")
    c0: float = Field(1.0, gt=0, description="Bound constant")


class Symbol:
    """Behavioural transfer function evaluated at points of the right half-plane"""

    def __init__(
        self,
        func: Callable[[complex], object],
        dims: Tuple[int, int] = (1, 1),
        conjugate_symmetric: bool = False,
        name: str = "symbol",
        bound: Optional[SymbolBound] = None,
        thread_safe: bool = True,
    ):
        """
        Args:
            func: Map s ↦ F(s) returning a scalar or a (d1, d2) array
            dims: Matrix shape (d1, d2)
            conjugate_symmetric: Whether F(conj s) = conj F(s)
            name: Label used in logs and file headers
            bound: Optional growth bound metadata
            thread_safe: False forces sequential node evaluation
        """
        if len(dims) != 2 or min(dims) < 1:
            raise InvalidArgumentError(f"invalid symbol dims {dims}")
        self._func = func
        self.dims = (int(dims[0]), int(dims[1]))
        self.conjugate_symmetric = conjugate_symmetric
        self.name = name
        self.bound = bound
        self.thread_safe = thread_safe

    @property
    def is_square(self) -> bool:
        return self.dims[0] == self.dims[1]

    def __call__(self, s: complex) -> np.ndarray:
        value = np.asarray(self._func(complex(s)), dtype=complex)
        if value.ndim == 0:
            value = value.reshape(1, 1)
        if value.shape != self.dims:
            raise InvalidArgumentError(
                f"symbol {self.name} returned shape {value.shape}, expected {self.dims}"
            )
        return value

    def scalar(self, s: complex) -> complex:
        """Evaluate a 1×1 symbol as a plain complex number"""
        return complex(self(s)[0, 0])

    def evaluate_many(self, points: Sequence[complex], max_workers: Optional[int] = None) -> np.ndarray:
        """
        Evaluate at many points.

        Returns:
            Array of shape (len(points), d1, d2)
        """
        workers = max_workers if self.thread_safe else 1
        values = map_nodes(self, list(points), max_workers=workers)
        if not values:
            return np.zeros((0,) + self.dims, dtype=complex)
        return np.stack(values)

    def __repr__(self) -> str:
        return f"Symbol(name={self.name!r}, dims={self.dims})"


def resolvent(c: complex) -> Symbol:
    """s ↦ 1/(s - c); the causal kernel is e^{ct}"""
    c = complex(c)

    def func(s: complex) -> complex:
        if s == c:
            raise SingularSymbolError(f"resolvent(c={c}) evaluated at its pole", s=s)
        return 1.0 / (s - c)

    return Symbol(
        func,
        conjugate_symmetric=(c.imag == 0.0),
        name=f"resolvent(c={c.real:g}{c.imag:+g}j)" if c.imag else f"resolvent(c={c.real:g})",
        bound=SymbolBound(mu=-1.0, m=1.0),
    )


def oscillator(c: float) -> Symbol:
    """s ↦ 1/(s² + c²); the causal kernel is sin(ct)/c"""
    if c <= 0:
        raise InvalidArgumentError(f"oscillator frequency must be positive, got {c}")

    def func(s: complex) -> complex:
        return 1.0 / (s * s + c * c)

    return Symbol(func, conjugate_symmetric=True, name=f"oscillator(c={c:g})",
                  bound=SymbolBound(mu=-2.0, m=1.0))


def power(alpha: float) -> Symbol:
    """s ↦ s^alpha on the principal branch (arg s in (-π/2, π/2) on C₊)"""
    alpha = float(alpha)

    def func(s: complex) -> complex:
        return s ** alpha

    return Symbol(func, conjugate_symmetric=True, name=f"power(alpha={alpha:g})",
                  bound=SymbolBound(mu=alpha, m=max(0.0, -alpha)))


def delay(t0: float) -> Symbol:
    """s ↦ e^{-s t0}, the delay by t0"""
    if t0 < 0:
        raise InvalidArgumentError(f"delay must be non-negative, got {t0}")
    t0 = float(t0)

    def func(s: complex) -> complex:
        return np.exp(-s * t0)

    return Symbol(func, conjugate_symmetric=True, name=f"delay(t0={t0:g})",
                  bound=SymbolBound(mu=0.0))


def identity(d: int = 1) -> Symbol:
    """Constant identity symbol of size d"""
    eye = np.eye(d, dtype=complex)
    return Symbol(lambda s: eye, dims=(d, d), conjugate_symmetric=True, name=f"identity({d})",
                  bound=SymbolBound(mu=0.0))


def constant(matrix) -> Symbol:
    """Constant symbol s ↦ matrix"""
    value = np.atleast_2d(np.asarray(matrix, dtype=complex))
    real = bool(np.all(value.imag == 0))
    return Symbol(lambda s: value, dims=value.shape, conjugate_symmetric=real, name="constant",
                  bound=SymbolBound(mu=0.0))


def compose(f1: Symbol, f2: Symbol) -> Symbol:
    """Pointwise product s ↦ F1(s) F2(s)"""
    if f1.dims[1] != f2.dims[0]:
        raise InvalidArgumentError(f"cannot compose {f1.dims} with {f2.dims}")

    def func(s: complex) -> np.ndarray:
        return f1(s) @ f2(s)

    bound = None
    if f1.bound and f2.bound:
        bound = SymbolBound(mu=f1.bound.mu + f2.bound.mu, m=f1.bound.m + f2.bound.m,
                            c0=f1.bound.c0 * f2.bound.c0)
    return Symbol(
        func,
        dims=(f1.dims[0], f2.dims[1]),
        conjugate_symmetric=f1.conjugate_symmetric and f2.conjugate_symmetric,
        name=f"{f1.name}*{f2.name}",
        bound=bound,
        thread_safe=f1.thread_safe and f2.thread_safe,
    )


def inverse(f: Symbol, rcond: float = 1e-14) -> Symbol:
    """
    Pointwise inverse s ↦ F(s)⁻¹.

    Raises (at evaluation):
        SingularSymbolError: If F(s) is numerically singular
    """
    if not f.is_square:
        raise InvalidArgumentError(f"cannot invert a {f.dims} symbol")

    def func(s: complex) -> np.ndarray:
        value = f(s)
        if np.linalg.cond(value) * rcond > 1.0:
            raise SingularSymbolError(f"{f.name} is numerically singular at s={s}", s=s)
        return np.linalg.inv(value)

    return Symbol(func, dims=f.dims, conjugate_symmetric=f.conjugate_symmetric,
                  name=f"inverse({f.name})", thread_safe=f.thread_safe)


def scaled_argument(f: Symbol, c: float) -> Symbol:
    """s ↦ F(s/c), the transfer function of the same operator at speed c"""
    if c <= 0:
        raise InvalidArgumentError(f"speed must be positive, got {c}")
    return Symbol(lambda s: f(s / c), dims=f.dims, conjugate_symmetric=f.conjugate_symmetric,
                  name=f"{f.name}(s/{c:g})", bound=f.bound, thread_safe=f.thread_safe)
