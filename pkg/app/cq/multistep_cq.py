"""Multistep convolution quadrature

Weights ω_n of F(δ(ζ)/κ) = Σ ω_n ζ^n are computed with the trapezoidal rule
on the circle |ζ| = R; convolutions and convolution equations are evaluated
either by marching on in time (MoT), all steps at once in the scaled Fourier
domain, or by the look-ahead block strategy.
"""
from enum import Enum
from typing import Callable, Optional, Tuple
import logging

import numpy as np
import scipy.linalg
import scipy.signal
from numpy.polynomial import polynomial as P

from app.config import settings
from app.cq.dft_core import causal_conv, dft, half_length, idft, symmetrize, zero_pad
from app.cq.sequences import as_samples, restore
from app.cq.symbols import Symbol
from app.exceptions import (
    CQError,
    InvalidArgumentError,
    NodeEvaluationError,
    UnsolvableEquationError,
)
from app.utils.parallel import map_nodes

logger = logging.getLogger(__name__)

MACHINE_EPS = float(np.finfo(float).eps)


class DeltaKind(str, Enum):
    """Multistep generator families"""
    BE = "be"
    BDF2 = "bdf2"
    TR = "tr"
    BDF3 = "bdf3"
    BDF4 = "bdf4"
    BDF5 = "bdf5"
    BDF6 = "bdf6"


class DeltaGenerator:
    """Characteristic function δ(ζ) = num(ζ)/den(ζ) of a linear multistep method"""

    def __init__(self, kind: DeltaKind, numerator, denominator, order: int, a_stable: bool):
        """
        Args:
            kind: Generator family
            numerator: Ascending coefficients of num(ζ)
            denominator: Ascending coefficients of den(ζ)
            order: Convergence order q
            a_stable: Whether the method is A-stable (usable for waves)
        """
        self.kind = kind
        self.numerator = np.asarray(numerator, dtype=np.result_type(np.asarray(numerator), float))
        self.denominator = np.asarray(denominator, dtype=np.result_type(np.asarray(denominator), float))
        self.order = order
        self.a_stable = a_stable

    @property
    def real_coefficients(self) -> bool:
        """Real num/den coefficients; with a conjugate-symmetric symbol F̂ is then Hermitian"""
        return bool(np.isrealobj(self.numerator) and np.isrealobj(self.denominator))

    @property
    def delta_at_zero(self) -> complex:
        return complex(self.numerator[0] / self.denominator[0])

    def __call__(self, zeta):
        return P.polyval(zeta, self.numerator) / P.polyval(zeta, self.denominator)

    def coefficients(self, n: int) -> np.ndarray:
        """Taylor coefficients δ_0..δ_n at ζ = 0"""
        impulse = np.zeros(n + 1)
        impulse[0] = 1.0
        return scipy.signal.lfilter(self.numerator, self.denominator, impulse).astype(complex)

    def has_positive_real_part(self, radii=(0.0, 0.5, 0.9, 0.99, 0.999), n_angles: int = 720) -> bool:
        """Sample Re δ(ζ) > 0 on circles inside the unit disk"""
        angles = np.linspace(0.0, 2 * np.pi, n_angles, endpoint=False)
        zeta = np.concatenate([r * np.exp(1j * angles) for r in radii])
        return bool(np.all(np.real(self(zeta)) > 0))

    def __repr__(self) -> str:
        return f"DeltaGenerator({self.kind.value}, order={self.order})"


def bdf(p: int) -> DeltaGenerator:
    """δ(ζ) = Σ_{ℓ=1}^p (1/ℓ)(1-ζ)^ℓ; A-stable only for p ≤ 2"""
    if not 1 <= p <= 6:
        raise InvalidArgumentError(f"BDF order must be in 1..6, got {p}")
    coeffs = np.zeros(p + 1)
    for ell in range(1, p + 1):
        term = P.polypow([1.0, -1.0], ell) / ell
        coeffs[: term.size] += term
    kind = DeltaKind.BE if p == 1 else DeltaKind(f"bdf{p}")
    if p > 2:
        logger.debug(f"BDF{p} generator is not A-stable; not suitable for wave problems")
    return DeltaGenerator(kind, coeffs, [1.0], order=p, a_stable=p <= 2)


def trapezoidal() -> DeltaGenerator:
    """δ(ζ) = 2(1-ζ)/(1+ζ)"""
    return DeltaGenerator(DeltaKind.TR, [2.0, -2.0], [1.0, 1.0], order=2, a_stable=True)


def get_delta(kind) -> DeltaGenerator:
    """Build a generator from its kind (enum or string id)"""
    kind = DeltaKind(kind)
    if kind == DeltaKind.TR:
        return trapezoidal()
    if kind == DeltaKind.BE:
        return bdf(1)
    return bdf(int(kind.value[3:]))


def delta_coefficients(delta: DeltaGenerator, n: int) -> np.ndarray:
    """Taylor coefficients of δ(ζ): BE (1,-1,0,..), BDF2 (3/2,-2,1/2,0,..), TR (2,-4,4,-4,..)"""
    return delta.coefficients(n)


class WeightTable:
    """Immutable table of CQ weights ω_0..ω_N (or Runge-Kutta blocks W_0..W_N)"""

    def __init__(
        self,
        weights: np.ndarray,
        kappa: float,
        radius: float,
        eps: float,
        kind: str,
        symbol_name: str = "symbol",
        tableau: Optional[str] = None,
        stages: int = 1,
    ):
        weights = np.array(weights, dtype=complex)
        if weights.ndim != 3:
            raise InvalidArgumentError(f"weights must be a (N+1, d1, d2) array, got {weights.shape}")
        weights.flags.writeable = False
        self.weights = weights
        self.kappa = float(kappa)
        self.radius = float(radius)
        self.eps = float(eps)
        self.kind = kind
        self.symbol_name = symbol_name
        self.tableau = tableau
        self.stages = stages

    @property
    def N(self) -> int:
        return self.weights.shape[0] - 1

    @property
    def dims(self) -> Tuple[int, int]:
        return self.weights.shape[1], self.weights.shape[2]

    @property
    def blocks(self) -> np.ndarray:
        return self.weights

    def __len__(self) -> int:
        return self.weights.shape[0]

    def __getitem__(self, n):
        return self.weights[n]

    def __repr__(self) -> str:
        return f"WeightTable(kind={self.kind}, N={self.N}, kappa={self.kappa:g}, dims={self.dims})"


def resolve_oversampling(oversampling: Optional[int] = None) -> int:
    """Oversampling factor k >= 1, defaulting to settings.contour_oversampling"""
    k = settings.contour_oversampling if oversampling is None else oversampling
    if int(k) != k or k < 1:
        raise InvalidArgumentError(f"oversampling must be a positive integer, got {k}")
    return int(k)


def contour_radius(n: int, eps: Optional[float] = None, oversampling: int = 1) -> float:
    """
    R = eps^(1/((k+1)(n+1))) for a contour of k(n+1) nodes.

    With k = 1 this is R = eps^(1/(2(n+1))): aliasing (R^{n+1}) and the
    roundoff amplification R^{-n} both sit near sqrt(eps). Oversampling by k
    balances R^{k(n+1)} against eps R^{-n} at eps^(k/(k+1)).
    """
    eps = settings.contour_eps if eps is None else eps
    if n < 0:
        raise InvalidArgumentError(f"N must be non-negative, got {n}")
    if not 0.0 < eps < 1.0:
        raise InvalidArgumentError(f"eps must lie in (0, 1), got {eps}")
    k = resolve_oversampling(oversampling)
    return float(eps ** (1.0 / ((k + 1) * (n + 1))))


def contour_size(n: int, oversampling: Optional[int] = None) -> int:
    """Number of contour nodes L = k(n+1)"""
    return resolve_oversampling(oversampling) * (n + 1)


def contour_points(n: int, radius: float) -> np.ndarray:
    """ζ_ℓ = R ζ_{n+1}^{-ℓ}, ℓ = 0..n"""
    ell = np.arange(n + 1)
    return radius * np.exp(-2j * np.pi * ell / (n + 1))


def evaluate_on_nodes(
    f: Symbol,
    s_nodes: np.ndarray,
    hermitian: bool,
) -> np.ndarray:
    """
    Evaluate F at the frequencies s_ℓ, ℓ = 0..n.

    With ``hermitian`` only ℓ = 0..⌊(n+1)/2⌋ are evaluated and the rest is
    filled by conjugate reflection.

    Raises:
        NodeEvaluationError: Evaluation failed at some node (index attached)
    """
    n = s_nodes.shape[0] - 1
    count = half_length(n) if hermitian else n + 1

    def evaluate(ell: int) -> np.ndarray:
        try:
            return f(s_nodes[ell])
        except CQError as e:
            raise NodeEvaluationError(
                f"symbol {f.name} failed at node {ell} (s={s_nodes[ell]:.6g}): {e}",
                node=ell,
                s=complex(s_nodes[ell]),
            ) from e

    workers = None if f.thread_safe else 1
    values = np.stack(map_nodes(evaluate, list(range(count)), max_workers=workers))
    if hermitian:
        values = symmetrize(values, n)
    return values


def node_values(
    f: Symbol,
    delta: DeltaGenerator,
    kappa: float,
    n: int,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    F̂_ℓ = F(δ(R ζ_L^{-ℓ})/κ) for ℓ = 0..L-1, L = k(n+1).

    Returns:
        (F_hat of shape (L, d1, d2), s_nodes, R)
    """
    if kappa <= 0:
        raise InvalidArgumentError(f"time step must be positive, got {kappa}")
    k = resolve_oversampling(oversampling)
    radius = contour_radius(n, eps, k)
    s_nodes = delta(contour_points(contour_size(n, k) - 1, radius)) / kappa
    hermitian = f.conjugate_symmetric and delta.real_coefficients
    f_hat = evaluate_on_nodes(f, s_nodes, hermitian)
    return f_hat, s_nodes, radius


def weights_from_nodes(f_hat: np.ndarray, radius: float, n: Optional[int] = None) -> np.ndarray:
    """ω_n = R^{-n} idft(F̂)_n, keeping the first n+1 of the L transformed values"""
    n = f_hat.shape[0] - 1 if n is None else n
    scale = radius ** (-np.arange(n + 1, dtype=float))
    return idft(f_hat)[: n + 1] * scale.reshape((-1,) + (1,) * (f_hat.ndim - 1))


def cq_weights(
    f: Symbol,
    delta: DeltaGenerator,
    kappa: float,
    n: int,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> WeightTable:
    """
    CQ weights ω_0..ω_n by contour quadrature, with ω_0 = F(δ(0)/κ) exact.

    Raises:
        NodeEvaluationError: Symbol evaluation failed at a contour node
    """
    eps = settings.contour_eps if eps is None else eps
    f_hat, _, radius = node_values(f, delta, kappa, n, eps, oversampling)
    weights = weights_from_nodes(f_hat, radius, n)
    weights[0] = f(delta.delta_at_zero / kappa)
    logger.debug(f"Computed {n + 1} CQ weights for {f.name} ({delta.kind.value}, kappa={kappa:g}, "
                 f"R={radius:.6f}, nodes={f_hat.shape[0]})")
    return WeightTable(weights, kappa, radius, eps, kind=delta.kind.value, symbol_name=f.name)


def forward_convolution_mot(w: WeightTable, g, method: str = "direct") -> np.ndarray:
    """
    y_n = Σ_{m=0}^n ω_m g_{n-m} for n = 0..len(g)-1.

    Args:
        w: Weight table with at least len(g) weights
        g: Samples g_0..g_n, shape (n+1,) or (n+1, d2)
        method: "direct" (triangular sum) or "fft" (zero-padded causal_conv)

    Returns:
        Samples y_0..y_n, shaped like ``g`` with d1 columns
    """
    d1, d2 = w.dims
    samples, squeezed = as_samples(g, d2)
    n = samples.shape[0] - 1
    if n > w.N:
        raise InvalidArgumentError(f"{n + 1} samples need {n + 1} weights, table has {w.N + 1}")
    weights = w.weights[: n + 1]

    if method == "direct":
        out = np.zeros((n + 1, d1), dtype=complex)
        for k in range(n + 1):
            out[k] = np.einsum("mij,mj->i", weights[: k + 1], samples[k::-1])
    elif method == "fft":
        out = np.zeros((n + 1, d1), dtype=complex)
        for i in range(d1):
            for j in range(d2):
                out[:, i] += causal_conv(weights[:, i, j], samples[:, j], n)
    else:
        raise InvalidArgumentError(f"unknown convolution method {method!r}")

    return restore(out, squeezed)


def factor_leading_weight(omega0: np.ndarray):
    """
    LU-factor ω_0 once for repeated forward substitution.

    Raises:
        UnsolvableEquationError: If ω_0 is not square or numerically singular
    """
    if omega0.shape[0] != omega0.shape[1]:
        raise UnsolvableEquationError(f"ω_0 must be square, got {omega0.shape}")
    cond = np.linalg.cond(omega0)
    if not np.isfinite(cond) or cond * MACHINE_EPS > 1.0:
        raise UnsolvableEquationError(f"ω_0 is numerically singular (condition number {cond:.3g})")
    return scipy.linalg.lu_factor(omega0)


def march(weights: np.ndarray, lu, rhs: np.ndarray) -> np.ndarray:
    """Forward substitution ω_0 g_n = h_n - Σ_{m=1}^n ω_m g_{n-m}"""
    n = rhs.shape[0] - 1
    out = np.zeros_like(rhs, dtype=complex)
    for k in range(n + 1):
        residual = rhs[k].astype(complex)
        if k > 0:
            residual = residual - np.einsum("mij,mj->i", weights[1 : k + 1], out[k - 1 :: -1])
        out[k] = scipy.linalg.lu_solve(lu, residual)
    return out


def solve_equation_mot(w: WeightTable, h) -> np.ndarray:
    """
    Solve Σ_{m=0}^n ω_m g_{n-m} = h_n by marching on in time.

    Raises:
        UnsolvableEquationError: If ω_0 is singular
    """
    d1, d2 = w.dims
    samples, squeezed = as_samples(h, d1)
    n = samples.shape[0] - 1
    if n > w.N:
        raise InvalidArgumentError(f"{n + 1} samples need {n + 1} weights, table has {w.N + 1}")
    lu = factor_leading_weight(w.weights[0])
    return restore(march(w.weights, lu, samples), squeezed)


def _scaled_transform(samples: np.ndarray, radius: float, nodes: int) -> np.ndarray:
    n = samples.shape[0] - 1
    scale = radius ** np.arange(n + 1, dtype=float)
    return dft(zero_pad(samples * scale[:, None], nodes))


def _unscaled_inverse(values_hat: np.ndarray, radius: float, n: int) -> np.ndarray:
    scale = radius ** (-np.arange(n + 1, dtype=float))
    return idft(values_hat)[: n + 1] * scale[:, None]


def all_steps_forward(
    f: Symbol,
    delta: DeltaGenerator,
    kappa: float,
    g,
    n: int,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> np.ndarray:
    """
    All-steps-at-once forward convolution u_n = Σ ω_{n-m} g_m, n = 0..N.

    Scale by R^m, dft, multiply by F̂_ℓ, idft, scale back by R^{-n}. On an
    oversampled contour the scaled data is zero-padded to the L nodes.
    """
    d1, d2 = f.dims
    samples, squeezed = as_samples(g, d2)
    if samples.shape[0] != n + 1:
        raise InvalidArgumentError(f"expected {n + 1} samples, got {samples.shape[0]}")
    f_hat, _, radius = node_values(f, delta, kappa, n, eps, oversampling)
    h_hat = _scaled_transform(samples, radius, f_hat.shape[0])
    v_hat = np.einsum("lij,lj->li", f_hat, h_hat)
    return restore(_unscaled_inverse(v_hat, radius, n), squeezed)


def solve_on_nodes(f_hat: np.ndarray, v_hat: np.ndarray, s_nodes: np.ndarray) -> np.ndarray:
    """
    Solve F̂_ℓ ŵ_ℓ = v̂_ℓ at every node.

    Raises:
        NodeEvaluationError: If some F̂_ℓ is numerically singular
    """
    cond = np.linalg.cond(f_hat)
    bad = np.flatnonzero(~np.isfinite(cond) | (cond * MACHINE_EPS > 1.0))
    if bad.size:
        ell = int(bad[0])
        raise NodeEvaluationError(
            f"transfer function is singular at node {ell} (s={s_nodes[ell]:.6g})",
            node=ell,
            s=complex(s_nodes[ell]),
        )
    return np.linalg.solve(f_hat, v_hat[..., None])[..., 0]


def all_steps_solve(
    f: Symbol,
    delta: DeltaGenerator,
    kappa: float,
    h,
    n: int,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> np.ndarray:
    """
    All-steps-at-once solution of Σ ω_{n-m} g_m = h_n, n = 0..N.

    Each node is a linear solve; inverses are never formed.
    """
    if not f.is_square:
        raise InvalidArgumentError(f"convolution equations need a square symbol, got {f.dims}")
    d = f.dims[0]
    samples, squeezed = as_samples(h, d)
    if samples.shape[0] != n + 1:
        raise InvalidArgumentError(f"expected {n + 1} samples, got {samples.shape[0]}")
    f_hat, s_nodes, radius = node_values(f, delta, kappa, n, eps, oversampling)
    v_hat = _scaled_transform(samples, radius, f_hat.shape[0])
    w_hat = solve_on_nodes(f_hat, v_hat, s_nodes)
    return restore(_unscaled_inverse(w_hat, radius, n), squeezed)


def _check_piece(q: int, m: int, n: int, available: int) -> None:
    if q < 0 or q >= m:
        raise InvalidArgumentError(f"piece needs 0 <= Q < M, got Q={q}, M={m}")
    if n < m:
        raise InvalidArgumentError(f"piece needs N >= M, got N={n}, M={m}")
    if available < q + 1:
        raise InvalidArgumentError(f"piece needs u_0..u_Q ({q + 1} samples), got {available}")


def apply_piece(
    apply_nodes: Callable[[np.ndarray], np.ndarray],
    radius: float,
    u: np.ndarray,
    q: int,
    m: int,
    nodes: int,
) -> np.ndarray:
    """
    Core of a convolution piece on a contour of L nodes.

    Args:
        apply_nodes: ŵ ↦ F̂ ŵ node by node (shape (L, ...) in and out)
        radius: Contour radius R
        u: Inputs u_0..u_Q along axis 0
        q: Index Q of the last input
        m: Index M of the last output (M < L)
        nodes: Contour size L

    Returns:
        g̃_0..g̃_{M-Q-1} along axis 0
    """
    w = np.zeros((nodes,) + u.shape[1:], dtype=complex)
    w[: q + 1] = u[: q + 1] * (radius ** np.arange(q + 1, dtype=float)).reshape((-1,) + (1,) * (u.ndim - 1))
    w_hat = dft(w)
    phase = np.exp(2j * np.pi * np.arange(nodes) * (q + 1) / nodes)
    h_hat = apply_nodes(w_hat)
    h_hat = h_hat * phase.reshape((-1,) + (1,) * (h_hat.ndim - 1))
    h = idft(h_hat)[: m - q]
    scale = radius ** (-(np.arange(m - q, dtype=float) + q + 1))
    return h * scale.reshape((-1,) + (1,) * (h.ndim - 1))


def convolution_piece(
    f: Symbol,
    delta: DeltaGenerator,
    kappa: float,
    u,
    q: int,
    m: int,
    n: int,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> np.ndarray:
    """
    g_k = Σ_{j=0}^Q ω̃_{k-j} u_j for k = Q+1..M, with ω̃ from a contour of k(N+1) nodes.

    Returns:
        Samples g_{Q+1}..g_M (M-Q rows)
    """
    d1, d2 = f.dims
    samples, squeezed = as_samples(u, d2)
    _check_piece(q, m, n, samples.shape[0])
    f_hat, _, radius = node_values(f, delta, kappa, n, eps, oversampling)
    piece = apply_piece(lambda w_hat: np.einsum("lij,lj->li", f_hat, w_hat),
                        radius, samples[: q + 1], q, m, f_hat.shape[0])
    return restore(piece, squeezed)


def look_ahead_solve(
    f: Symbol,
    delta: DeltaGenerator,
    kappa: float,
    u,
    n: int,
    block: Optional[int] = None,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> np.ndarray:
    """
    Look-ahead solution of Σ ω_{k-m} g_m = u_k, k = 0..N.

    Blocks of ``block`` unknowns are solved by forward substitution with the
    lower-triangular Toeplitz matrix of ω_0..ω_{block-1}; each solved block is
    then removed from the remaining right-hand side with one FFT convolution
    piece. The indices past the last full block are solved directly.

    Raises:
        UnsolvableEquationError: If ω_0 is singular
    """
    if not f.is_square:
        raise InvalidArgumentError(f"convolution equations need a square symbol, got {f.dims}")
    if block is None:
        block = min(settings.default_block_size, n + 1)
    if not 1 <= block <= n + 1:
        raise InvalidArgumentError(f"block size must lie in 1..{n + 1}, got {block}")

    d = f.dims[0]
    samples, squeezed = as_samples(u, d)
    if samples.shape[0] != n + 1:
        raise InvalidArgumentError(f"expected {n + 1} samples, got {samples.shape[0]}")

    eps = settings.contour_eps if eps is None else eps
    f_hat, _, radius = node_values(f, delta, kappa, n, eps, oversampling)
    weights = weights_from_nodes(f_hat, radius, n)
    weights[0] = f(delta.delta_at_zero / kappa)
    lu = factor_leading_weight(weights[0])

    def apply_nodes(w_hat: np.ndarray) -> np.ndarray:
        return np.einsum("lij,lj->li", f_hat, w_hat)

    rhs = samples.copy()
    out = np.zeros_like(rhs)
    n_blocks = n // block
    for i in range(n_blocks):
        start = i * block
        stop = start + block
        solved = march(weights, lu, rhs[start:stop])
        out[start:stop] = solved
        rhs[stop:] -= apply_piece(apply_nodes, radius, solved, block - 1, n - start, f_hat.shape[0])

    start = n_blocks * block
    out[start:] = march(weights, lu, rhs[start:])
    logger.debug(f"Look-ahead solve: {n_blocks} blocks of {block}, tail of {n + 1 - start}")
    return restore(out, squeezed)
