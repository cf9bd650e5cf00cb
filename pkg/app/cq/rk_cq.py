"""Runge-Kutta convolution quadrature

The multistep generator δ(ζ) is replaced by the p×p matrix
Δ(ζ) = ((ζ/(1-ζ)) 1bᵀ + A)⁻¹ and symbols are evaluated at matrices through
their eigendecompositions:

    F(B) = (P ⊗ I) blockdiag(F(λ_1), ..., F(λ_p)) (P⁻¹ ⊗ I),   B = P diag(λ) P⁻¹

Stage vectors are laid out stage-major: entry (j, a) of a stage block sits at
index j*d + a, which is the layout of numpy.kron(p×p, d1×d2).
"""
from typing import Callable, Optional, Union
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.config import settings
from app.constants.tableaus import (
    A_STABILITY_SLACK,
    IMAGINARY_AXIS_DECADES,
    IMAGINARY_AXIS_POINTS,
    LEFT_HALF_PLANE_DECADES,
    LEFT_HALF_PLANE_POINTS,
    SHIPPED_TABLEAUS,
    TABLEAU_TOLERANCE,
)
from app.cq.dft_core import dft, half_length, idft, symmetrize, zero_pad
from app.cq.multistep_cq import (
    MACHINE_EPS,
    WeightTable,
    apply_piece,
    contour_points,
    contour_radius,
    contour_size,
    resolve_oversampling,
    weights_from_nodes,
)
from app.cq.sequences import as_stage_samples, restore
from app.cq.symbols import Symbol
from app.exceptions import (
    CQError,
    GeneratorSingularError,
    IllConditionedSpectrumError,
    InvalidArgumentError,
    NodeEvaluationError,
    SpectrumOutsideHalfPlaneError,
    TableauValidationError,
)
from app.utils.parallel import map_nodes

logger = logging.getLogger(__name__)


class RKTableau:
    """Immutable Butcher tableau (A, b, c) with derived step-extraction data"""

    def __init__(self, name: str, A, b, c, classical_order: int, stage_order: int):
        A = np.array(A, dtype=float)
        b = np.array(b, dtype=float)
        c = np.array(c, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or b.shape != (A.shape[0],) or c.shape != b.shape:
            raise TableauValidationError(f"tableau {name}: inconsistent shapes A{A.shape} b{b.shape} c{c.shape}")
        if abs(np.linalg.det(A)) < TABLEAU_TOLERANCE:
            raise TableauValidationError(f"tableau {name}: A is not invertible")

        self.name = name
        self.A = A
        self.b = b
        self.c = c
        self.classical_order = classical_order
        self.stage_order = stage_order
        self.A_inv = np.linalg.inv(A)

        if self.stiffly_accurate:
            self.mu = 0.0
            self.d = np.zeros(self.p)
            self.d[-1] = 1.0
        else:
            self.d = b @ self.A_inv
            self.mu = float(1.0 - self.d.sum())

        for arr in (self.A, self.b, self.c, self.A_inv, self.d):
            arr.flags.writeable = False

    @property
    def p(self) -> int:
        return self.b.shape[0]

    @property
    def stiffly_accurate(self) -> bool:
        return bool(np.allclose(self.A[-1], self.b, rtol=0.0, atol=TABLEAU_TOLERANCE))

    @classmethod
    def from_arrays(
        cls,
        name: str,
        A,
        b,
        c,
        classical_order: int,
        stage_order: int,
        require_stiffly_accurate: bool = True,
    ) -> "RKTableau":
        """
        Build a user-supplied tableau and run the validation suite on it.

        Raises:
            TableauValidationError: If any validation check fails
        """
        tab = cls(name, A, b, c, classical_order, stage_order)
        validate(tab, require_stiffly_accurate=require_stiffly_accurate)
        return tab

    def __repr__(self) -> str:
        return f"RKTableau({self.name}, p={self.p}, order={self.classical_order})"


RADAU_IIA = RKTableau(**SHIPPED_TABLEAUS["radau3"])
LOBATTO_IIIC = RKTableau(**SHIPPED_TABLEAUS["lobatto4"])


def get_tableau(name: str) -> RKTableau:
    """Look up a shipped tableau by id (radau3 | lobatto4)"""
    tableaus = {RADAU_IIA.name: RADAU_IIA, LOBATTO_IIIC.name: LOBATTO_IIIC}
    if name not in tableaus:
        raise InvalidArgumentError(f"unknown tableau {name!r}; expected one of {sorted(tableaus)}")
    return tableaus[name]


class RKWeightTable(WeightTable):
    """Block weights W_0..W_N, each (p·d1)×(p·d2)"""

    def block(self, n: int, i: int, j: int) -> np.ndarray:
        """Stage block (i, j) of W_n"""
        d1, d2 = self.dims[0] // self.stages, self.dims[1] // self.stages
        return self.weights[n, i * d1:(i + 1) * d1, j * d2:(j + 1) * d2]


class RKResult(BaseModel):
    """Stage and step outputs of an RK-CQ run"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    stages: np.ndarray
    steps: np.ndarray
    stage_times: np.ndarray
    step_times: np.ndarray
    radius: float


# ============================================================================
# GENERATOR AND MATRIX CALCULUS
# ============================================================================

def delta_matrix(tab: RKTableau, zeta: complex) -> np.ndarray:
    """
    Δ(ζ) = ((ζ/(1-ζ)) 1bᵀ + A)⁻¹, or A⁻¹(I - ζ 1e_pᵀ) for stiffly accurate tableaus.

    Raises:
        GeneratorSingularError: If the inner matrix is singular at ζ
    """
    return delta_matrices(tab, np.array([zeta], dtype=complex))[0]


def delta_matrices(tab: RKTableau, zetas: np.ndarray) -> np.ndarray:
    """Δ at many ζ at once, shape (len(zetas), p, p)"""
    zetas = np.asarray(zetas, dtype=complex)
    ones = np.ones(tab.p)
    if tab.stiffly_accurate:
        e_p = np.zeros(tab.p)
        e_p[-1] = 1.0
        correction = np.outer(tab.A_inv @ ones, e_p)
        return tab.A_inv[None, :, :] - zetas[:, None, None] * correction[None, :, :]

    out = np.empty((zetas.size, tab.p, tab.p), dtype=complex)
    for k, zeta in enumerate(zetas):
        if zeta == 1:
            raise GeneratorSingularError(f"Δ(ζ) is undefined at ζ=1 for {tab.name}", zeta=complex(zeta))
        inner = (zeta / (1 - zeta)) * np.outer(ones, tab.b) + tab.A
        if np.linalg.cond(inner) * MACHINE_EPS > 1.0:
            raise GeneratorSingularError(f"Δ(ζ) is singular at ζ={zeta:.6g} for {tab.name}",
                                         zeta=complex(zeta))
        out[k] = np.linalg.inv(inner)
    return out


def _decompose(B: np.ndarray):
    lam, P = np.linalg.eig(B)
    return lam, P, np.linalg.cond(P)


def dunford_eval(f: Symbol, B) -> np.ndarray:
    """
    F(B) for a diagonalizable p×p matrix B with spectrum in the right half-plane.

    Returns:
        Σ_i (col_i(P) row_i(P⁻¹)) ⊗ F(λ_i), shape (p·d1, p·d2)

    Raises:
        IllConditionedSpectrumError: Eigenvector matrix too ill-conditioned
        SpectrumOutsideHalfPlaneError: Some eigenvalue has Re λ <= 0
    """
    B = np.asarray(B, dtype=complex)
    lam, P, cond = _decompose(B)
    if not np.isfinite(cond) or cond > settings.eigvec_cond_limit:
        raise IllConditionedSpectrumError(f"eigenvector condition number {cond:.3g} exceeds "
                                          f"{settings.eigvec_cond_limit:g}")
    if np.any(lam.real <= 0):
        raise SpectrumOutsideHalfPlaneError(f"spectrum {lam} is not contained in Re s > 0")
    P_inv = np.linalg.inv(P)
    d1, d2 = f.dims
    out = np.zeros((B.shape[0] * d1, B.shape[0] * d2), dtype=complex)
    for i, value in enumerate(lam):
        out += np.kron(np.outer(P[:, i], P_inv[i, :]), f(value))
    return out


class NodeSpectra:
    """Per-node eigendecompositions Δ(ζ_ℓ)/κ = P_ℓ diag(λ_ℓ) P_ℓ⁻¹ and F(λ_ℓ)"""

    def __init__(self, P: np.ndarray, P_inv: np.ndarray, lam: np.ndarray, f_lam: np.ndarray, radius: float):
        self.P = P
        self.P_inv = P_inv
        self.lam = lam
        self.f_lam = f_lam
        self.radius = radius

    @property
    def n_nodes(self) -> int:
        return self.lam.shape[0]

    def apply(self, w_hat: np.ndarray) -> np.ndarray:
        """F̂_ℓ ŵ_ℓ for stage blocks ŵ of shape (L, p, d2)"""
        x = np.einsum("lij,ljb->lib", self.P_inv, w_hat)
        y = np.einsum("liab,lib->lia", self.f_lam, x)
        return np.einsum("lij,lja->lia", self.P, y)

    def solve(self, v_hat: np.ndarray) -> np.ndarray:
        """
        Solve F̂_ℓ ŵ_ℓ = v̂_ℓ with p independent d×d solves per node.

        Raises:
            NodeEvaluationError: If some F(λ_i) is numerically singular
        """
        cond = np.linalg.cond(self.f_lam)
        bad = np.argwhere(~np.isfinite(cond) | (cond * MACHINE_EPS > 1.0))
        if bad.size:
            ell, i = (int(v) for v in bad[0])
            raise NodeEvaluationError(
                f"F(λ) is singular at node {ell}, eigenvalue {self.lam[ell, i]:.6g}",
                node=ell,
                s=complex(self.lam[ell, i]),
            )
        x = np.einsum("lij,ljb->lib", self.P_inv, v_hat)
        y = np.linalg.solve(self.f_lam, x[..., None])[..., 0]
        return np.einsum("lij,lja->lia", self.P, y)

    def matrices(self) -> np.ndarray:
        """Dense F̂_ℓ of shape (L, p·d1, p·d2)"""
        L, p = self.lam.shape
        d1, d2 = self.f_lam.shape[2:]
        dense = np.einsum("lji,lik,liab->ljakb", self.P, self.P_inv, self.f_lam)
        return dense.reshape(L, p * d1, p * d2)


def node_spectra(
    f: Symbol,
    tab: RKTableau,
    kappa: float,
    n: int,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> NodeSpectra:
    """
    Factor Δ(R ζ_L^{-ℓ})/κ at every one of the L = k(n+1) nodes and evaluate F at the eigenvalues.

    If an eigenvector matrix is too ill-conditioned the radius is shrunk by
    settings.radius_nudge_factor and the decomposition retried.

    Raises:
        IllConditionedSpectrumError: Retries exhausted
        SpectrumOutsideHalfPlaneError: Some eigenvalue has Re λ <= 0
        NodeEvaluationError: F failed at some eigenvalue
    """
    if kappa <= 0:
        raise InvalidArgumentError(f"time step must be positive, got {kappa}")
    k = resolve_oversampling(oversampling)
    radius = contour_radius(n, eps, k)
    last = contour_size(n, k) - 1
    hermitian = f.conjugate_symmetric
    count = half_length(last) if hermitian else last + 1

    for attempt in range(settings.radius_nudge_retries + 1):
        zetas = contour_points(last, radius)[:count]
        lam, P, cond = _decompose(delta_matrices(tab, zetas) / kappa)
        worst = int(np.argmax(np.where(np.isfinite(cond), cond, np.inf)))
        if np.isfinite(cond[worst]) and cond[worst] <= settings.eigvec_cond_limit:
            break
        logger.warning(f"Eigenvectors ill-conditioned at node {worst} (cond={cond[worst]:.3g}); "
                       f"shrinking radius {radius:.6f} -> {radius * settings.radius_nudge_factor:.6f}")
        radius *= settings.radius_nudge_factor
    else:
        raise IllConditionedSpectrumError(
            f"eigenvector condition number above {settings.eigvec_cond_limit:g} after "
            f"{settings.radius_nudge_retries} radius reductions"
        )

    if np.any(lam.real <= 0):
        ell = int(np.argwhere(lam.real <= 0)[0, 0])
        raise SpectrumOutsideHalfPlaneError(f"node {ell} has eigenvalues {lam[ell]} outside Re s > 0")

    def evaluate(index: int) -> np.ndarray:
        ell, i = divmod(index, tab.p)
        try:
            return f(lam[ell, i])
        except CQError as e:
            raise NodeEvaluationError(
                f"symbol {f.name} failed at node {ell} (λ={lam[ell, i]:.6g}): {e}",
                node=ell,
                s=complex(lam[ell, i]),
            ) from e

    workers = None if f.thread_safe else 1
    values = map_nodes(evaluate, list(range(count * tab.p)), max_workers=workers)
    f_lam = np.stack(values).reshape((count, tab.p) + f.dims)
    P_inv = np.linalg.inv(P)

    if hermitian:
        P, P_inv, lam, f_lam = (symmetrize(arr, last) for arr in (P, P_inv, lam, f_lam))
    return NodeSpectra(P, P_inv, lam, f_lam, radius)


# ============================================================================
# WEIGHTS AND ALGORITHMS
# ============================================================================

def rk_cq_weights(
    f: Symbol,
    tab: RKTableau,
    kappa: float,
    n: int,
    eps: Optional[float] = None,
    exact_first: bool = True,
    oversampling: Optional[int] = None,
) -> RKWeightTable:
    """
    RK-CQ block weights W_n = R^{-n} idft(F̂)_n with F̂_ℓ = F(Δ(R ζ^{-ℓ})/κ).

    Args:
        exact_first: Substitute W_0 = F(A⁻¹/κ)
    """
    eps = settings.contour_eps if eps is None else eps
    spectra = node_spectra(f, tab, kappa, n, eps, oversampling)
    weights = weights_from_nodes(spectra.matrices(), spectra.radius, n)
    if exact_first:
        weights[0] = dunford_eval(f, tab.A_inv / kappa)
    logger.debug(f"Computed {n + 1} RK-CQ block weights for {f.name} ({tab.name}, kappa={kappa:g})")
    return RKWeightTable(weights, kappa, spectra.radius, eps, kind=tab.name, symbol_name=f.name,
                         tableau=tab.name, stages=tab.p)


def stage_times(tab: RKTableau, kappa: float, n: int) -> np.ndarray:
    """Stage times t_m + κc_j, shape (n+1, p)"""
    return (np.arange(n + 1)[:, None] + tab.c[None, :]) * kappa


def sample_stages(tab: RKTableau, kappa: float, g: Union[Callable, np.ndarray], n: int, width: int):
    """
    Stage samples g(t_m + κc), shape (n+1, p, width).

    ``g`` is either a vectorized callable of time or precomputed samples.
    """
    if callable(g):
        times = stage_times(tab, kappa, n)
        values = np.asarray(g(times), dtype=complex)
        squeezed = values.shape == times.shape
        if squeezed:
            values = values[:, :, None]
        return as_stage_samples(values, tab.p, width)[0], squeezed
    samples, squeezed = as_stage_samples(g, tab.p, width)
    if samples.shape[0] != n + 1:
        raise InvalidArgumentError(f"expected {n + 1} stage blocks, got {samples.shape[0]}")
    return samples, squeezed


def extract_steps(tab: RKTableau, stages: np.ndarray) -> np.ndarray:
    """
    Steps y_1..y_{N+1} from stage outputs via y_{n+1} = μ y_n + (dᵀ ⊗ I) 𝐲_n, y_0 = 0.

    For stiffly accurate tableaus this is the last stage row exactly.
    """
    if tab.stiffly_accurate:
        return stages[:, -1].copy()
    out = np.zeros((stages.shape[0],) + stages.shape[2:], dtype=complex)
    previous = np.zeros(stages.shape[2:], dtype=complex)
    for k in range(stages.shape[0]):
        previous = tab.mu * previous + np.tensordot(tab.d, stages[k], axes=(0, 0))
        out[k] = previous
    return out


def _result(tab: RKTableau, kappa: float, stages: np.ndarray, squeezed: bool, radius: float) -> RKResult:
    n = stages.shape[0] - 1
    return RKResult(
        stages=restore(stages, squeezed),
        steps=restore(extract_steps(tab, stages), squeezed),
        stage_times=stage_times(tab, kappa, n),
        step_times=(np.arange(n + 1) + 1.0) * kappa,
        radius=radius,
    )


def _scale(samples: np.ndarray, radius: float, sign: float) -> np.ndarray:
    n = samples.shape[0] - 1
    factors = radius ** (sign * np.arange(n + 1, dtype=float))
    return samples * factors.reshape((-1,) + (1,) * (samples.ndim - 1))


def _to_nodes(samples: np.ndarray, spectra: "NodeSpectra") -> np.ndarray:
    """dft of the R^m-scaled stage samples, zero-padded to the contour size"""
    return dft(zero_pad(_scale(samples, spectra.radius, 1.0), spectra.n_nodes))


def _from_nodes(values_hat: np.ndarray, spectra: "NodeSpectra", n: int) -> np.ndarray:
    return _scale(idft(values_hat)[: n + 1], spectra.radius, -1.0)


def rk_forward(
    f: Symbol,
    tab: RKTableau,
    kappa: float,
    g,
    n: int,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> RKResult:
    """
    All-steps-at-once RK-CQ convolution 𝐮_n = Σ W_m 𝐠_{n-m}, n = 0..N.

    Args:
        g: Vectorized callable of time, or stage samples (n+1, p[, d2])

    Returns:
        RKResult with stage outputs (n+1, p[, d1]) and steps y_1..y_{N+1}
    """
    samples, squeezed = sample_stages(tab, kappa, g, n, f.dims[1])
    spectra = node_spectra(f, tab, kappa, n, eps, oversampling)
    stages = _from_nodes(spectra.apply(_to_nodes(samples, spectra)), spectra, n)
    return _result(tab, kappa, stages, squeezed, spectra.radius)


def rk_solve(
    f: Symbol,
    tab: RKTableau,
    kappa: float,
    h,
    n: int,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> RKResult:
    """
    All-steps-at-once solution of Σ W_m 𝐠_{n-m} = 𝐡_n, n = 0..N.

    Raises:
        NodeEvaluationError: If F(λ) is singular at some node eigenvalue
    """
    if not f.is_square:
        raise InvalidArgumentError(f"convolution equations need a square symbol, got {f.dims}")
    samples, squeezed = sample_stages(tab, kappa, h, n, f.dims[0])
    spectra = node_spectra(f, tab, kappa, n, eps, oversampling)
    stages = _from_nodes(spectra.solve(_to_nodes(samples, spectra)), spectra, n)
    return _result(tab, kappa, stages, squeezed, spectra.radius)


def rk_piece(
    f: Symbol,
    tab: RKTableau,
    kappa: float,
    u,
    q: int,
    m: int,
    n: int,
    eps: Optional[float] = None,
    oversampling: Optional[int] = None,
) -> np.ndarray:
    """
    Block analogue of convolution_piece: 𝐠_k = Σ_{j=0}^Q W̃_{k-j} 𝐮_j, k = Q+1..M.

    Returns:
        Stage blocks 𝐠_{Q+1}..𝐠_M, shape (M-Q, p[, d1])
    """
    if q < 0 or q >= m:
        raise InvalidArgumentError(f"piece needs 0 <= Q < M, got Q={q}, M={m}")
    if n < m:
        raise InvalidArgumentError(f"piece needs N >= M, got N={n}, M={m}")
    samples, squeezed = as_stage_samples(u, tab.p, f.dims[1], min_length=q + 1)
    spectra = node_spectra(f, tab, kappa, n, eps, oversampling)
    piece = apply_piece(spectra.apply, spectra.radius, samples[: q + 1], q, m, spectra.n_nodes)
    return restore(piece, squeezed)


# ============================================================================
# STABILITY AND VALIDATION
# ============================================================================

def stability_function(tab: RKTableau, z: complex) -> complex:
    """
    R(z) = 1 + z bᵀ(I - zA)⁻¹1; R(∞) = μ.

    Returns complex infinity at poles (I - zA singular).
    """
    if np.isinf(z):
        return complex(tab.mu)
    z = complex(z)
    system = np.eye(tab.p) - z * tab.A
    if np.linalg.cond(system) * MACHINE_EPS > 1.0:
        return complex(np.inf, np.inf)
    return complex(1.0 + z * (tab.b @ np.linalg.solve(system, np.ones(tab.p))))


def validate(tab: RKTableau, require_stiffly_accurate: bool = True) -> None:
    """
    Run the tableau validation suite.

    Checks A1 = c, bᵀ1 = 1, σ(A) ⊂ C₊, stiff accuracy, |R(z)| <= 1 on a
    left half-plane grid and |R(iω)| < 1 on the sampled imaginary axis.

    Raises:
        TableauValidationError: Listing every failed check
    """
    failures = []
    if not np.allclose(tab.A.sum(axis=1), tab.c, rtol=0.0, atol=TABLEAU_TOLERANCE):
        failures.append("row sums of A differ from c")
    if abs(tab.b.sum() - 1.0) > TABLEAU_TOLERANCE:
        failures.append("weights b do not sum to one")
    if np.any(np.linalg.eigvals(tab.A).real <= 0):
        failures.append("A has eigenvalues with non-positive real part")
    if require_stiffly_accurate and not tab.stiffly_accurate:
        failures.append("last row of A differs from b (not stiffly accurate)")

    decades = np.logspace(*LEFT_HALF_PLANE_DECADES, LEFT_HALF_PLANE_POINTS)
    re_grid = np.concatenate([[0.0], -decades])
    im_grid = np.concatenate([[0.0], decades, -decades])
    worst = max(abs(stability_function(tab, complex(x, y))) for x in re_grid for y in im_grid)
    if worst > 1.0 + A_STABILITY_SLACK:
        failures.append(f"not A-stable: max |R(z)| = {worst:.6g} on Re z <= 0")

    omegas = np.logspace(*IMAGINARY_AXIS_DECADES, IMAGINARY_AXIS_POINTS)
    on_axis = [abs(stability_function(tab, 1j * w)) for w in np.concatenate([omegas, -omegas])]
    if max(on_axis) >= 1.0:
        failures.append(f"|R(iω)| reaches {max(on_axis):.6g} on the imaginary axis")

    if failures:
        logger.error(f"Tableau {tab.name} failed validation: {'; '.join(failures)}")
        raise TableauValidationError(f"tableau {tab.name}: " + "; ".join(failures))
    logger.debug(f"Tableau {tab.name} passed validation")
