"""The convolution algebra of functionals on a finite quantum group:
products, explicit left/right convolution operator matrices, the sharp
involution, and limits of averaged convolution powers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Functional
from .qgroup import FiniteQuantumGroup


def convolve(G: FiniteQuantumGroup, omega: Functional, mu: Functional) -> Functional:
    """ω ⋆ μ = (ω ⊗ μ) ∘ Δ, computed through the adjoint of Δ on covectors."""
    if omega.algebra != G.algebra or mu.algebra != G.algebra:
        raise ValueError("functionals do not live on this quantum group")
    return Functional.from_covector(G.algebra, G.convolve_cov(omega.covector, mu.covector))


@dataclass(eq=False)
class ConvolutionOperator:
    """Explicit matrix of L_ω (a ↦ (ω⊗id)Δa) or R_ω (a ↦ (id⊗ω)Δa)."""

    group: FiniteQuantumGroup
    matrix: np.ndarray
    side: str                      # "left" | "right"
    source: Functional | None = None

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")

    def __call__(self, x):
        return self.group.algebra.from_vec(self.matrix @ x.vec)


def left_conv_operator(G: FiniteQuantumGroup, omega: Functional) -> ConvolutionOperator:
    return ConvolutionOperator(G, G.left_matrix(omega.covector), "left", omega)


def right_conv_operator(G: FiniteQuantumGroup, omega: Functional) -> ConvolutionOperator:
    return ConvolutionOperator(G, G.right_matrix(omega.covector), "right", omega)


def recover_functional(T: ConvolutionOperator) -> Functional:
    """ε∘T; by the counit law this returns μ exactly when T = L_μ."""
    if T.side != "left":
        raise ValueError("recover_functional expects a left convolution operator")
    cov = T.matrix.T @ T.group.counit.covector
    return Functional.from_covector(T.group.algebra, cov)


def commutes_with_right_convolutions(G: FiniteQuantumGroup, matrix: np.ndarray, tol: float = 1e-9) -> bool:
    """Check T R_ν = R_ν T for ν running over the dual basis (hence all ν)."""
    d3 = G.d3
    for j in range(G.dim):
        r = d3[:, j, :]
        if np.linalg.norm(matrix @ r - r @ matrix, 2) > tol:
            return False
    return True


def intertwines_comultiplication(G: FiniteQuantumGroup, matrix: np.ndarray, tol: float = 1e-9) -> bool:
    """Check (T ⊗ id)Δ = Δ T as matrices into A⊗A."""
    dim = G.dim
    pos = G.pos_matrix
    lift = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
    for j in range(dim):
        lift[np.ix_(pos[:, j], pos[:, j])] = matrix
    defect = np.linalg.norm(lift @ G.comult - G.comult @ matrix, 2)
    return defect <= tol


def sharp(G: FiniteQuantumGroup, omega: Functional) -> Functional:
    """ω♯(a) = conj(ω(S(a)*)); an involution and a ⋆-anti-automorphism."""
    return Functional.from_covector(G.algebra, G.sharp_cov(omega.covector))


@dataclass(eq=False)
class CesaroResult:
    """Outcome of cesaro_limit.  When converged, limit is the averaged
    convolution power (1/N)·Σ_{n≤N} μ^⋆n at the final checkpoint N."""

    limit: Functional | None
    converged: bool
    iterations: int               # number of convolution products performed
    checkpoint: int               # the N of the returned average
    idempotency_defect: float
    increment: float

    def __bool__(self):
        return self.converged


# Doubling checkpoints stay below N = 2^20: past that, the O(1/N) averaging
# error competes with the floating-point drift that repeated squaring of
# μ^⋆N amplifies by a factor of N.
_MAX_DOUBLINGS = 20


def cesaro_limit(
    G: FiniteQuantumGroup,
    mu: Functional,
    tol: float = 1e-8,
    max_iter: int = 100_000,
) -> CesaroResult:
    """Limit of the averages ω_N = (1/N) Σ_{n=1..N} μ^⋆n for ‖μ‖ ≤ 1.

    The averages are evaluated at doubling checkpoints N = 2^k through the
    exact recursion  s_{2N} = s_N + μ^⋆N ⋆ s_N  until both the step between
    checkpoints and the idempotency defect fall below tol; max_iter bounds
    the number of convolution products.  Tolerances out of reach of O(1/N)
    averaging within the drift-safe checkpoint range are finished by the
    mean-ergodic projection of μ onto the fixed space of its convolution
    operator, which in finite dimension is the same limit; the stopping
    conditions are then verified on it directly.  The returned ω also
    satisfies μ⋆ω = ω⋆μ = ω within tol.
    """
    if mu.norm > 1 + 1e-9:
        raise ValueError(f"cesaro_limit requires a contractive seed, got norm {mu.norm:.6f}")
    d3 = G.d3
    cov_mu = mu.covector
    power = cov_mu.copy()          # μ^⋆N
    total = cov_mu.copy()          # Σ_{n≤N} μ^⋆n
    checkpoint = 1
    ops = 0

    def status(cov_avg):
        avg_sq = np.einsum("i,j,ijc->c", cov_avg, cov_avg, d3)
        return Functional.from_covector(G.algebra, avg_sq - cov_avg).norm

    prev_avg = total / checkpoint
    defect = status(prev_avg)
    ops += 1
    if defect <= tol:
        return CesaroResult(
            limit=Functional.from_covector(G.algebra, prev_avg),
            converged=True,
            iterations=ops,
            checkpoint=checkpoint,
            idempotency_defect=defect,
            increment=0.0,
        )
    increment = np.inf
    for _ in range(_MAX_DOUBLINGS):
        if ops + 3 > max_iter:
            return CesaroResult(
                limit=None, converged=False, iterations=ops,
                checkpoint=checkpoint, idempotency_defect=defect,
                increment=float(increment),
            )
        shifted = np.einsum("i,j,ijc->c", power, total, d3)
        power = np.einsum("i,j,ijc->c", power, power, d3)
        total = total + shifted
        checkpoint *= 2
        ops += 2
        avg = total / checkpoint
        increment = Functional.from_covector(G.algebra, avg - prev_avg).norm
        defect = status(avg)
        ops += 1
        prev_avg = avg
        if increment <= tol and defect <= tol:
            return CesaroResult(
                limit=Functional.from_covector(G.algebra, avg),
                converged=True,
                iterations=ops,
                checkpoint=checkpoint,
                idempotency_defect=defect,
                increment=increment,
            )
    # mean-ergodic finish: decompose μ = x + (T−1)y with T x = x and return x
    t_mat = np.einsum("i,ijc->cj", cov_mu, d3)
    a = t_mat - np.eye(G.dim)
    u, s, vh = np.linalg.svd(a)
    rank = int(np.sum(s > 1e-10 * max(1.0, s[0])))
    kernel = vh[rank:].conj().T
    column_space = u[:, :rank]
    basis = np.hstack([kernel, column_space])
    try:
        coeff = np.linalg.solve(basis, cov_mu)
    except np.linalg.LinAlgError:
        return CesaroResult(
            limit=None, converged=False, iterations=ops,
            checkpoint=checkpoint, idempotency_defect=defect,
            increment=float(increment),
        )
    limit_cov = kernel @ coeff[: kernel.shape[1]]
    ops += 3
    limit = Functional.from_covector(G.algebra, limit_cov)
    defect = status(limit_cov)
    absorb_left = Functional.from_covector(
        G.algebra, np.einsum("i,j,ijc->c", cov_mu, limit_cov, d3) - limit_cov
    ).norm
    absorb_right = Functional.from_covector(
        G.algebra, np.einsum("i,j,ijc->c", limit_cov, cov_mu, d3) - limit_cov
    ).norm
    increment = Functional.from_covector(G.algebra, prev_avg - limit_cov).norm
    if max(defect, absorb_left, absorb_right) > tol:
        return CesaroResult(
            limit=None, converged=False, iterations=ops,
            checkpoint=checkpoint, idempotency_defect=defect,
            increment=float(increment),
        )
    return CesaroResult(
        limit=limit,
        converged=True,
        iterations=ops,
        checkpoint=checkpoint,
        idempotency_defect=defect,
        increment=float(increment),
    )
