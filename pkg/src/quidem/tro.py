"""Ternary rings of operators attached to contractive idempotents: the image
of the left convolution operator, its linking algebra inside 2×2 matrices
over the algebra, the entrywise conditional expectation built from the
absolute values, and recovery of the idempotent from an invariant TRO."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraElement,
    Functional,
    MultiMatrixAlgebra,
    TensorSplit,
    left_mult_matrix,
    polar_decompose,
    right_mult_matrix,
    tensor_algebra,
)
from .convolution import ConvolutionOperator, commutes_with_right_convolutions
from .idempotents import is_contractive_idempotent
from .qgroup import FiniteQuantumGroup

_M2 = MultiMatrixAlgebra((2,))


@dataclass(eq=False)
class OperatorSubspace:
    """Subspace of a multi-matrix algebra with a basis orthonormal for the
    trace inner product ⟨a, b⟩ = Tr(a*b)."""

    algebra: MultiMatrixAlgebra
    matrix: np.ndarray            # (dim, k), orthonormal columns

    @classmethod
    def from_spanning(cls, algebra: MultiMatrixAlgebra, vectors, cutoff: float = 1e-10) -> "OperatorSubspace":
        stack = np.column_stack([np.asarray(v, dtype=np.complex128) for v in vectors])
        u, s, _ = np.linalg.svd(stack, full_matrices=False)
        if s.size == 0 or s[0] == 0.0:
            return cls(algebra, np.zeros((algebra.dim, 0), dtype=np.complex128))
        keep = int(np.sum(s > cutoff * s[0]))
        return cls(algebra, u[:, :keep])

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def basis(self) -> list[AlgebraElement]:
        return [self.algebra.from_vec(self.matrix[:, j]) for j in range(self.dim)]

    def residual(self, x: AlgebraElement) -> float:
        """Hilbert-Schmidt distance from x to its trace-orthogonal projection."""
        v = x.vec
        return float(np.linalg.norm(v - self.matrix @ (self.matrix.conj().T @ v)))

    def contains(self, x: AlgebraElement, tol: float = 1e-8) -> bool:
        return self.residual(x) <= tol

    def projector(self) -> np.ndarray:
        return self.matrix @ self.matrix.conj().T

    def equals(self, other: "OperatorSubspace", tol: float = 1e-8) -> bool:
        return float(np.linalg.norm(self.projector() - other.projector(), 2)) <= tol

    def adjoint_space(self) -> "OperatorSubspace":
        vectors = [self.algebra.from_vec(self.matrix[:, j]).adjoint().vec for j in range(self.dim)]
        return OperatorSubspace.from_spanning(self.algebra, vectors)


def image_subspace(T: ConvolutionOperator | np.ndarray, algebra: MultiMatrixAlgebra | None = None) -> OperatorSubspace:
    """Orthonormal basis of the range of a linear map on the algebra."""
    if isinstance(T, ConvolutionOperator):
        matrix, algebra = T.matrix, T.group.algebra
    else:
        matrix = np.asarray(T, dtype=np.complex128)
        if algebra is None:
            raise ValueError("algebra must be given for a bare matrix")
    u, s, _ = np.linalg.svd(matrix)
    if s.size == 0 or s[0] == 0.0:
        return OperatorSubspace(algebra, np.zeros((algebra.dim, 0), dtype=np.complex128))
    keep = int(np.sum(s > 1e-10 * s[0]))
    return OperatorSubspace(algebra, u[:, :keep])


def is_tro(X: OperatorSubspace, tol: float = 1e-8) -> bool:
    """Closure under the triple product x y* z on all basis triples."""
    basis = X.basis
    for x in basis:
        for y in basis:
            ystar = y.adjoint()
            for z in basis:
                if X.residual(x * ystar * z) > tol:
                    return False
    return True


def is_nondegenerate(X: OperatorSubspace, tol: float = 1e-8) -> bool:
    """span(X·A) = A and span(A·X) = A (rank tests)."""
    alg = X.algebra
    basis_a = alg.basis()
    rows_r = [(x * a).vec for x in X.basis for a in basis_a]
    rows_l = [(a * x).vec for x in X.basis for a in basis_a]
    return (
        _rank(np.column_stack(rows_r)) == alg.dim
        and _rank(np.column_stack(rows_l)) == alg.dim
    )


def _rank(mat: np.ndarray, rtol: float = 1e-8) -> int:
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def is_right_invariant(G: FiniteQuantumGroup, X: OperatorSubspace, tol: float = 1e-8) -> bool:
    """R_ν(X) ⊆ X for ν over the dual basis, hence for every functional."""
    d3 = G.d3
    for j in range(G.dim):
        r = d3[:, j, :]
        for x in X.basis:
            if X.residual(G.algebra.from_vec(r @ x.vec)) > tol:
                return False
    return True


@dataclass(eq=False)
class LinkingAlgebra:
    """The 2×2 linking C*-algebra [[⟨XX*⟩, X], [X*, ⟨X*X⟩]] inside M₂(A)."""

    tro: OperatorSubspace
    left: OperatorSubspace
    right: OperatorSubspace
    ambient: TensorSplit

    def embed(self, i: int, j: int, x: AlgebraElement) -> np.ndarray:
        """Vec in M₂(A) of the matrix with x at entry (i, j) and zeros elsewhere."""
        dim = self.tro.algebra.dim
        out = np.zeros(self.ambient.algebra.dim, dtype=np.complex128)
        out[self.ambient.positions[(2 * i + j) * dim + np.arange(dim)]] = x.vec
        return out

    def embedded_basis(self) -> list[np.ndarray]:
        out = [self.embed(0, 0, x) for x in self.left.basis]
        out += [self.embed(0, 1, x) for x in self.tro.basis]
        out += [self.embed(1, 0, x.adjoint()) for x in self.tro.basis]
        out += [self.embed(1, 1, x) for x in self.right.basis]
        return out

    def corner_dims(self) -> tuple[int, int, int]:
        return self.left.dim, self.tro.dim, self.right.dim

    def multiplicative_defect(self, tol_rank: float = 1e-10) -> float:
        """Largest residual of a product (or adjoint) of embedded basis
        elements against the span of the embedded basis (closure of the 2×2
        array under multiplication and adjoint)."""
        basis = self.embedded_basis()
        span = OperatorSubspace.from_spanning(self.ambient.algebra, basis, tol_rank)
        amb = self.ambient.algebra
        elems = [amb.from_vec(v) for v in basis]
        worst = max((span.residual(e.adjoint()) for e in elems), default=0.0)
        for eu in elems:
            for ev in elems:
                worst = max(worst, span.residual(eu * ev))
        return worst


def linking_algebra(X: OperatorSubspace, tol: float = 1e-8) -> LinkingAlgebra:
    """Left and right linking algebras ⟨XX*⟩ and ⟨X*X⟩ of a TRO; for a TRO the
    spans of pairwise products are already closed under multiplication."""
    if not is_tro(X, tol):
        raise ValueError("linking_algebra requires a TRO")
    basis = X.basis
    left_vecs = [(x * y.adjoint()).vec for x in basis for y in basis]
    right_vecs = [(x.adjoint() * y).vec for x in basis for y in basis]
    left = OperatorSubspace.from_spanning(X.algebra, left_vecs)
    right = OperatorSubspace.from_spanning(X.algebra, right_vecs)
    ambient = tensor_algebra(_M2, X.algebra)
    return LinkingAlgebra(tro=X, left=left, right=right, ambient=ambient)


@dataclass(eq=False)
class SchurExpectation:
    """Entrywise (Schur) map on M₂(A) with one linear map per entry."""

    group: FiniteQuantumGroup
    entries: list                  # 2×2 nested list of (dim, dim) matrices
    ambient: TensorSplit

    @property
    def matrix(self) -> np.ndarray:
        dim = self.group.dim
        total = self.ambient.algebra.dim
        out = np.zeros((total, total), dtype=np.complex128)
        for i in range(2):
            for j in range(2):
                idx = self.ambient.positions[(2 * i + j) * dim + np.arange(dim)]
                out[np.ix_(idx, idx)] = self.entries[i][j]
        return out

    def entry_indices(self, i: int, j: int) -> np.ndarray:
        dim = self.group.dim
        return self.ambient.positions[(2 * i + j) * dim + np.arange(dim)]


def build_expectation(G: FiniteQuantumGroup, omega: Functional, tol: float = 1e-8) -> SchurExpectation:
    """The extension of L_ω to a conditional expectation of M₂(A) onto the
    linking algebra of its image: entrywise left convolutions by
    [[|ω|_r, ω], [ω̄, |ω|_l]]."""
    if not is_contractive_idempotent(G, omega, max(tol, 1e-9)):
        raise ValueError("build_expectation requires a contractive idempotent")
    parts = polar_decompose(omega)
    entries = [
        [G.left_matrix(parts.abs_r.covector), G.left_matrix(omega.covector)],
        [G.left_matrix(omega.conjugate().covector), G.left_matrix(parts.abs_l.covector)],
    ]
    return SchurExpectation(group=G, entries=entries, ambient=tensor_algebra(_M2, G.algebra))


def is_schur(E: SchurExpectation, tol: float = 1e-10) -> bool:
    """The output entry (i,j) depends only on the input entry (i,j): the full
    matrix has no cross-entry coupling."""
    full = E.matrix
    mask = np.ones_like(full, dtype=bool)
    for i in range(2):
        for j in range(2):
            idx = E.entry_indices(i, j)
            mask[np.ix_(idx, idx)] = False
    return float(np.abs(full[mask]).max()) <= tol if mask.any() else True


@dataclass(eq=False)
class ExpectationCheck:
    """Residuals of the conditional-expectation axioms on a linking algebra."""

    idempotent: float
    fixes_subalgebra: float
    bimodule: float
    choi_min_eigenvalue: float

    def passed(self, tol: float = 1e-8, cp_floor: float = -1e-9) -> bool:
        return (
            max(self.idempotent, self.fixes_subalgebra, self.bimodule) <= tol
            and self.choi_min_eigenvalue >= cp_floor
        )


def expectation_checks(E: SchurExpectation, B: LinkingAlgebra) -> ExpectationCheck:
    """E∘E = E, E fixes the linking algebra, the bimodule property over it,
    and complete positivity through the Choi matrix of the block-compressed
    extension to full matrices.

    The bimodule property E(b₁ x b₂) = b₁ E(x) b₂ over all x is equivalent to
    E commuting with L_{b₁} R_{b₂}, checked on every basis pair of the
    linking algebra at once."""
    amb = B.ambient.algebra
    mat = E.matrix
    idem = float(np.linalg.norm(mat @ mat - mat, 2))
    basis_b = B.embedded_basis()
    fixes = max(
        (float(np.linalg.norm(mat @ v - v)) for v in basis_b), default=0.0
    )
    elems_b = [amb.from_vec(v) for v in basis_b]
    lmults = [left_mult_matrix(b) for b in elems_b]
    rmults = [right_mult_matrix(b) for b in elems_b]
    bimodule = 0.0
    e_after_l = [mat @ lm for lm in lmults]
    r_after_e = [rm @ mat for rm in rmults]
    for i, lm in enumerate(lmults):
        for j, rm in enumerate(rmults):
            defect = np.linalg.norm(e_after_l[i] @ rm - lm @ r_after_e[j])
            bimodule = max(bimodule, float(defect))
    choi_min = _choi_min_eigenvalue(E)
    return ExpectationCheck(
        idempotent=idem,
        fixes_subalgebra=fixes,
        bimodule=bimodule,
        choi_min_eigenvalue=choi_min,
    )


def _choi_min_eigenvalue(E: SchurExpectation) -> float:
    """Min eigenvalue of the Choi matrix of E composed with the block-diagonal
    compression of the containing full matrix algebra (CP iff E is CP)."""
    amb = E.ambient.algebra
    sizes = amb.block_dims
    n_total = sum(sizes)
    mat = E.matrix
    choi = np.zeros((n_total * n_total, n_total * n_total), dtype=np.complex128)
    start = 0
    for k, n in enumerate(sizes):
        for p in range(n):
            for q in range(n):
                unit = np.zeros(amb.dim, dtype=np.complex128)
                unit[amb.index(k, p, q)] = 1.0
                image = amb.split(mat @ unit)
                out = np.zeros((n_total, n_total), dtype=np.complex128)
                pos = 0
                for kk, nn in enumerate(sizes):
                    out[pos: pos + nn, pos: pos + nn] = image[kk]
                    pos += nn
                row, col = start + p, start + q
                choi[row * n_total:(row + 1) * n_total,
                     col * n_total:(col + 1) * n_total] += out
        start += n
    # a non-Hermitian Choi matrix means the map is not Hermiticity-preserving;
    # fold that defect into the returned bound so such maps fail the floor
    herm_defect = float(np.linalg.norm(choi - choi.conj().T, 2)) / 2
    eigs = np.linalg.eigvalsh((choi + choi.conj().T) / 2)
    return float(eigs.min()) - herm_defect


def is_conditional_expectation(
    E: SchurExpectation, B: LinkingAlgebra, tol: float = 1e-8, cp_floor: float = -1e-9
) -> bool:
    return expectation_checks(E, B).passed(tol, cp_floor)


def preserves_weight(E: SchurExpectation, tol: float = 1e-8) -> bool:
    """h⁽²⁾∘E = h⁽²⁾ on M₂(A), where h⁽²⁾ of a 2×2 matrix is the sum of the
    Haar values of the diagonal entries."""
    G = E.group
    dim = G.dim
    cov = np.zeros(E.ambient.algebra.dim, dtype=np.complex128)
    cov[E.entry_indices(0, 0)] = G.haar.covector
    cov[E.entry_indices(1, 1)] = G.haar.covector
    defect = float(np.abs(E.matrix.T @ cov - cov).max())
    return defect <= tol


@dataclass(eq=False)
class TroExpectationReport:
    """Residuals of the mixed-product identities tying L_ω to the left
    convolutions by its absolute values, of the TRO-expectation axioms, and
    the TRO property of the image."""

    identity_residuals: dict
    expectation_residuals: dict
    image_is_tro: bool

    def passed(self, tol: float = 1e-8) -> bool:
        return (
            self.image_is_tro
            and all(v <= tol for v in self.identity_residuals.values())
            and all(v <= tol for v in self.expectation_residuals.values())
        )

    @property
    def max_residual(self) -> float:
        return max(
            list(self.identity_residuals.values()) + list(self.expectation_residuals.values())
        )


def check_tro_expectation(G: FiniteQuantumGroup, omega: Functional, tol: float = 1e-8) -> TroExpectationReport:
    """Verify, over all basis pairs, the four identities

        P(P(a)b) = P(a)Q_l(b),     Q_l(P(a)*b) = P(a)*P(b),
        P(aP(b)) = Q_r(a)P(b),     Q_r(aP(b)*) = P(a)P(b)*,

    with P = L_ω, Q_r = L_{|ω|_r}, Q_l = L_{|ω|_l}; then the three
    TRO-expectation axioms on the image, and the TRO property of the image."""
    if not is_contractive_idempotent(G, omega, max(tol, 1e-9)):
        raise ValueError("check_tro_expectation requires a contractive idempotent")
    parts = polar_decompose(omega)
    alg = G.algebra
    lw = G.left_matrix(omega.covector)
    lr = G.left_matrix(parts.abs_r.covector)
    ll = G.left_matrix(parts.abs_l.covector)
    basis = alg.basis()
    p_img = [alg.from_vec(lw[:, i]) for i in range(G.dim)]       # L_ω(e_i)
    qr_img = [alg.from_vec(lr[:, i]) for i in range(G.dim)]
    ql_img = [alg.from_vec(ll[:, i]) for i in range(G.dim)]

    def lmap(mat, x):
        return alg.from_vec(mat @ x.vec)

    res = {"left_absorb": 0.0, "left_adjoint_absorb": 0.0, "right_absorb": 0.0, "right_adjoint_absorb": 0.0}
    for i in range(G.dim):
        pa = p_img[i]
        pa_star = pa.adjoint()
        for j in range(G.dim):
            b = basis[j]
            res["left_absorb"] = max(
                res["left_absorb"], (lmap(lw, pa * b) - pa * ql_img[j]).operator_norm
            )
            res["left_adjoint_absorb"] = max(
                res["left_adjoint_absorb"], (lmap(ll, pa_star * b) - pa_star * p_img[j]).operator_norm
            )
            res["right_absorb"] = max(
                res["right_absorb"], (lmap(lw, b * p_img[i]) - qr_img[j] * p_img[i]).operator_norm
            )
            res["right_adjoint_absorb"] = max(
                res["right_adjoint_absorb"],
                (lmap(lr, b * pa_star) - p_img[j] * pa_star).operator_norm,
            )

    image = image_subspace(lw, alg)
    xb = image.basis
    exp_res = {"expect_right_pair": 0.0, "expect_middle": 0.0, "expect_left_pair": 0.0}
    for a in basis:
        pa = lmap(lw, a)
        for x in xb:
            xs = x.adjoint()
            for y in xb:
                exp_res["expect_right_pair"] = max(
                    exp_res["expect_right_pair"],
                    (lmap(lw, a * xs * y) - pa * xs * y).operator_norm,
                )
                exp_res["expect_middle"] = max(
                    exp_res["expect_middle"],
                    (lmap(lw, x * a.adjoint() * y) - x * pa.adjoint() * y).operator_norm,
                )
                exp_res["expect_left_pair"] = max(
                    exp_res["expect_left_pair"],
                    (lmap(lw, x * xs * a) - x * xs * pa).operator_norm,
                )
    return TroExpectationReport(
        identity_residuals=res,
        expectation_residuals=exp_res,
        image_is_tro=is_tro(image, tol),
    )


def triple_product_identities(G: FiniteQuantumGroup, omega: Functional) -> dict:
    """Residuals of the four equivalent expressions for the triple product of
    images: the direct product L_ω(a)L_ω(b)*L_ω(c) against the three absorbed
    forms (the first absorbed form already forces the other two)."""
    alg = G.algebra
    lw = G.left_matrix(omega.covector)
    basis = alg.basis()
    imgs = [alg.from_vec(lw[:, i]) for i in range(G.dim)]

    def lmap(x):
        return alg.from_vec(lw @ x.vec)

    worst = {"first": 0.0, "second": 0.0, "third": 0.0}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            pbs = imgs[j].adjoint()
            for k, c in enumerate(basis):
                direct = imgs[i] * pbs * imgs[k]
                worst["first"] = max(worst["first"], (lmap(imgs[i] * pbs * c) - direct).operator_norm)
                worst["second"] = max(worst["second"], (lmap(imgs[i] * b.adjoint() * imgs[k]) - direct).operator_norm)
                worst["third"] = max(worst["third"], (lmap(a * pbs * imgs[k]) - direct).operator_norm)
    return worst


@dataclass(eq=False)
class RecoveryResult:
    """Outcome of recover_idempotent; when not ok, reasons lists the failed
    preconditions or verification steps."""

    functional: Functional | None
    ok: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def recover_idempotent(G: FiniteQuantumGroup, X: OperatorSubspace, tol: float = 1e-8) -> RecoveryResult:
    """Recover the contractive idempotent ω with X = L_ω(A) from an invariant
    nondegenerate TRO.

    The candidate for L_ω is the orthogonal projection of A onto X in the
    Haar GNS inner product ⟨a,b⟩ = h(a*b); a contractive idempotent is fixed
    by the sharp involution, which makes its left convolution GNS
    self-adjoint, so the candidate is exact whenever X arises from one.  If
    the projection fails to commute with the right convolutions the subspace
    is reported as not recoverable."""
    reasons = []
    if not is_tro(X, tol):
        reasons.append("not a TRO")
    if not is_nondegenerate(X, tol):
        reasons.append("not nondegenerate")
    if not is_right_invariant(G, X, tol):
        reasons.append("X is not right invariant")
    if not is_right_invariant(G, X.adjoint_space(), tol):
        reasons.append("X* is not right invariant")
    if not reasons:
        link = linking_algebra(X, tol)
        if not is_right_invariant(G, link.left, tol):
            reasons.append("left linking algebra is not right invariant")
        if not is_right_invariant(G, link.right, tol):
            reasons.append("right linking algebra is not right invariant")
    if reasons:
        return RecoveryResult(functional=None, ok=False, reasons=reasons)
    weights = G.haar_weight_vec
    if weights.min() <= 0:
        return RecoveryResult(functional=None, ok=False, reasons=["Haar weights not positive"])
    w_half = np.sqrt(weights)
    weighted = w_half[:, None] * X.matrix
    q, _ = np.linalg.qr(weighted)
    proj = (q @ q.conj().T) * (w_half[None, :] / w_half[:, None])
    if not commutes_with_right_convolutions(G, proj, max(tol, 1e-8)):
        return RecoveryResult(
            functional=None, ok=False,
            reasons=["orthogonal projection does not commute with right convolutions"],
        )
    omega = Functional.from_covector(G.algebra, proj.T @ G.counit.covector)
    if not is_contractive_idempotent(G, omega, max(tol, 1e-9)):
        return RecoveryResult(
            functional=None, ok=False, reasons=["recovered functional is not a contractive idempotent"]
        )
    recovered_image = image_subspace(G.left_matrix(omega.covector), G.algebra)
    if not recovered_image.equals(X, tol):
        return RecoveryResult(
            functional=None, ok=False, reasons=["image of the recovered idempotent differs from X"]
        )
    return RecoveryResult(functional=omega, ok=True)
