"""Finite quantum groups: a multi-matrix algebra together with explicit
comultiplication, counit, antipode and Haar state, all as dense linear data
over the matrix-unit basis.

Includes the axiom checker, duality (via the numerical Wedderburn splitting
of the convolution algebra), quotients by central supports, and group-like
unitaries."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import wedderburn
from .algebra import (
    AlgebraElement,
    Functional,
    MultiMatrixAlgebra,
    is_central,
    tensor_algebra,
)
from .groups import GroupTable


@dataclass(eq=False)
class FiniteQuantumGroup:
    """Quantum group structure data.  comult has shape (dim², dim) and maps
    vec coordinates of A to vec coordinates of A⊗A; antipode is (dim, dim).
    Treat instances as immutable."""

    algebra: MultiMatrixAlgebra
    comult: np.ndarray
    counit: Functional
    antipode: np.ndarray
    haar: Functional
    name: str = ""
    kind: str = "custom"
    table: GroupTable | None = None
    lambda_basis: np.ndarray | None = None  # group algebras: column g = vec(λ_g)

    def __post_init__(self):
        dim = self.algebra.dim
        comult = np.asarray(self.comult, dtype=np.complex128)
        antipode = np.asarray(self.antipode, dtype=np.complex128)
        if comult.shape != (dim * dim, dim):
            raise ValueError(f"comultiplication must have shape {(dim * dim, dim)}")
        if antipode.shape != (dim, dim):
            raise ValueError(f"antipode must have shape {(dim, dim)}")
        comult.flags.writeable = False
        antipode.flags.writeable = False
        object.__setattr__(self, "comult", comult)
        object.__setattr__(self, "antipode", antipode)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def ts(self):
        return tensor_algebra(self.algebra, self.algebra)

    @cached_property
    def pos_matrix(self) -> np.ndarray:
        return self.ts.positions.reshape(self.dim, self.dim)

    @cached_property
    def d3(self) -> np.ndarray:
        """d3[I, J, c] = coefficient of e_I ⊗ e_J in Δ(e_c)."""
        out = self.comult[self.pos_matrix, :]
        out.flags.writeable = False
        return out

    @cached_property
    def mult_tensor(self) -> np.ndarray:
        """mult_tensor[o, a, b] = vec(e_a · e_b)[o]."""
        dim = self.dim
        ms = np.zeros((dim, dim, dim))
        alg = self.algebra
        for k, n in enumerate(alg.block_dims):
            for i in range(n):
                for j in range(n):
                    for l in range(n):
                        ms[alg.index(k, i, l), alg.index(k, i, j), alg.index(k, j, l)] = 1.0
        ms.flags.writeable = False
        return ms

    @cached_property
    def unit_vec(self) -> np.ndarray:
        return self.algebra.identity().vec

    @cached_property
    def sharp_matrix(self) -> np.ndarray:
        """Matrix M with covector(ω♯) = M @ conj(covector(ω))."""
        out = self.antipode[self.algebra.transpose_perm, :].T.copy()
        out.flags.writeable = False
        return out

    def apply_comult(self, x: AlgebraElement) -> AlgebraElement:
        return self.ts.algebra.from_vec(self.comult @ x.vec)

    def apply_antipode(self, x: AlgebraElement) -> AlgebraElement:
        return self.algebra.from_vec(self.antipode @ x.vec)

    def convolve_cov(self, c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijc->c", c1, c2, self.d3)

    def left_matrix(self, cov: np.ndarray) -> np.ndarray:
        """Matrix of a ↦ (ω⊗id)Δ(a) for the functional with the given covector."""
        return np.einsum("i,ijc->jc", cov, self.d3)

    def right_matrix(self, cov: np.ndarray) -> np.ndarray:
        """Matrix of a ↦ (id⊗ω)Δ(a)."""
        return np.einsum("j,ijc->ic", cov, self.d3)

    def sharp_cov(self, cov: np.ndarray) -> np.ndarray:
        return self.sharp_matrix @ np.conj(cov)

    @cached_property
    def haar_weight_vec(self) -> np.ndarray:
        """Per-coordinate weights of the Haar GNS inner product
        ⟨a, b⟩ = h(a*b) = Σ_k w_k tr(a_k* b_k); the Haar density of a finite
        quantum group is central, so the weights are blockwise constants."""
        weights = np.empty(self.dim)
        for k, (block, n) in enumerate(zip(self.haar.density.blocks, self.algebra.block_dims)):
            w = float(np.trace(block).real) / n
            off = self.algebra.offsets[k]
            weights[off: off + n * n] = w
        weights.flags.writeable = False
        return weights

    def __repr__(self):
        return f"FiniteQuantumGroup({self.name or self.kind}, blocks={self.algebra.block_dims})"


@dataclass(eq=False)
class AxiomReport:
    """Named defect norms from a structure check; passes iff all ≤ tol."""

    defects: dict
    tol: float

    @property
    def passed(self) -> bool:
        return all(v <= self.tol for v in self.defects.values())

    @property
    def max_defect(self) -> float:
        return max(self.defects.values())

    def failures(self) -> dict:
        return {k: v for k, v in self.defects.items() if v > self.tol}

    def __repr__(self):
        status = "pass" if self.passed else f"FAIL {self.failures()}"
        return f"AxiomReport(max={self.max_defect:.3e}, tol={self.tol:g}, {status})"


def _numerical_rank(mat: np.ndarray, rtol: float = 1e-8) -> int:
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def verify_axioms(G: FiniteQuantumGroup, tol: float = 1e-9) -> AxiomReport:
    """Compute defect norms for every quantum-group axiom.

    Every defect is an operator norm (or a rank deficit, for the cancellation
    laws) and should vanish for a genuine finite quantum group.
    """
    A, AA, ts = G.algebra, G.ts.algebra, G.ts
    dim = A.dim
    basis = A.basis()
    images = [AA.from_vec(G.comult[:, i]) for i in range(dim)]
    star = A.transpose_perm
    defects: dict[str, float] = {}

    one_tensor_one = ts.element(A.identity(), A.identity())
    defects["comult_unital"] = (G.apply_comult(A.identity()) - one_tensor_one).operator_norm

    hom = 0.0
    for i in range(dim):
        for j in range(dim):
            prod_vec = (basis[i] * basis[j]).vec
            lhs = AA.from_vec(G.comult @ prod_vec)
            hom = max(hom, (lhs - images[i] * images[j]).operator_norm)
    defects["comult_homomorphism"] = hom

    star_def = 0.0
    for i in range(dim):
        star_vec = np.zeros(dim, dtype=np.complex128)
        star_vec[star[i]] = 1.0  # vec(e_i*)
        lhs = AA.from_vec(G.comult @ star_vec)
        star_def = max(star_def, (lhs - images[i].adjoint()).operator_norm)
    defects["comult_star"] = star_def

    # coassociativity, measured in the triple tensor algebra
    d3 = G.d3
    left4 = np.einsum("ijm,mkc->ijkc", d3, d3)
    right4 = np.einsum("jkm,imc->ijkc", d3, d3)
    diff = left4 - right4
    t3 = tensor_algebra(AA, A)
    pos3 = t3.positions.reshape(AA.dim, dim)[G.pos_matrix, :]
    coassoc = 0.0
    for c in range(dim):
        vec3 = np.zeros(t3.algebra.dim, dtype=np.complex128)
        vec3[pos3] = diff[:, :, :, c]
        coassoc = max(coassoc, t3.algebra.from_vec(vec3).operator_norm)
    defects["coassociativity"] = coassoc

    ce = G.counit.covector
    left_counit = np.einsum("i,ijc->jc", ce, d3)
    right_counit = np.einsum("j,ijc->ic", ce, d3)
    ident = np.eye(dim)
    defects["counit_left"] = max(
        A.from_vec(left_counit[:, c] - ident[:, c]).operator_norm for c in range(dim)
    )
    defects["counit_right"] = max(
        A.from_vec(right_counit[:, c] - ident[:, c]).operator_norm for c in range(dim)
    )

    # antipode laws m(S⊗id)Δ = ε(·)1 = m(id⊗S)Δ
    ms = G.mult_tensor
    s_mat = G.antipode
    lhs_left = np.einsum("ijc,ki,okj->oc", d3, s_mat, ms)
    lhs_right = np.einsum("ijc,kj,oik->oc", d3, s_mat, ms)
    rhs = np.einsum("c,o->oc", ce, G.unit_vec)
    defects["antipode_left"] = max(
        A.from_vec(lhs_left[:, c] - rhs[:, c]).operator_norm for c in range(dim)
    )
    defects["antipode_right"] = max(
        A.from_vec(lhs_right[:, c] - rhs[:, c]).operator_norm for c in range(dim)
    )
    defects["antipode_involutive"] = max(
        A.from_vec((s_mat @ s_mat - ident)[:, c]).operator_norm for c in range(dim)
    )
    # S(a*) = S(a)* checked on the matrix-unit basis
    star_mat = np.zeros((dim, dim))
    star_mat[star, np.arange(dim)] = 1.0
    anti_star = s_mat @ star_mat - star_mat @ np.conj(s_mat)
    defects["antipode_star"] = max(
        A.from_vec(anti_star[:, c]).operator_norm for c in range(dim)
    )

    # Haar: a state, invariant on both sides
    d_h = G.haar.density
    herm = (d_h - d_h.adjoint()).operator_norm
    eig_min = min(
        np.linalg.eigvalsh((b + b.conj().T) / 2).min() for b in d_h.blocks
    )
    defects["haar_positive"] = max(herm, max(0.0, -float(eig_min)))
    defects["haar_trace_one"] = abs(d_h.trace - 1.0)
    ch = G.haar.covector
    left_h = np.einsum("i,ijc->jc", ch, d3)
    right_h = np.einsum("j,ijc->ic", ch, d3)
    defects["haar_left_invariant"] = max(
        A.from_vec(left_h[:, c] - ch[c] * G.unit_vec).operator_norm for c in range(dim)
    )
    defects["haar_right_invariant"] = max(
        A.from_vec(right_h[:, c] - ch[c] * G.unit_vec).operator_norm for c in range(dim)
    )

    # quantum cancellation laws: span Δ(A)(A⊗1) = A⊗A = span Δ(A)(1⊗A)
    one = A.identity()
    rows_left = np.empty((dim * dim, AA.dim), dtype=np.complex128)
    rows_right = np.empty((dim * dim, AA.dim), dtype=np.complex128)
    for i in range(dim):
        for j in range(dim):
            rows_left[i * dim + j] = (images[i] * ts.element(basis[j], one)).vec
            rows_right[i * dim + j] = (images[i] * ts.element(one, basis[j])).vec
    defects["cancellation_left"] = float(AA.dim - _numerical_rank(rows_left))
    defects["cancellation_right"] = float(AA.dim - _numerical_rank(rows_right))

    return AxiomReport(defects=defects, tol=tol)


def commutativity_defect(G: FiniteQuantumGroup) -> float:
    """Max operator norm of [e_i, e_j]; zero iff all blocks are 1×1."""
    basis = G.algebra.basis()
    return max(
        (a * b - b * a).operator_norm for a in basis for b in basis
    )


def cocommutativity_defect(G: FiniteQuantumGroup) -> float:
    """Max operator norm of (flip∘Δ − Δ)(e_c)."""
    flip = G.ts.flip
    AA = G.ts.algebra
    return max(
        AA.from_vec(G.comult[:, c][flip] - G.comult[:, c]).operator_norm
        for c in range(G.dim)
    )


def solve_haar_state(
    algebra: MultiMatrixAlgebra, comult: np.ndarray, tol: float = 1e-9
) -> Functional:
    """The unique bi-invariant state, found by solving the invariance
    equations (ω⊗id)Δ = ω(·)1 = (id⊗ω)Δ with ω(1) = 1 as a linear system."""
    dim = algebra.dim
    ts = tensor_algebra(algebra, algebra)
    d3 = comult[ts.positions.reshape(dim, dim), :]
    one = algebra.identity().vec
    eye = np.eye(dim)
    rows_l = np.transpose(d3, (1, 2, 0)).reshape(dim * dim, dim) - np.einsum(
        "j,ci->jci", one, eye
    ).reshape(dim * dim, dim)
    rows_r = np.transpose(d3, (0, 2, 1)).reshape(dim * dim, dim) - np.einsum(
        "i,cj->icj", one, eye
    ).reshape(dim * dim, dim)
    homogeneous = np.vstack([rows_l, rows_r])
    svals = np.linalg.svd(homogeneous, compute_uv=False)
    if np.sum(svals > 1e-8 * max(1.0, svals[0])) != dim - 1:
        raise ValueError("invariant state is not unique; not a quantum group structure")
    a = np.vstack([homogeneous, one[np.newaxis, :]])
    b = np.zeros(a.shape[0], dtype=np.complex128)
    b[-1] = 1.0
    cov, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.abs(a @ cov - b).max())
    if residual > tol:
        raise ValueError(f"Haar state solve failed (residual {residual:.2e})")
    return Functional.from_covector(algebra, cov)


def solve_antipode(
    algebra: MultiMatrixAlgebra,
    comult: np.ndarray,
    counit: Functional,
    tol: float = 1e-9,
) -> np.ndarray:
    """The antipode as the convolution inverse of the identity map: the
    unique S with m(S⊗id)Δ = ε(·)1 = m(id⊗S)Δ, solved as a linear system."""
    dim = algebra.dim
    ts = tensor_algebra(algebra, algebra)
    d3 = comult[ts.positions.reshape(dim, dim), :]
    ms = np.zeros((dim, dim, dim))
    for k, n in enumerate(algebra.block_dims):
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    ms[algebra.index(k, i, l), algebra.index(k, i, j), algebra.index(k, j, l)] = 1.0
    c1 = np.einsum("ijc,okj->coki", d3, ms).reshape(dim * dim, dim * dim)
    c2 = np.einsum("ijc,oik->cokj", d3, ms).reshape(dim * dim, dim * dim)
    rhs = np.einsum("c,o->co", counit.covector, algebra.identity().vec).reshape(dim * dim)
    a = np.vstack([c1, c2])
    b = np.concatenate([rhs, rhs])
    flat, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.abs(a @ flat - b).max())
    if residual > tol:
        raise ValueError(f"antipode solve failed (residual {residual:.2e})")
    return flat.reshape(dim, dim)


def _solve_dual_haar(G: FiniteQuantumGroup, tol: float = 1e-9) -> np.ndarray:
    """Vector eta with dual-Haar(f) = covector(f)·eta, from the invariance
    equations of the dual comultiplication f ↦ f∘m."""
    dim = G.dim
    ms = G.mult_tensor
    ce = G.counit.covector
    eye = np.eye(dim)
    rows_r = ms.reshape(dim * dim, dim) - np.einsum("j,ik->ijk", ce, eye).reshape(
        dim * dim, dim
    )
    rows_l = np.transpose(ms, (0, 2, 1)).reshape(dim * dim, dim) - np.einsum(
        "j,ik->ijk", ce, eye
    ).reshape(dim * dim, dim)
    homogeneous = np.vstack([rows_r, rows_l])
    svals = np.linalg.svd(homogeneous, compute_uv=False)
    if np.sum(svals > 1e-8 * max(1.0, svals[0])) != dim - 1:
        raise ValueError("dual Haar state is not unique")
    a = np.vstack([homogeneous, ce[np.newaxis, :]])
    b = np.zeros(a.shape[0], dtype=np.complex128)
    b[-1] = 1.0
    eta, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.abs(a @ eta - b).max())
    if residual > tol:
        raise ValueError(f"dual Haar solve failed (residual {residual:.2e})")
    return eta


def _dual_regular_split(G: FiniteQuantumGroup, seed: int = 11):
    """Wedderburn data of the convolution *-algebra (A*, ⋆, ♯) acting on the
    GNS space of its Haar trace.  Returns (eta, lt, split) with lt the list
    of left multiplication matrices in orthonormal coordinates."""
    dim = G.dim
    d3 = G.d3
    eta = _solve_dual_haar(G)
    msharp = G.sharp_matrix
    conv_after_sharp = np.einsum("ai,ajc->ijc", msharp, d3)
    gram = np.einsum("ijc,c->ij", conv_after_sharp, eta)
    gram = (gram + gram.conj().T) / 2
    evals, evecs = np.linalg.eigh(gram)
    if evals.min() <= 1e-12 * max(1.0, evals.max()):
        raise ValueError("dual Haar trace is not faithful; cannot split the dual")
    w_half = evecs @ np.diag(np.sqrt(evals)) @ evecs.conj().T
    w_half_inv = evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.conj().T
    lt = [w_half @ d3[b].T @ w_half_inv for b in range(dim)]
    rt = [w_half @ d3[:, b, :].T @ w_half_inv for b in range(dim)]
    # left multiplication must be a *-representation: L(f♯) = L(f)†
    star_res = max(
        np.linalg.norm(
            sum(msharp[a, b] * lt[a] for a in range(dim)) - lt[b].conj().T, 2
        )
        for b in range(dim)
    )
    if star_res > 1e-7:
        raise ValueError(f"dual regular representation is not a *-rep (residual {star_res:.2e})")
    rng = np.random.default_rng(seed)
    split = wedderburn.decompose(lt, rt, rng)
    return eta, lt, split


def dual_pair(
    G: FiniteQuantumGroup, seed: int = 11, tol: float = 1e-9
) -> tuple[FiniteQuantumGroup, np.ndarray]:
    """The dual quantum group plus the transform phi whose column b is the
    vec, in the dual algebra, of the image of the b-th dual basis functional."""
    rep = verify_axioms(G, tol)
    if not rep.passed:
        raise ValueError(f"dual() requires a verified quantum group; failures: {rep.failures()}")
    dim = G.dim
    eta, lt, split = _dual_regular_split(G, seed)
    phi = split.map_matrix(lt)
    cond = np.linalg.cond(phi)
    if cond > 1e8:
        raise ValueError(f"dual splitting is ill-conditioned (cond {cond:.2e})")
    dual_alg = MultiMatrixAlgebra(split.block_dims)
    tsd = tensor_algebra(dual_alg, dual_alg)
    big = np.einsum("bjk,pj,qk->bpq", G.mult_tensor, phi, phi)
    comult_cols = np.empty((tsd.algebra.dim, dim), dtype=np.complex128)
    for b in range(dim):
        vec = np.empty(tsd.algebra.dim, dtype=np.complex128)
        vec[tsd.positions] = big[b].ravel()
        comult_cols[:, b] = vec
    phi_inv = np.linalg.inv(phi)
    comult_dual = comult_cols @ phi_inv
    counit_dual = Functional.from_covector(dual_alg, np.linalg.solve(phi.T, G.unit_vec))
    antipode_dual = phi @ G.antipode.T @ phi_inv
    haar_dual = Functional.from_covector(dual_alg, np.linalg.solve(phi.T, eta))
    dual_group = FiniteQuantumGroup(
        algebra=dual_alg,
        comult=comult_dual,
        counit=counit_dual,
        antipode=antipode_dual,
        haar=haar_dual,
        name=f"dual({G.name})" if G.name else "dual",
        kind="dual",
        lambda_basis=None,
    )
    return dual_group, phi


def dual(G: FiniteQuantumGroup, seed: int = 11, tol: float = 1e-9) -> FiniteQuantumGroup:
    """The dual quantum group on A*: product = convolution, coproduct dual to
    multiplication, counit = evaluation at 1, antipode = transpose of S.

    The abstract convolution algebra is realized as a multi-matrix algebra by
    numerically splitting its regular representation."""
    return dual_pair(G, seed=seed, tol=tol)[0]


def group_like_unitaries(G: FiniteQuantumGroup, seed: int = 11, tol: float = 1e-8) -> list[AlgebraElement]:
    """All group-like unitaries of G, i.e. the *-characters of the dual
    convolution algebra (its one-dimensional blocks)."""
    _, lt, split = _dual_regular_split(G, seed)
    out = []
    for d, q in zip(split.block_dims, split.isometries):
        if d != 1:
            continue
        values = np.array([(q.conj().T @ m @ q).item() for m in lt])
        u = G.algebra.from_vec(values)
        if is_group_like(G, u, tol):
            out.append(u)
        else:  # numerical character that fails verification signals a bug
            raise RuntimeError("extracted dual character is not a group-like unitary")
    return out


def is_group_like(G: FiniteQuantumGroup, u: AlgebraElement, tol: float = 1e-8) -> bool:
    """True iff u is unitary and Δ(u) = u ⊗ u within tol."""
    ident = G.algebra.identity()
    if (u * u.adjoint() - ident).operator_norm > tol:
        return False
    if (u.adjoint() * u - ident).operator_norm > tol:
        return False
    defect = (G.apply_comult(u) - G.ts.element(u, u)).operator_norm
    return defect <= tol


@dataclass(eq=False)
class QuantumSubgroup:
    """A compact quantum subgroup (H, π): a surjective *-homomorphism
    π: A → C(H) intertwining comultiplications."""

    parent: FiniteQuantumGroup
    target: FiniteQuantumGroup
    projection: np.ndarray          # (dim_H, dim_G) over vec bases
    kept_blocks: tuple[int, ...]

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        return self.target.algebra.from_vec(self.projection @ x.vec)

    def intertwining_defect(self) -> float:
        """Max coefficient norm of ((π⊗π)Δ_G − Δ_H π) over basis columns."""
        g, h = self.parent, self.target
        lhs = _project_tensor(g, h, self.projection, g.comult)
        rhs = h.comult @ self.projection
        return float(np.linalg.norm(lhs - rhs, ord=np.inf))

    def is_surjective(self) -> bool:
        return _numerical_rank(self.projection) == self.target.algebra.dim


def _project_tensor(g: FiniteQuantumGroup, h: FiniteQuantumGroup, proj: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Apply π⊗π to each column of a (dim_G², n) matrix of A⊗A vecs."""
    pos_g = g.pos_matrix
    pos_h = h.pos_matrix
    out = np.empty((h.dim * h.dim, cols.shape[1]), dtype=np.complex128)
    for c in range(cols.shape[1]):
        coeff = cols[:, c][pos_g]
        reduced = proj @ coeff @ proj.T
        vec = np.empty(h.dim * h.dim, dtype=np.complex128)
        vec[pos_h] = reduced
        out[:, c] = vec
    return out


def quotient_by_support(
    G: FiniteQuantumGroup,
    s: AlgebraElement,
    haar_state: Functional | None = None,
    tol: float = 1e-9,
) -> QuantumSubgroup:
    """Compact quantum subgroup carried by the corner sA of a central
    projection s (the support of a Haar idempotent state).

    π is the corner compression; the induced comultiplication is checked to
    be well defined and the resulting structure must pass all axioms, which
    fails exactly when s is not the support of a Haar idempotent."""
    if not is_central(s, tol):
        raise ValueError("support projection is not central")
    alg = G.algebra
    kept = []
    for k, (block, n) in enumerate(zip(s.blocks, alg.block_dims)):
        if np.linalg.norm(block - np.eye(n), 2) <= tol:
            kept.append(k)
    if not kept:
        raise ValueError("support projection is zero")
    sub_alg = MultiMatrixAlgebra(tuple(alg.block_dims[k] for k in kept))
    proj = np.zeros((sub_alg.dim, alg.dim))
    row = 0
    for new_k, k in enumerate(kept):
        n = alg.block_dims[k]
        off = alg.offsets[k]
        proj[row: row + n * n, off: off + n * n] = np.eye(n * n)
        row += n * n
    sub_comult_candidate = _project_tensor_build(G, sub_alg, proj)
    counit_sub = Functional.from_covector(sub_alg, proj @ G.counit.covector)
    antipode_sub = proj @ G.antipode @ proj.T
    if haar_state is not None:
        haar_sub = Functional.from_covector(sub_alg, proj @ haar_state.covector)
    else:
        haar_sub = solve_haar_state(sub_alg, sub_comult_candidate)
    target = FiniteQuantumGroup(
        algebra=sub_alg,
        comult=sub_comult_candidate,
        counit=counit_sub,
        antipode=antipode_sub,
        haar=haar_sub,
        name=f"{G.name}/corner" if G.name else "corner",
        kind="corner",
    )
    sub = QuantumSubgroup(parent=G, target=target, projection=proj, kept_blocks=tuple(kept))
    well_defined = sub.intertwining_defect()
    if well_defined > max(tol, 1e-8):
        raise ValueError(
            f"induced comultiplication is not well defined (defect {well_defined:.2e}); "
            "the projection is not the support of a Haar idempotent"
        )
    rep = verify_axioms(target, max(tol, 1e-8))
    if not rep.passed:
        raise ValueError(
            f"corner structure fails quantum group axioms: {rep.failures()}; "
            "the projection is not the support of a Haar idempotent"
        )
    if not sub.is_surjective():
        raise ValueError("corner compression is not surjective")
    return sub


def _project_tensor_build(G: FiniteQuantumGroup, sub_alg: MultiMatrixAlgebra, proj: np.ndarray) -> np.ndarray:
    """Δ_H with Δ_H(π(a)) = (π⊗π)Δ(a), built on the corner coordinates."""
    ts_h = tensor_algebra(sub_alg, sub_alg)
    pos_h = ts_h.positions.reshape(sub_alg.dim, sub_alg.dim)
    pos_g = G.pos_matrix
    out = np.empty((ts_h.algebra.dim, sub_alg.dim), dtype=np.complex128)
    inject = proj.T  # coordinate sections: π∘ι = id on the corner
    for c in range(sub_alg.dim):
        coeff = (G.comult @ (inject[:, c]))[pos_g]
        reduced = proj @ coeff @ proj.T
        vec = np.empty(ts_h.algebra.dim, dtype=np.complex128)
        vec[pos_h] = reduced
        out[:, c] = vec
    return out
