"""Numerical Artin-Wedderburn decomposition of a finite-dimensional
*-algebra presented through its left regular representation.

Given the left-multiplication matrices of a basis (as a *-representation on
the GNS space of a faithful trace) and matching right-multiplication
matrices spanning the commutant, a random Hermitian commutant element is
diagonalized; its eigenspaces are irreducible left submodules, one block of
size d appearing d times.  Grouping eigenspaces by character and keeping one
representative per class yields a *-isomorphism onto ⊕_k M_{n_k}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(eq=False)
class BlockSplit:
    """Result of a decomposition: block dimensions and the isometries picking
    one irreducible submodule per equivalence class."""

    block_dims: tuple[int, ...]
    isometries: list[np.ndarray]   # one N×d isometry per block, class order

    def map_matrix(self, left_mults: list[np.ndarray]) -> np.ndarray:
        """Matrix of the *-isomorphism b ↦ ⊕_k Q_k† L_b Q_k over the input
        basis, with columns in the vec coordinates of ⊕ M_{n_k}."""
        dim = len(left_mults)
        total = sum(d * d for d in self.block_dims)
        phi = np.empty((total, dim), dtype=np.complex128)
        for b, lb in enumerate(left_mults):
            chunks = [ (q.conj().T @ lb @ q).ravel() for q in self.isometries ]
            phi[:, b] = np.concatenate(chunks)
        return phi


def _cluster(eigenvalues: np.ndarray, rel_gap: float = 1e-6) -> list[np.ndarray]:
    scale = max(1.0, float(np.abs(eigenvalues).max()))
    clusters, start = [], 0
    for i in range(1, len(eigenvalues) + 1):
        if i == len(eigenvalues) or eigenvalues[i] - eigenvalues[i - 1] > rel_gap * scale:
            clusters.append(np.arange(start, i))
            start = i
    return clusters


def decompose(
    left_mults: list[np.ndarray],
    right_mults: list[np.ndarray],
    rng: np.random.Generator,
    max_attempts: int = 12,
    tol: float = 1e-8,
) -> BlockSplit:
    """Split C^N into one irreducible left submodule per block.

    left_mults/right_mults: N×N matrices of left/right multiplication by each
    basis element, in coordinates where left multiplication is a
    *-representation (orthonormal GNS coordinates of a faithful trace).
    """
    n = left_mults[0].shape[0]
    last_error = None
    for _ in range(max_attempts):
        coeff = rng.standard_normal(len(right_mults)) + 1j * rng.standard_normal(len(right_mults))
        x = sum(c * r for c, r in zip(coeff, right_mults))
        h = x + x.conj().T
        w, v = np.linalg.eigh(h)
        clusters = _cluster(w)
        try:
            return _extract(left_mults, v, clusters, n, tol)
        except _SplitFailure as exc:  # unlucky sample; retry with fresh coefficients
            last_error = exc
    raise RuntimeError(f"block decomposition failed after {max_attempts} attempts: {last_error}")


class _SplitFailure(Exception):
    pass


def _extract(left_mults, v, clusters, n, tol) -> BlockSplit:
    reps = []
    for idx in clusters:
        q = v[:, idx]
        # eigenspaces of a commutant element must be invariant under the algebra
        residual = max(
            float(np.linalg.norm(lb @ q - q @ (q.conj().T @ lb @ q), 2)) for lb in left_mults
        )
        if residual > tol:
            raise _SplitFailure(f"cluster is not an invariant subspace (residual {residual:.2e})")
        char = np.array([np.trace(q.conj().T @ lb @ q) for lb in left_mults])
        reps.append((q, char))
    # group clusters carrying the same character (equivalent submodules)
    classes: list[list] = []
    for q, char in reps:
        for cls in classes:
            if np.linalg.norm(cls[0][1] - char) <= 1e-6 * max(1.0, np.linalg.norm(char)):
                cls.append((q, char))
                break
        else:
            classes.append([(q, char)])
    dims = [cls[0][0].shape[1] for cls in classes]
    for cls, d in zip(classes, dims):
        if any(q.shape[1] != d for q, _ in cls):
            raise _SplitFailure("inconsistent dimensions inside a character class")
        if len(cls) != d:
            raise _SplitFailure("multiplicity does not match dimension (accidental degeneracy)")
    if sum(d * d for d in dims) != n:
        raise _SplitFailure(f"block dimensions {dims} do not fill dimension {n}")
    order = sorted(
        range(len(classes)),
        key=lambda i: (
            dims[i],
            tuple(zip(np.round(classes[i][0][1].real, 8), np.round(classes[i][0][1].imag, 8))),
        ),
    )
    return BlockSplit(
        block_dims=tuple(dims[i] for i in order),
        isometries=[classes[i][0][0] for i in order],
    )
