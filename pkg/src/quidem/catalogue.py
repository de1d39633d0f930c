"""Builders for concrete finite quantum groups and their on-disk format:
function algebras C(G) and group algebras of classical tables, the
8-dimensional Kac-Paljutkin quantum group, and a JSON document format
(schema "qgspec-1") with bit-exact decimal round trips."""

from __future__ import annotations

import json
import warnings

import numpy as np

from .algebra import Functional, MultiMatrixAlgebra, tensor_algebra
from .groups import GroupTable, cyclic, dihedral, symmetric
from .qgroup import (
    FiniteQuantumGroup,
    dual_pair,
    solve_antipode,
    solve_haar_state,
    verify_axioms,
)


def function_algebra(table: GroupTable) -> FiniteQuantumGroup:
    """C(G) for a classical group: one 1×1 block per element, Δf(s,t) = f(st),
    ε(f) = f(e), S(f)(t) = f(t⁻¹), Haar = uniform average."""
    n = table.order
    alg = MultiMatrixAlgebra((1,) * n)
    ts = tensor_algebra(alg, alg)
    comult = np.zeros((n * n, n))
    for s in range(n):
        for t in range(n):
            comult[ts.positions[s * n + t], table.op(s, t)] = 1.0
    counit = Functional.from_covector(alg, np.eye(n)[table.identity])
    antipode = np.zeros((n, n))
    for g in range(n):
        antipode[table.inverse[g], g] = 1.0
    haar = Functional.from_covector(alg, np.full(n, 1.0 / n))
    return FiniteQuantumGroup(
        algebra=alg,
        comult=comult,
        counit=counit,
        antipode=antipode,
        haar=haar,
        name=f"C({_table_name(table)})",
        kind="function",
        table=table,
    )


def group_algebra(table: GroupTable, seed: int = 11) -> FiniteQuantumGroup:
    """Group algebra of a classical group as a multi-matrix algebra, realized
    by splitting the regular representation (the dual of C(G)); the images of
    the point masses are the group-like basis λ_g, recorded in lambda_basis."""
    fn = function_algebra(table)
    gd, phi = dual_pair(fn, seed=seed)
    # abstract dual basis of C(G)* is δ_g, so column g of phi is vec(λ_g)
    return FiniteQuantumGroup(
        algebra=gd.algebra,
        comult=gd.comult,
        counit=gd.counit,
        antipode=gd.antipode,
        haar=gd.haar,
        name=f"C*({_table_name(table)})",
        kind="group",
        table=table,
        lambda_basis=phi,
    )


def _table_name(table: GroupTable) -> str:
    return f"order{table.order}"


def kac_paljutkin(tol: float = 1e-12) -> FiniteQuantumGroup:
    """The 8-dimensional quantum group with blocks (1,1,1,1,2), neither
    commutative nor cocommutative.

    Presentation: the four characters d_g are labelled by the Klein group
    V = Z2×Z2 (identity = the counit block).  Fix the projective unitary
    family u_1 = 1, u_2 = diag(1,-1), u_3 = [[0,1],[i,0]], u_4 =
    [[0,1],[-i,0]] (u_2 u_3 = u_4 = -u_3 u_2, a nondegenerate commutator
    pairing).  Then

        Δ(d_g) = Σ_h d_h ⊗ d_{hg}  +  |Ω_g⟩⟨Ω_g|,
        Δ(a)   = Σ_g d_g ⊗ u_g a u_g*  +  Σ_g (u_gᵀ a conj(u_g)) ⊗ d_g,

    with Ω_g = (u_g⊗1)·(|00⟩+|11⟩)/√2 the Bell-type entangled vectors in
    the M₂⊗M₂ corner; the right tensor legs carry the transposed
    conjugations (which swap u_3 and u_4), and that asymmetry is exactly
    what makes the structure noncocommutative.  The antipode and Haar state
    are recovered from the axioms as linear systems, and the construction
    is rejected unless every axiom holds to the requested tolerance."""
    alg = MultiMatrixAlgebra((1, 1, 1, 1, 2))
    ts = tensor_algebra(alg, alg)
    zero2 = np.zeros((2, 2))

    def element(diag, m):
        blocks = [np.array([[diag[k]]], dtype=np.complex128) for k in range(4)]
        blocks.append(np.array(m, dtype=np.complex128))
        return alg.element(blocks)

    d = [element([1.0 if k == g else 0.0 for k in range(4)], zero2) for g in range(4)]
    units = [[element([0.0] * 4, np.outer(np.eye(2)[k], np.eye(2)[l])) for l in range(2)] for k in range(2)]
    u = [
        np.eye(2),
        np.diag([1.0, -1.0]),
        np.array([[0.0, 1.0], [1.0j, 0.0]]),
        np.array([[0.0, 1.0], [-1.0j, 0.0]]),
    ]
    bell = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    comult = np.zeros((ts.algebra.dim, alg.dim), dtype=np.complex128)
    for g in range(4):
        col = np.zeros(ts.algebra.dim, dtype=np.complex128)
        for h in range(4):
            col += ts.element(d[h], d[h ^ g]).vec
        vec = np.kron(u[g], np.eye(2)) @ bell
        proj = np.outer(vec, vec.conj())
        for k in range(2):
            for s in range(2):
                for l in range(2):
                    for t in range(2):
                        coeff = proj[2 * k + s, 2 * l + t]
                        if coeff != 0.0:
                            col += coeff * ts.element(units[k][l], units[s][t]).vec
        comult[:, g] = col
    for k in range(2):
        for l in range(2):
            a = np.outer(np.eye(2)[k], np.eye(2)[l])
            col = np.zeros(ts.algebra.dim, dtype=np.complex128)
            for g in range(4):
                col += ts.element(d[g], element([0.0] * 4, u[g] @ a @ u[g].conj().T)).vec
                col += ts.element(element([0.0] * 4, u[g].T @ a @ u[g].conj()), d[g]).vec
            comult[:, 4 + 2 * k + l] = col
    counit = Functional.from_covector(alg, np.eye(alg.dim)[0])
    antipode = solve_antipode(alg, comult, counit, tol=1e-10)
    haar = solve_haar_state(alg, comult, tol=1e-10)
    kp = FiniteQuantumGroup(
        algebra=alg,
        comult=comult,
        counit=counit,
        antipode=antipode,
        haar=haar,
        name="KacPaljutkin",
        kind="kp",
    )
    report = verify_axioms(kp, tol)
    if not report.passed:
        raise RuntimeError(f"Kac-Paljutkin construction fails axioms: {report.failures()}")
    return kp


# ---------------------------------------------------------------------------
# serialization: schema "qgspec-1"


class QGSpecError(ValueError):
    """Malformed quantum group document."""


def _pairs(vec: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(vec, dtype=np.complex128)]


def _matrix_pairs(mat: np.ndarray) -> list:
    return [_pairs(row) for row in np.asarray(mat, dtype=np.complex128)]


def _from_pairs(data, where: str) -> np.ndarray:
    try:
        arr = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise QGSpecError(f"{where}: expected a list of [re, im] pairs ({exc})") from exc
    return arr


def to_document(G: FiniteQuantumGroup) -> dict:
    return {
        "schema": "qgspec-1",
        "name": G.name,
        "block_dims": list(G.algebra.block_dims),
        "comult": _matrix_pairs(G.comult),
        "antipode": _matrix_pairs(G.antipode),
        "counit": _pairs(G.counit.density.vec),
        "haar": _pairs(G.haar.density.vec),
    }


def from_document(doc: dict, check_axioms: bool = True) -> FiniteQuantumGroup:
    if not isinstance(doc, dict):
        raise QGSpecError("document root must be an object")
    if doc.get("schema") != "qgspec-1":
        raise QGSpecError(f"unsupported schema {doc.get('schema')!r}; expected 'qgspec-1'")
    for key in ("block_dims", "comult", "antipode", "counit", "haar"):
        if key not in doc:
            raise QGSpecError(f"missing field {key!r}")
    try:
        alg = MultiMatrixAlgebra(tuple(int(n) for n in doc["block_dims"]))
    except (TypeError, ValueError) as exc:
        raise QGSpecError(f"block_dims: {exc}") from exc
    dim = alg.dim
    comult = np.array([_from_pairs(row, f"comult row {i}") for i, row in enumerate(doc["comult"])])
    antipode = np.array([_from_pairs(row, f"antipode row {i}") for i, row in enumerate(doc["antipode"])])
    if comult.shape != (dim * dim, dim):
        raise QGSpecError(f"comult: expected shape {(dim * dim, dim)}, got {comult.shape}")
    if antipode.shape != (dim, dim):
        raise QGSpecError(f"antipode: expected shape {(dim, dim)}, got {antipode.shape}")
    counit_vec = _from_pairs(doc["counit"], "counit")
    haar_vec = _from_pairs(doc["haar"], "haar")
    if counit_vec.shape != (dim,) or haar_vec.shape != (dim,):
        raise QGSpecError(f"counit/haar: expected density vectors of length {dim}")
    G = FiniteQuantumGroup(
        algebra=alg,
        comult=comult,
        counit=Functional(alg, alg.from_vec(counit_vec)),
        antipode=antipode,
        haar=Functional(alg, alg.from_vec(haar_vec)),
        name=str(doc.get("name", "")),
        kind="file",
    )
    if check_axioms:
        report = verify_axioms(G, 1e-8)
        if not report.passed:
            warnings.warn(
                f"loaded quantum group fails axioms: {report.failures()}",
                stacklevel=2,
            )
    return G


def save(G: FiniteQuantumGroup, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_document(G), fh, indent=1)
        fh.write("\n")


def load(path, check_axioms: bool = True) -> FiniteQuantumGroup:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise QGSpecError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_document(doc, check_axioms=check_axioms)


# ---------------------------------------------------------------------------
# named builtins for the command line and tests


def builtin(spec: str) -> FiniteQuantumGroup:
    """Resolve builtin group names: czn:N, cstar:zn:N, cstar:dn:N, cfun:sn:N,
    cstar:sn:N, kp."""
    parts = spec.split(":")
    try:
        if parts[0] == "kp" and len(parts) == 1:
            return kac_paljutkin()
        if parts[0] == "czn" and len(parts) == 2:
            g = function_algebra(cyclic(int(parts[1])))
            return _rename(g, f"C(Z{parts[1]})")
        if parts[0] == "cfun" and len(parts) == 3 and parts[1] == "sn":
            g = function_algebra(symmetric(int(parts[2])))
            return _rename(g, f"C(S{parts[2]})")
        if parts[0] == "cstar" and len(parts) == 3:
            kind, n = parts[1], int(parts[2])
            if kind == "zn":
                return _rename(group_algebra(cyclic(n)), f"C*(Z{n})")
            if kind == "dn":
                return _rename(group_algebra(dihedral(n)), f"C*(D{n})")
            if kind == "sn":
                return _rename(group_algebra(symmetric(n)), f"C*(S{n})")
    except ValueError as exc:
        raise ValueError(f"invalid builtin spec {spec!r}: {exc}") from exc
    raise ValueError(
        f"unknown builtin {spec!r}; expected czn:N, cstar:zn:N, cstar:dn:N, "
        "cfun:sn:N, cstar:sn:N, or kp"
    )


def _rename(G: FiniteQuantumGroup, name: str) -> FiniteQuantumGroup:
    G.name = name
    return G
