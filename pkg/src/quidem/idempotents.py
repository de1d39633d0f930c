"""Contractive idempotent functionals: recognition, construction from an
idempotent state and a compatible contraction, polar decomposition into
idempotent states, Haar classification, subgroup/character extraction, and
the exact enumeration oracles for classical function and group algebras."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraElement,
    Functional,
    act_left,
    act_right,
    is_central,
    polar_decompose,
    support_projection,
)
from .convolution import convolve
from .groups import characters
from .qgroup import FiniteQuantumGroup, QuantumSubgroup, is_group_like, quotient_by_support


def is_idempotent(G: FiniteQuantumGroup, omega: Functional, tol: float = 1e-9) -> bool:
    """Nonzero and ω⋆ω = ω within tol (in the dual norm)."""
    if omega.norm <= tol:
        return False
    return (convolve(G, omega, omega) - omega).norm <= tol


def is_contractive_idempotent(G: FiniteQuantumGroup, omega: Functional, tol: float = 1e-9) -> bool:
    """Idempotent with ‖ω‖ ≤ 1 + tol; such a functional must have norm one."""
    if not is_idempotent(G, omega, tol):
        return False
    if omega.norm > 1 + tol:
        return False
    if abs(omega.norm - 1.0) > tol:
        raise RuntimeError(
            f"contractive idempotent with norm {omega.norm:.12f} != 1; numerical inconsistency"
        )
    return True


def group_like_defect(G: FiniteQuantumGroup, sigma: Functional, u: AlgebraElement) -> float:
    """(σ⊗σ)((Δu − u⊗u)*(Δu − u⊗u)), the seminorm-squared defect of u being
    group-like relative to σ."""
    d = G.apply_comult(u) - G.ts.element(u, u)
    ss = G.ts.functional(sigma, sigma)
    return max(0.0, float(ss(d.adjoint() * d).real))


def construct(
    G: FiniteQuantumGroup,
    sigma: Functional,
    u: AlgebraElement,
    tol: float = 1e-8,
) -> tuple[Functional, Functional, Functional]:
    """From an idempotent state σ and a contraction u whose group-like defect
    vanishes in the σ⊗σ seminorm, produce (u.σ, σ.u*, u.σ.u*).

    σ(u*u) is forced to be 0 or 1; the zero branch returns zero functionals,
    the unit branch returns two contractive idempotents and an idempotent
    state."""
    if not is_idempotent(G, sigma, max(tol, 1e-9)) or not sigma.is_state(max(tol, 1e-9)):
        raise ValueError("construct requires an idempotent state")
    if u.operator_norm > 1 + tol:
        raise ValueError(f"construct requires a contraction, got norm {u.operator_norm:.6f}")
    defect = group_like_defect(G, sigma, u)
    if defect > tol:
        raise ValueError(f"group-like defect {defect:.3e} exceeds tolerance {tol:g}")
    value = sigma(u.adjoint() * u).real
    if abs(value) > tol and abs(value - 1.0) > tol:
        raise RuntimeError(f"dichotomy violated: σ(u*u) = {value:.6f} is neither 0 nor 1")
    if abs(value) <= tol:
        zero = Functional.zero(G.algebra)
        return zero, zero, zero
    left = act_left(u, sigma)
    right = act_right(sigma, u.adjoint())
    both = act_left(u, right)
    for f, what in ((left, "u.σ"), (right, "σ.u*")):
        if not is_contractive_idempotent(G, f, max(tol, 1e-9)):
            raise RuntimeError(f"{what} failed to be a contractive idempotent")
    if not (is_idempotent(G, both, max(tol, 1e-9)) and both.is_state(max(tol, 1e-8))):
        raise RuntimeError("u.σ.u* failed to be an idempotent state")
    return left, right, both


def is_haar_idempotent(G: FiniteQuantumGroup, sigma: Functional, tol: float = 1e-8) -> bool:
    """An idempotent state comes from the Haar state of a quantum subgroup
    exactly when its null space is a two-sided ideal, i.e. when the support
    projection of its density is central."""
    if not (is_idempotent(G, sigma, max(tol, 1e-9)) and sigma.is_state(max(tol, 1e-9))):
        raise ValueError("is_haar_idempotent expects an idempotent state")
    return is_central(support_projection(sigma.density), tol)


@dataclass(eq=False)
class ContractiveIdempotentReport:
    """Full decomposition record of a contractive idempotent."""

    omega: Functional
    abs_r: Functional
    abs_l: Functional
    v: AlgebraElement
    defect_r: float
    defect_l: float
    haar: bool
    roundtrip_r: float
    roundtrip_l: float
    subgroup: QuantumSubgroup | None = None
    character: AlgebraElement | None = None


def decompose(G: FiniteQuantumGroup, omega: Functional, tol: float = 1e-8) -> ContractiveIdempotentReport:
    """Polar-decompose a contractive idempotent: both absolute values are
    idempotent states, the partial isometry v reconstructs ω from either
    side, and Δ(v) − v⊗v vanishes in the induced seminorms.  When the
    absolute value is a Haar idempotent, the associated quantum subgroup and
    group-like character are extracted."""
    if not is_contractive_idempotent(G, omega, max(tol, 1e-9)):
        defect = (convolve(G, omega, omega) - omega).norm
        raise ValueError(
            f"not a contractive idempotent (idempotency defect {defect:.3e}, norm {omega.norm:.6f})"
        )
    parts = polar_decompose(omega)
    abs_r, abs_l = parts.abs_r, parts.abs_l
    for sigma, side in ((abs_r, "right"), (abs_l, "left")):
        if not is_idempotent(G, sigma, max(tol, 1e-9)):
            raise RuntimeError(f"{side} absolute value is not idempotent")
        if not sigma.is_state(max(tol, 1e-9)):
            raise RuntimeError(f"{side} absolute value is not a state")
    v = parts.u
    d = G.apply_comult(v) - G.ts.element(v, v)
    ss_r = G.ts.functional(abs_r, abs_r)
    ss_l = G.ts.functional(abs_l, abs_l)
    defect_r = float(np.sqrt(max(0.0, ss_r(d.adjoint() * d).real)))
    defect_l = float(np.sqrt(max(0.0, ss_l(d * d.adjoint()).real)))
    roundtrip_r = (act_left(v, abs_r) - omega).norm
    roundtrip_l = (act_right(abs_l, v) - omega).norm
    if max(defect_r, defect_l, roundtrip_r, roundtrip_l) > tol:
        raise RuntimeError(
            f"decomposition defects exceed tolerance: seminorms ({defect_r:.3e}, {defect_l:.3e}), "
            f"round trips ({roundtrip_r:.3e}, {roundtrip_l:.3e})"
        )
    haar = is_haar_idempotent(G, abs_r, tol)
    subgroup = character = None
    if haar:
        subgroup, character = extract_subgroup_character(G, omega, tol)
    return ContractiveIdempotentReport(
        omega=omega,
        abs_r=abs_r,
        abs_l=abs_l,
        v=v,
        defect_r=defect_r,
        defect_l=defect_l,
        haar=haar,
        roundtrip_r=roundtrip_r,
        roundtrip_l=roundtrip_l,
        subgroup=subgroup,
        character=character,
    )


def extract_subgroup_character(
    G: FiniteQuantumGroup, omega: Functional, tol: float = 1e-8
) -> tuple[QuantumSubgroup, AlgebraElement]:
    """For a contractive idempotent whose right absolute value is a Haar
    idempotent: the quantum subgroup carried by its support together with the
    group-like unitary u = π(v), satisfying ω = h_H(π(·)u) and abs_r = abs_l."""
    if not is_contractive_idempotent(G, omega, max(tol, 1e-9)):
        raise ValueError("extract_subgroup_character expects a contractive idempotent")
    parts = polar_decompose(omega)
    if not is_haar_idempotent(G, parts.abs_r, tol):
        raise ValueError("absolute value is not a Haar idempotent")
    if (parts.abs_r - parts.abs_l).norm > tol:
        raise RuntimeError("Haar case must have equal absolute values")
    s = support_projection(parts.abs_r.density)
    sub = quotient_by_support(G, s, haar_state=parts.abs_r)
    u = sub.apply(parts.u)
    if not u.is_unitary(tol):
        raise RuntimeError("extracted character is not unitary on the subgroup")
    if not is_group_like(sub.target, u, tol):
        raise RuntimeError("extracted character is not group-like on the subgroup")
    h_sub = sub.target.haar
    worst = max(
        abs(omega(x) - h_sub(sub.apply(x) * u)) for x in G.algebra.basis()
    )
    if worst > tol:
        raise RuntimeError(f"ω != h_H(π(·)u) (defect {worst:.3e})")
    return sub, u


def check_absolute_value_factorization(
    G: FiniteQuantumGroup, omega1: Functional, omega2: Functional, tol: float = 1e-8
) -> bool | None:
    """When ‖ω₁⋆ω₂‖ = ‖ω₁‖‖ω₂‖, the right absolute value factors:
    |ω₁⋆ω₂|_r = |ω₁|_r ⋆ |ω₂|_r.  Returns None when the norm hypothesis
    fails (the identity is then not asserted)."""
    product = convolve(G, omega1, omega2)
    if abs(product.norm - omega1.norm * omega2.norm) > tol:
        return None
    lhs = polar_decompose(product).abs_r
    rhs = convolve(G, polar_decompose(omega1).abs_r, polar_decompose(omega2).abs_r)
    return (lhs - rhs).norm <= tol


# ---------------------------------------------------------------------------
# exact enumeration oracles for the classical catalogues


@dataclass(eq=False)
class SubgroupCharacterItem:
    """μ(f) = (1/|H|) Σ_{h∈H} χ(h) f(h) for a subgroup H and character χ."""

    functional: Functional
    subgroup: frozenset
    character: dict                # element index -> character value on H
    label: str


@dataclass(eq=False)
class CosetItem:
    """The functional λ_g ↦ [g ∈ C] for a left coset C of a subgroup."""

    functional: Functional
    coset: frozenset
    subgroup: frozenset
    label: str


def enumerate_function_algebra(G: FiniteQuantumGroup) -> list[SubgroupCharacterItem]:
    """All contractive idempotents on C(G) for classical G: one per pair of a
    subgroup H and a character χ of H (subgroup-lattice brute force)."""
    if G.kind != "function" or G.table is None:
        raise ValueError("enumeration requires a function algebra built from a group table")
    table = G.table
    items = []
    for subgroup in table.subgroups:
        sub_table, elems = table.subtable(subgroup)
        for chi in characters(sub_table):
            cov = np.zeros(table.order, dtype=np.complex128)
            for pos, g in enumerate(elems):
                cov[g] = chi[pos] / len(elems)
            values = {g: chi[pos] for pos, g in enumerate(elems)}
            label = "H={%s}, chi=[%s]" % (
                ",".join(table.names[g] for g in elems),
                ",".join(_fmt_complex(chi[pos]) for pos in range(len(elems))),
            )
            items.append(
                SubgroupCharacterItem(
                    functional=Functional.from_covector(G.algebra, cov),
                    subgroup=subgroup,
                    character=values,
                    label=label,
                )
            )
    return items


def enumerate_group_algebra(G: FiniteQuantumGroup) -> list[CosetItem]:
    """All contractive idempotents on a classical group algebra: the
    indicator functionals of left cosets of subgroups."""
    if G.kind != "group" or G.table is None or G.lambda_basis is None:
        raise ValueError("enumeration requires a group algebra built from a group table")
    table = G.table
    items = []
    for subgroup in table.subgroups:
        for coset in table.left_cosets(subgroup):
            values = np.zeros(table.order)
            for g in coset:
                values[g] = 1.0
            cov = np.linalg.solve(G.lambda_basis.T, values)
            label = "C={%s}" % ",".join(table.names[g] for g in sorted(coset))
            items.append(
                CosetItem(
                    functional=Functional.from_covector(G.algebra, cov),
                    coset=coset,
                    subgroup=subgroup,
                    label=label,
                )
            )
    return items


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-12:
        return f"{z.real:+.3g}"
    return f"{z.real:+.3g}{z.imag:+.3g}i"
