"""Axiom verification, duality, quotients, group-like elements."""

import numpy as np
import pytest

from quidem import (
    Functional,
    dual,
    function_algebra,
    group_algebra,
    is_group_like,
    quotient_by_support,
    verify_axioms,
)
from quidem.algebra import support_projection
from quidem.qgroup import (
    FiniteQuantumGroup,
    cocommutativity_defect,
    commutativity_defect,
    group_like_unitaries,
    solve_antipode,
    solve_haar_state,
)


def test_axioms_cz2_exact(cz2):
    report = verify_axioms(cz2, 1e-12)
    assert report.passed
    assert report.max_defect == 0.0


def test_axioms_group_algebra_s3(gs3):
    report = verify_axioms(gs3, 1e-12)
    assert report.passed


def test_corrupted_comultiplication_detected(cz4):
    comult = cz4.comult.copy()
    comult[3, 2] += 1e-3
    broken = FiniteQuantumGroup(
        algebra=cz4.algebra,
        comult=comult,
        counit=cz4.counit,
        antipode=cz4.antipode,
        haar=cz4.haar,
    )
    report = verify_axioms(broken, 1e-9)
    assert not report.passed
    assert report.defects["coassociativity"] >= 1e-4


def test_haar_is_tracial(kp, gs3):
    for G in (kp, gs3):
        rng = np.random.default_rng(0)
        for _ in range(10):
            a, b = G.algebra.random_element(rng), G.algebra.random_element(rng)
            assert G.haar(a * b) == pytest.approx(G.haar(b * a), abs=1e-10)


def test_haar_density_is_central(kp):
    d = kp.haar.density
    rng = np.random.default_rng(1)
    x = kp.algebra.random_element(rng)
    assert (d * x - x * d).operator_norm < 1e-12


def test_solvers_reproduce_structure(cz4):
    h = solve_haar_state(cz4.algebra, cz4.comult)
    assert (h - cz4.haar).norm < 1e-10
    s = solve_antipode(cz4.algebra, cz4.comult, cz4.counit)
    assert np.linalg.norm(s - cz4.antipode) < 1e-9


def test_dual_of_function_algebra_is_group_algebra_shape(cz4):
    d = dual(cz4)
    assert d.algebra.block_dims == (1, 1, 1, 1)
    assert cocommutativity_defect(d) < 1e-12
    assert verify_axioms(d, 1e-9).passed


def test_dual_of_group_algebra_s3(gs3):
    d = dual(gs3)
    assert d.algebra.block_dims == (1, 1, 1, 1, 1, 1)
    assert commutativity_defect(d) < 1e-12


def test_double_dual_block_dims(kp, gz4):
    for G in (kp, gz4):
        dd = dual(dual(G))
        assert sorted(dd.algebra.block_dims) == sorted(G.algebra.block_dims)
        assert verify_axioms(dd, 1e-9).passed


def test_dual_kp_block_dims(kp):
    assert dual(kp).algebra.block_dims == (1, 1, 1, 1, 2)


def test_group_likes_of_function_algebra_are_characters(cz4):
    units = group_like_unitaries(cz4)
    assert len(units) == 4
    for u in units:
        assert is_group_like(cz4, u, 1e-10)
    # the characters of Z4 as diagonal functions
    found = {complex(np.round(u.vec[1], 8)) for u in units}
    assert found == {1, -1, 1j, -1j}


def test_character_function_is_group_like(cz4):
    assert is_group_like(cz4, cz4.algebra.identity(), 1e-12)
    u = cz4.algebra.from_vec(np.array([1, 1j, -1, -1j]))
    assert is_group_like(cz4, u, 1e-12)
    not_u = cz4.algebra.from_vec(np.array([1, 1, -1, -1j]))
    assert not is_group_like(cz4, not_u, 1e-8)


def test_lambda_basis_is_group_like(gd4):
    for g in (1, 4, 5):
        u = gd4.algebra.from_vec(gd4.lambda_basis[:, g])
        assert is_group_like(gd4, u, 1e-10)


def test_group_likes_of_kp(kp):
    units = group_like_unitaries(kp)
    assert len(units) == 4
    for u in units:
        assert is_group_like(kp, u, 1e-10)


def test_quotient_full_support(cz4):
    sub = quotient_by_support(cz4, cz4.algebra.identity(), haar_state=cz4.haar)
    assert sub.target.algebra.block_dims == cz4.algebra.block_dims
    assert sub.is_surjective()


def test_quotient_by_counit_support(cz4):
    s = support_projection(cz4.counit.density)
    sub = quotient_by_support(cz4, s)
    assert sub.target.algebra.block_dims == (1,)
    assert verify_axioms(sub.target, 1e-9).passed


def test_quotient_z4_to_z2(cz4):
    s = cz4.algebra.from_vec(np.array([1.0, 0.0, 1.0, 0.0]))
    sigma = Functional.from_covector(cz4.algebra, np.array([0.5, 0, 0.5, 0]))
    sub = quotient_by_support(cz4, s, haar_state=sigma)
    H = sub.target
    assert H.algebra.block_dims == (1, 1)
    assert verify_axioms(H, 1e-9).passed
    # the projection restricts functions to the subgroup {0, 2}
    f = cz4.algebra.from_vec(np.array([1.0, 2.0, 3.0, 4.0]))
    assert np.allclose(sub.apply(f).vec, [1.0, 3.0])
    assert sub.intertwining_defect() < 1e-12


def test_quotient_rejects_noncentral(gd4):
    rng = np.random.default_rng(2)
    # a rank-one projection inside the 2x2 block is not central
    blocks = [np.zeros((n, n)) for n in gd4.algebra.block_dims]
    blocks[-1] = np.diag([1.0, 0.0])
    p = gd4.algebra.element(blocks)
    with pytest.raises(ValueError):
        quotient_by_support(gd4, p)


def test_quotient_rejects_non_subgroup_support(cz4):
    # {0, 1} is not a subgroup of Z4: the corner coproduct cannot close
    s = cz4.algebra.from_vec(np.array([1.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        quotient_by_support(cz4, s)
