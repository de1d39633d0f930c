"""Convolution products, operator matrices, the sharp involution, and
averaged convolution powers."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quidem import (
    Functional,
    cesaro_limit,
    commutes_with_right_convolutions,
    convolve,
    intertwines_comultiplication,
    left_conv_operator,
    recover_functional,
    right_conv_operator,
    sharp,
)


def _delta(G, g):
    return Functional.from_covector(G.algebra, np.eye(G.dim)[g])


def test_counit_is_convolution_unit(cz4, kp):
    rng = np.random.default_rng(0)
    for G in (cz4, kp):
        mu = G.algebra.random_functional(rng)
        assert (convolve(G, G.counit, mu) - mu).norm < 1e-12
        assert (convolve(G, mu, G.counit) - mu).norm < 1e-12


def test_point_masses_convolve_by_group_law(cs3):
    table = cs3.table
    for s in range(table.order):
        for t in range(table.order):
            product = convolve(cs3, _delta(cs3, s), _delta(cs3, t))
            assert (product - _delta(cs3, table.op(s, t))).norm < 1e-12


def test_haar_absorbs(kp):
    rng = np.random.default_rng(1)
    mu = kp.algebra.random_functional(rng)
    expected = mu(kp.algebra.identity()) * kp.haar
    assert (convolve(kp, kp.haar, mu) - expected).norm < 1e-10
    assert (convolve(kp, mu, kp.haar) - expected).norm < 1e-10


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31 - 1))
def test_associativity_and_submultiplicativity(kp, seed):
    rng = np.random.default_rng(seed)
    a, b, c = (kp.algebra.random_functional(rng) for _ in range(3))
    lhs = convolve(kp, convolve(kp, a, b), c)
    rhs = convolve(kp, a, convolve(kp, b, c))
    assert (lhs - rhs).norm < 1e-10 * max(1.0, a.norm * b.norm * c.norm)
    assert convolve(kp, a, b).norm <= a.norm * b.norm + 1e-10


def test_left_operator_of_counit_is_identity(cz4):
    assert np.allclose(left_conv_operator(cz4, cz4.counit).matrix, np.eye(4))


def test_left_operator_of_haar_is_rank_one(kp):
    L = left_conv_operator(kp, kp.haar)
    assert np.linalg.matrix_rank(L.matrix) == 1
    rng = np.random.default_rng(3)
    a = kp.algebra.random_element(rng)
    image = L(a)
    expected = kp.haar(a) * kp.algebra.identity()
    assert (image - expected).operator_norm < 1e-10


def test_left_operator_of_mu0_is_signed_shift(cz4, mu0):
    L = left_conv_operator(cz4, mu0)
    f = cz4.algebra.from_vec(np.array([1.0, 2.0, 3.0, 4.0]))
    expected = cz4.algebra.from_vec((f.vec - np.roll(f.vec, -2)) / 2)
    assert (L(f) - expected).operator_norm < 1e-12


def test_composition_laws(kp):
    rng = np.random.default_rng(4)
    w, m = kp.algebra.random_functional(rng), kp.algebra.random_functional(rng)
    lw, lm = left_conv_operator(kp, w).matrix, left_conv_operator(kp, m).matrix
    rw, rm = right_conv_operator(kp, w).matrix, right_conv_operator(kp, m).matrix
    conv = convolve(kp, w, m)
    assert np.allclose(left_conv_operator(kp, conv).matrix, lm @ lw, atol=1e-10)
    assert np.allclose(right_conv_operator(kp, conv).matrix, rw @ rm, atol=1e-10)
    # left and right convolutions always commute
    assert np.allclose(lw @ rm, rm @ lw, atol=1e-10)


def test_recover_functional(cz4, kp, mu0):
    for G, omega in ((cz4, mu0), (kp, kp.haar)):
        L = left_conv_operator(G, omega)
        assert (recover_functional(L) - omega).norm < 1e-12
    assert (recover_functional(left_conv_operator(cz4, cz4.counit)) - cz4.counit).norm < 1e-12


def test_convolution_operator_criteria(kp, cs3):
    rng = np.random.default_rng(5)
    omega = kp.algebra.random_functional(rng)
    L = left_conv_operator(kp, omega).matrix
    assert commutes_with_right_convolutions(kp, L, 1e-9)
    assert intertwines_comultiplication(kp, L, 1e-9)
    # left multiplication by a non-scalar element is not a convolution operator
    a = cs3.algebra.from_vec(np.arange(6, dtype=float))
    mult = np.diag(np.arange(6, dtype=float))
    assert not commutes_with_right_convolutions(cs3, mult, 1e-6)
    assert not intertwines_comultiplication(cs3, mult, 1e-6)
    # a right convolution on a noncommutative measure algebra fails too
    delta_s = Functional.from_covector(cs3.algebra, np.eye(6)[1])
    R = right_conv_operator(cs3, delta_s).matrix
    assert not commutes_with_right_convolutions(cs3, R, 1e-6)


def test_left_right_identification_of_recovered_functional(cs3, gz4):
    """The counit composed with L_μ always returns μ, so T = L_{ε∘T} for left
    convolution operators.  The matching right-operator identification
    T = R_{ε∘T} holds only in the cocommutative case; on a function algebra
    of a nonabelian group it fails."""
    delta = Functional.from_covector(cs3.algebra, np.eye(6)[1])
    L = left_conv_operator(cs3, delta)
    recovered = recover_functional(L)
    assert (recovered - delta).norm < 1e-12
    R = right_conv_operator(cs3, recovered)
    assert np.linalg.norm(L.matrix - R.matrix, 2) > 0.5
    # cocommutative: the two operators coincide
    rng = np.random.default_rng(8)
    mu = gz4.algebra.random_functional(rng)
    assert np.allclose(
        left_conv_operator(gz4, mu).matrix, right_conv_operator(gz4, mu).matrix, atol=1e-10
    )


def test_sharp_classical_point_masses(cs3):
    table = cs3.table
    for s in range(table.order):
        image = sharp(cs3, _delta(cs3, s))
        assert (image - _delta(cs3, table.inverse[s])).norm < 1e-12


def test_sharp_fixes_counit(kp):
    assert (sharp(kp, kp.counit) - kp.counit).norm < 1e-10


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31 - 1))
def test_sharp_involution_antiautomorphism(kp, seed):
    rng = np.random.default_rng(seed)
    w, m = kp.algebra.random_functional(rng), kp.algebra.random_functional(rng)
    assert (sharp(kp, sharp(kp, w)) - w).norm < 1e-10
    lhs = sharp(kp, convolve(kp, w, m))
    rhs = convolve(kp, sharp(kp, m), sharp(kp, w))
    assert (lhs - rhs).norm < 1e-10


def test_sharp_gns_adjoint_relation(kp):
    """The adjoint of L_ω for the Haar inner product is L_{ω♯}; this is what
    makes images of contractive idempotents recoverable by orthogonal
    projection."""
    rng = np.random.default_rng(6)
    omega = kp.algebra.random_functional(rng)
    L = left_conv_operator(kp, omega).matrix
    Ls = left_conv_operator(kp, sharp(kp, omega)).matrix
    w = kp.haar_weight_vec
    adjoint = np.diag(1.0 / w) @ L.conj().T @ np.diag(w)
    assert np.linalg.norm(adjoint - Ls, 2) < 1e-10


def test_cesaro_idempotent_seed_returns_immediately(cz4, mu0):
    result = cesaro_limit(cz4, mu0, tol=1e-8)
    assert result.converged
    assert result.checkpoint == 1
    assert (result.limit - mu0).norm < 1e-12


def test_cesaro_generator_gives_uniform(cz6):
    delta = _delta(cz6, 1)
    result = cesaro_limit(cz6, delta, tol=1e-8, max_iter=10_000)
    assert result.converged
    uniform = Functional.from_covector(cz6.algebra, np.full(6, 1 / 6))
    assert (result.limit - uniform).norm <= 1e-8


def test_cesaro_order_three_element(cz6):
    delta = _delta(cz6, 2)
    result = cesaro_limit(cz6, delta, tol=1e-8, max_iter=10_000)
    assert result.converged
    expected = Functional.from_covector(cz6.algebra, np.array([1, 0, 1, 0, 1, 0]) / 3)
    assert (result.limit - expected).norm <= 1e-8
    # brute-force oracle: plain averaged powers over one period
    acc = delta
    powers = [delta]
    for _ in range(2):
        acc = convolve(cz6, acc, delta)
        powers.append(acc)
    brute = Functional.from_covector(
        cz6.algebra, sum(p.covector for p in powers) / 3
    )
    assert (result.limit - brute).norm <= 1e-8


def test_cesaro_doubling_matches_plain_average(cz6):
    """The doubling recursion evaluates the same averages as a direct loop."""
    delta = _delta(cz6, 1)
    result = cesaro_limit(cz6, delta, tol=1e-3, max_iter=100)
    n = result.checkpoint
    acc = delta
    total = delta.covector.copy()
    for _ in range(n - 1):
        acc = convolve(cz6, acc, delta)
        total = total + acc.covector
    plain = Functional.from_covector(cz6.algebra, total / n)
    assert (result.limit - plain).norm < 1e-12


def test_operator_side_validation(cz4, mu0):
    from quidem.convolution import ConvolutionOperator

    with pytest.raises(ValueError):
        ConvolutionOperator(cz4, np.eye(4), "middle")
    with pytest.raises(ValueError):
        recover_functional(right_conv_operator(cz4, mu0))


def test_convolve_rejects_group_mismatch(cz4, cz6):
    with pytest.raises(ValueError):
        convolve(cz4, cz4.counit, cz6.counit)


def test_cesaro_rejects_expanding_seed(cz4):
    big = Functional.from_covector(cz4.algebra, np.array([2.0, 0, 0, 0]))
    with pytest.raises(ValueError):
        cesaro_limit(cz4, big)


def test_cesaro_zero_limit(cz4):
    minus = Functional.from_covector(cz4.algebra, -np.eye(4)[0])
    result = cesaro_limit(cz4, minus, tol=1e-8, max_iter=10_000)
    assert result.converged
    assert result.limit.norm < 1e-7


def test_cesaro_limit_commutes_with_seed(kp):
    rng = np.random.default_rng(9)
    seed = kp.algebra.random_state(rng)
    result = cesaro_limit(kp, seed, tol=1e-9, max_iter=10_000)
    assert result.converged
    limit = result.limit
    assert (convolve(kp, seed, limit) - limit).norm < 1e-8
    assert (convolve(kp, limit, seed) - limit).norm < 1e-8
