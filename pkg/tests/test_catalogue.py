"""Builders, the Kac-Paljutkin quantum group, builtins, and the qgspec-1
document format."""

import json

import numpy as np
import pytest

from quidem import cyclic, dihedral, function_algebra, group_algebra, kac_paljutkin, symmetric
from quidem.catalogue import QGSpecError, builtin, from_document, load, save, to_document
from quidem.qgroup import (
    cocommutativity_defect,
    commutativity_defect,
    verify_axioms,
)


def test_trivial_group_degenerate_case():
    g1 = function_algebra(cyclic(1))
    assert g1.algebra.block_dims == (1,)
    assert verify_axioms(g1, 1e-12).passed
    assert group_algebra(cyclic(1)).algebra.block_dims == (1,)


def test_function_algebra_shapes():
    g = function_algebra(cyclic(2))
    assert g.algebra.block_dims == (1, 1)
    assert np.allclose(g.haar.density.vec, [0.5, 0.5])
    assert function_algebra(symmetric(3)).algebra.block_dims == (1,) * 6


def test_function_algebras_pass_axioms_up_to_order_8():
    for table in (cyclic(3), cyclic(5), cyclic(7), cyclic(8), dihedral(3), dihedral(4)):
        assert verify_axioms(function_algebra(table), 1e-12).passed


def test_function_algebra_commutative_group_algebra_cocommutative():
    for table in (cyclic(4), symmetric(3)):
        fn = function_algebra(table)
        gp = group_algebra(table)
        assert commutativity_defect(fn) == 0.0
        assert cocommutativity_defect(gp) < 1e-12
        assert verify_axioms(fn, 1e-9).passed
        assert verify_axioms(gp, 1e-9).passed


def test_group_algebra_block_dims():
    assert group_algebra(cyclic(4)).algebra.block_dims == (1, 1, 1, 1)
    assert group_algebra(symmetric(3)).algebra.block_dims == (1, 1, 2)
    assert group_algebra(dihedral(4)).algebra.block_dims == (1, 1, 1, 1, 2)


def test_group_algebra_lambda_basis_properties(gs3):
    table = gs3.table
    lam = gs3.lambda_basis
    # λ_g λ_h = λ_{gh}
    rng = np.random.default_rng(0)
    for _ in range(10):
        g, h = rng.integers(0, 6, size=2)
        lhs = gs3.algebra.from_vec(lam[:, g]) * gs3.algebra.from_vec(lam[:, h])
        assert (lhs - gs3.algebra.from_vec(lam[:, table.op(g, h)])).operator_norm < 1e-10
    # Haar picks out the identity coefficient
    for g in range(6):
        expected = 1.0 if g == table.identity else 0.0
        assert gs3.haar(gs3.algebra.from_vec(lam[:, g])) == pytest.approx(expected, abs=1e-10)


def test_order_twelve_dihedral_group_algebra():
    """Two distinct 2-dimensional blocks stress the character grouping of the
    regular-representation splitting."""
    from quidem.idempotents import decompose, enumerate_group_algebra, is_contractive_idempotent

    g = group_algebra(dihedral(6))
    assert g.algebra.block_dims == (1, 1, 1, 1, 2, 2)
    assert verify_axioms(g, 1e-9).passed
    items = enumerate_group_algebra(g)
    assert len(items) == 74
    for item in items[::7]:
        assert is_contractive_idempotent(g, item.functional, 1e-9)
        rep = decompose(g, item.functional, 1e-8)
        assert rep.haar == g.table.is_normal(item.subgroup)


def test_kac_paljutkin_properties(kp):
    assert kp.algebra.block_dims == (1, 1, 1, 1, 2)
    assert verify_axioms(kp, 1e-12).passed
    assert commutativity_defect(kp) > 0.1
    assert cocommutativity_defect(kp) > 0.1


def test_builtins():
    assert builtin("czn:4").algebra.block_dims == (1, 1, 1, 1)
    assert builtin("cstar:zn:3").algebra.block_dims == (1, 1, 1)
    assert builtin("cstar:dn:4").algebra.block_dims == (1, 1, 1, 1, 2)
    assert builtin("cfun:sn:3").algebra.block_dims == (1,) * 6
    assert builtin("cstar:sn:3").algebra.block_dims == (1, 1, 2)
    assert builtin("kp").name == "KacPaljutkin"
    with pytest.raises(ValueError):
        builtin("nonsense:3")


def test_document_roundtrip_cz4(tmp_path, cz4):
    path = tmp_path / "cz4.qgspec"
    save(cz4, path)
    loaded = load(path)
    assert loaded.algebra.block_dims == cz4.algebra.block_dims
    assert np.array_equal(loaded.comult, cz4.comult)
    assert np.array_equal(loaded.antipode, cz4.antipode)
    assert np.array_equal(loaded.counit.density.vec, cz4.counit.density.vec)
    assert np.array_equal(loaded.haar.density.vec, cz4.haar.density.vec)
    # byte-exact re-serialization
    assert json.dumps(to_document(loaded)) == json.dumps(to_document(cz4))


def test_document_roundtrip_kp(tmp_path, kp):
    path = tmp_path / "kp.qgspec"
    save(kp, path)
    loaded = load(path)
    assert verify_axioms(loaded, 1e-12).passed
    assert np.array_equal(loaded.comult, kp.comult)


def test_malformed_document_errors(tmp_path):
    path = tmp_path / "broken.qgspec"
    path.write_text("{not json")
    with pytest.raises(QGSpecError) as err:
        load(path)
    assert "line" in str(err.value)
    with pytest.raises(QGSpecError):
        from_document({"schema": "other"})
    with pytest.raises(QGSpecError):
        from_document({"schema": "qgspec-1", "block_dims": [1]})


def test_axiom_failure_on_load_warns(tmp_path, cz4):
    doc = to_document(cz4)
    doc["antipode"][0][0] = [0.5, 0.0]
    path = tmp_path / "corrupt.qgspec"
    path.write_text(json.dumps(doc))
    with pytest.warns(UserWarning, match="fails axioms"):
        load(path)
