import random

import pytest

from torifactor import (
    IntMatrix,
    Lattice,
    PreconditionError,
    ShapeError,
    classify_F,
    classify_W,
    gale_dual,
    reduce_F,
)

from _exampledata import EX1_Q, EX1_V, EX1_VHAT, EX2_Q, EX2_VHAT
from _randgen import minor_gcd, pick_fan_shape, random_cf_matrix, random_reduced_f_matrix


def test_gale_dual_of_first_example():
    assert Lattice.from_matrix(gale_dual(EX1_V)) == Lattice.from_matrix(EX1_Q)


def test_gale_dual_of_weight_matrix():
    assert Lattice.from_matrix(gale_dual(EX2_Q)) == Lattice.from_matrix(EX2_VHAT)


def test_gale_dual_of_identity_with_negative_column():
    a = IntMatrix([[1, 0, -1], [0, 1, -1]])
    dual = gale_dual(a)
    assert Lattice.from_matrix(dual) == Lattice(3, [[1, 1, 1]])


def test_gale_dual_orthogonality_random():
    rng = random.Random(41)
    for _ in range(60):
        n, r = pick_fan_shape(rng)
        v = random_reduced_f_matrix(rng, n, r)
        q = gale_dual(v)
        assert (q @ v.transpose()).is_zero()


def test_gale_dual_rejects_rank_deficient():
    with pytest.raises(PreconditionError):
        gale_dual(IntMatrix([[1, 2, 3], [2, 4, 6]]))


def test_classify_first_example():
    rep = classify_F(EX1_V)
    assert rep.is_F and not rep.is_CF and rep.is_reduced
    assert rep.failed_conditions == ("e",)


def test_classify_covering_matrix():
    rep = classify_F(EX1_VHAT)
    assert rep.is_F and rep.is_CF


def test_classify_orthant_is_not_complete():
    v = IntMatrix([[1, 0, 0], [0, 1, 0]])
    rep = classify_F(v)
    assert not rep.is_F
    assert "b" in rep.failed_conditions and "c" in rep.failed_conditions


def test_classify_rejects_wide_shape():
    with pytest.raises(ShapeError):
        classify_F(IntMatrix([[1, 0], [0, 1]]))


def test_classify_detects_proportional_columns():
    v = IntMatrix([[1, 2, -1], [1, 2, -1]])
    rep = classify_F(v)
    assert "d" in rep.failed_conditions


def test_classify_W_examples():
    assert classify_W(EX1_Q).is_W
    assert classify_W(EX2_Q).is_W
    bad = classify_W(IntMatrix([[1, 0]]))
    assert not bad.is_W
    assert {"d", "e"} <= set(bad.failed_conditions)


def test_classify_W_detects_opposite_sign_pair():
    # the row lattice contains (1, -1, 0): not a weight matrix
    q = IntMatrix([[1, -1, 0], [0, 0, 1]])
    rep = classify_W(q)
    assert "f" in rep.failed_conditions


def test_classify_W_detects_unit_vector():
    q = IntMatrix([[1, 0, 0], [0, 1, 1]])
    rep = classify_W(q)
    assert "e" in rep.failed_conditions


def test_classify_W_detects_cotorsion():
    q = IntMatrix([[2, 2, 2]])
    rep = classify_W(q)
    assert "b" in rep.failed_conditions


def test_reduce_columns():
    assert reduce_F(IntMatrix([[2, 0], [0, 3]])) == IntMatrix.identity(2)
    assert reduce_F(IntMatrix.column([4, 6])) == IntMatrix.column([2, 3])
    assert reduce_F(EX1_V) == EX1_V
    red = reduce_F(IntMatrix([[2, 0, -4], [0, 3, -6]]))
    assert red == reduce_F(red)


def test_reduce_rejects_zero_column():
    with pytest.raises(PreconditionError):
        reduce_F(IntMatrix([[1, 0], [1, 0]]))


def test_double_dual_is_CF():
    rng = random.Random(42)
    for _ in range(40):
        n, r = pick_fan_shape(rng)
        v = random_reduced_f_matrix(rng, n, r)
        vhat = gale_dual(gale_dual(v))
        rep = classify_F(vhat)
        assert rep.is_F and rep.is_CF
        # the double dual fixes matrices that already have full column lattice
        if classify_F(v).is_CF:
            assert Lattice.from_matrix(vhat) == Lattice.from_matrix(v)


def test_cf_iff_coprime_maximal_minors():
    # HNF-based CF test against direct minor enumeration
    rng = random.Random(43)
    for _ in range(50):
        n, r = pick_fan_shape(rng)
        v = random_reduced_f_matrix(rng, n, r)
        assert classify_F(v).is_CF == (minor_gcd(v) == 1)
    assert minor_gcd(EX1_V) == 5
    assert not classify_F(EX1_V).is_CF


def test_weight_duality_on_random_instances():
    # the Gale dual of a reduced fan matrix passes every weight condition
    rng = random.Random(44)
    for _ in range(40):
        n, r = pick_fan_shape(rng)
        v = random_reduced_f_matrix(rng, n, r)
        assert classify_W(gale_dual(v)).is_W


def test_cf_matrix_generator_sanity():
    rng = random.Random(45)
    for _ in range(25):
        n, r = pick_fan_shape(rng)
        v = random_cf_matrix(rng, n, r)
        rep = classify_F(v)
        assert rep.is_F and rep.is_CF and rep.is_reduced


def test_double_dual_is_CF_for_non_reduced_input():
    v = IntMatrix([[2, 0, -2], [0, 3, -3]])  # F-matrix with non-primitive columns
    rep = classify_F(v)
    assert rep.is_F and not rep.is_reduced
    assert classify_F(gale_dual(gale_dual(v))).is_CF
