import pytest
from hypothesis import given, settings, strategies as st

from artifact import polymat as pm
from artifact.equibimod import (a_shift, check_bimodule, check_hom, connection_shift,
                                direct_sum, from_json, identity_hom, q_rank, q_shift,
                                tensor_middle, to_json)
from artifact.qpoly import Polynomial
from artifact.soergel import StrandContext, diagonal, elementary, pi_shift, soergel3
from artifact.witt import FlatSequence

CTX2 = StrandContext(2, M_max=3)
CTX3 = StrandContext(3, M_max=3)


def test_basic_modules_valid():
    for M in (diagonal(CTX2), elementary(CTX2, 1), elementary(CTX3, 2), soergel3(CTX3)):
        assert check_bimodule(M, 3) == []
    assert q_rank(elementary(CTX2, 1)) == {0: 1, 2: 1}
    assert q_rank(soergel3(CTX3)) == {0: 1, 2: 2, 4: 2, 6: 1}


def test_tensor_products_valid_and_ranks_multiply():
    B1, B2 = elementary(CTX3, 1), elementary(CTX3, 2)
    for M in (tensor_middle(B1, B2), tensor_middle(B2, B1), tensor_middle(B1, B1)):
        assert check_bimodule(M, 3) == []
        assert M.rank == 4
    D = diagonal(CTX3)
    assert q_rank(tensor_middle(D, B1)) == q_rank(B1)


def test_tensor_associative_on_ranks():
    B1, B2 = elementary(CTX3, 1), elementary(CTX3, 2)
    left = tensor_middle(tensor_middle(B1, B2), B1)
    right = tensor_middle(B1, tensor_middle(B2, B1))
    assert q_rank(left) == q_rank(right) == {0: 1, 2: 3, 4: 3, 6: 1}


@given(st.fractions(min_value=-2, max_value=2, max_denominator=2))
@settings(max_examples=10)
def test_flat_connection_shift_preserves_validity(r):
    B = elementary(CTX2, 1)
    s = FlatSequence.linear_combination([(r, pi_shift(CTX2, 1)),
                                         (1, FlatSequence.pi_prime(CTX2.vs, "x1"))])
    assert check_bimodule(connection_shift(B, s), 3) == []


def test_nonflat_shift_rejected():
    B = elementary(CTX2, 1)
    x1 = CTX2.x(1)
    bad = FlatSequence.explicit([x1 ** m * (m + 1) ** 2 for m in range(4)])
    with pytest.raises(ValueError, match="not flat"):
        connection_shift(B, bad)


def test_shifts_and_sums():
    B = elementary(CTX2, 1)
    assert q_shift(B, 2).qdeg(0) == 2
    assert a_shift(B, -2).a_shift_doubled == -2
    S = direct_sum(B, q_shift(diagonal(CTX2), 4))
    assert S.rank == 3 and check_bimodule(S, 3) == []


def test_identity_hom_and_wrong_hom():
    B = elementary(CTX2, 1)
    assert check_hom(identity_hom(B), 3) == []
    f = identity_hom(B)
    f.matrix = pm.scale(f.matrix, CTX2.x(1) - CTX2.x(1) + Polynomial.const(CTX2.vs, 1))
    assert check_hom(f, 3) == []
    swapped = type(f)(B, B, ((f.matrix[1][1], f.matrix[0][0]), (f.matrix[0][0], f.matrix[1][1])))
    assert check_hom(swapped, 3) != []


def test_json_roundtrip():
    for M in (elementary(CTX3, 1), soergel3(CTX3)):
        text = to_json(M, 3)
        N = from_json(text)
        assert to_json(N, 3) == text
        assert check_bimodule(N, 3) == []
