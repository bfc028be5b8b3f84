from hypothesis import given, strategies as st

from artifact import polymat as pm
from artifact.hochschild import (check_bicomplex, check_koszul, hh_of_complex,
                                 koszul_of_diagonal, theta_connection, theta_sign)
from artifact.rouquier import bracket, parse_braid
from artifact.soergel import StrandContext, diagonal, elementary, soergel3
from artifact.witt import curvature_matrix


@given(st.integers(0, 63), st.integers(0, 5), st.integers(0, 5))
def test_theta_signs_anticommute(S, j, k):
    # d_j d_k = - d_k d_j on theta_S whenever both bits are set
    if j == k or not (S >> j & 1 and S >> k & 1):
        return
    a = theta_sign(S, k) * theta_sign(S ^ (1 << k), j)
    b = theta_sign(S, j) * theta_sign(S ^ (1 << j), k)
    assert a == -b


def test_koszul_complexes():
    ctx2, ctx3 = StrandContext(2, M_max=3), StrandContext(3, M_max=2)
    for M in (diagonal(ctx2), elementary(ctx2, 1), soergel3(ctx3)):
        K = koszul_of_diagonal(M)
        assert check_koszul(K, M.M_max) == []
        assert len(K.basis()) == M.rank << K.n


def test_gradings():
    K = koszul_of_diagonal(elementary(StrandContext(2, M_max=2), 1))
    assert K.qdeg(0b11, 1) == 2 + 4
    assert K.a_doubled(0b01) == -2


def test_theta_connection_flat():
    A, p, _ = theta_connection(2, 4)
    for m in range(5):
        for n in range(5 - m):
            assert pm.is_zero(curvature_matrix(A, m, n))
        assert pm.witt(m, p, None) == pm.mul(A[m], p)


def test_bicomplex_shifts():
    C = bracket(parse_braid("1,1"), M_max=2)
    B = hh_of_complex(C)
    assert (B.a_shift_doubled, B.t_shift_doubled) == (C.a_shift_doubled + 2, C.t_shift_doubled - 2)
    assert check_bicomplex(B, 2) == []
