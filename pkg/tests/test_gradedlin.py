from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from artifact.gradedlin import (Echelon, QuotientBasis, TriplyGradedHomology, euler_characteristic,
                                homology, induced_operator, kernel_and_image, monomials,
                                operator_piece, poincare, shift_audit)
from artifact.hochschild import hh_of_complex
from artifact.rouquier import bracket, parse_braid

small = st.integers(-3, 3)
matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=5))


def _sparse(col):
    return {i: Fraction(v) for i, v in enumerate(col) if v}


@given(matrices)
def test_rank_and_kernel_against_sympy(rows):
    cols = list(zip(*rows))
    kernel, ech = kernel_and_image([_sparse(c) for c in cols])
    M = sympy.Matrix(rows)
    assert len(ech) == M.rank()
    assert len(kernel) == len(cols) - M.rank()
    for v in kernel:
        x = sympy.Matrix([v.get(j, 0) for j in range(len(cols))])
        assert M * x == sympy.zeros(len(rows), 1)


@given(matrices)
def test_echelon_coordinates(rows):
    ech = Echelon()
    vecs = [_sparse(r) for r in rows]
    for k, v in enumerate(vecs):
        ech.add(v, {k: Fraction(1)})
    for v in vecs:
        c = ech.coordinates(v)
        back = {}
        for k, a in c.items():
            for i, x in vecs[k].items():
                back[i] = back.get(i, 0) + a * x
        assert {i: x for i, x in back.items() if x} == v


def test_quotient_basis():
    B = Echelon()
    B.add({0: Fraction(1)})
    Q = QuotientBasis(B, [{0: Fraction(1)}, {1: Fraction(1)}, {0: Fraction(2), 1: Fraction(1)}])
    assert len(Q) == 1


def test_monomials():
    assert len(monomials(3, 2)) == 6
    assert monomials(2, -1) == []


def H(text, n=None, q=10, order=1):
    return homology(hh_of_complex(bracket(parse_braid(text, n), M_max=3)), q, order)


def test_unknot_by_hand():
    # Q[x] (x) Lambda(theta): 1 in every even q for theta^0, and from q = 2 for theta
    dims = H("", 1).dims
    expect = {(2 * k, 1, -1): 1 for k in range(6)}
    expect.update({(2 * k, -1, -1): 1 for k in range(1, 6)})
    assert dims == expect


def test_unlink_two_components():
    dims = H("", 2, q=6).dims
    # product of two unknots
    one = H("", 1, q=6).dims
    prod = {}
    for (q1, a1, t1), d1 in one.items():
        for (q2, a2, t2), d2 in one.items():
            if q1 + q2 <= 6:
                k = (q1 + q2, a1 + a2, t1 + t2)
                prod[k] = prod.get(k, 0) + d1 * d2
    assert dims == prod


def test_monomial_order_independence():
    assert H("1,1,1", q=8).dims == H("1,1,1", q=8, order=-1).dims


def test_poincare_and_euler():
    empty = TriplyGradedHomology({}, 4, engine=None)
    assert poincare(empty) == []
    assert euler_characteristic(empty) == {}
    h = H("1", 2, q=4)
    assert poincare(h) == [(q, a, t, d) for (q, a, t), d in sorted(h.dims.items())]
    bad = TriplyGradedHomology({(0, 1, 0): 1}, 2, engine=None)
    with pytest.raises(ValueError):
        euler_characteristic(bad)


def test_odd_qmax_rejected():
    with pytest.raises(ValueError):
        H("1", 2, q=5)


def test_induced_operators():
    h = H("1,1,1", q=8)
    ops = induced_operator(h, ("x", "x1"))
    assert set(ops) == set(h.dims)
    assert ops == induced_operator(h, ("x", "x2"))
    L = operator_piece(h, ("L", 0), 0, -1, 1)
    # L_0 is the Euler operator up to the framing shift: a scalar on a 1-dim piece
    assert len(L) == 1 and len(L[0]) == 1
    with pytest.raises(ValueError):
        induced_operator(h, ("y", 1))


def test_shift_audit():
    bic = hh_of_complex(bracket(parse_braid("1,-2"), M_max=3))
    audit = shift_audit(bic, 8, 3)
    assert audit["differentials_q_degree_zero"]
    assert audit["operator_padding"] == 6


def test_L0_is_euler_grading_on_unknot():
    h = H("", 1, q=10)
    for (q, a, t) in h.dims:
        if q + 0 <= 10:
            assert operator_piece(h, ("L", 0), q, a, t) == [[Fraction(q, 2)]]
