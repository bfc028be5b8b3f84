import pytest
from hypothesis import given, strategies as st

from artifact import polymat as pm
from artifact.qpoly import Polynomial, VarSet, parse
from artifact.witt import (ConnectionMatrixSeq, FlatSequence, NonDivisible, TruncationError,
                           curvature_matrix, curvature_scalar, flat_from_gauge, is_flat,
                           zero_sequence)

VS = VarSet(["x", "y"])


def test_pi_prime_terms():
    s = FlatSequence.pi_prime(VS, "x")
    assert [str(s.term(m)) for m in range(4)] == ["1", "2*x", "3*x^2", "4*x^3"]
    assert is_flat(s)


def test_pi_is_flat_and_symmetric():
    a, b = FlatSequence.pi(VS, "x", "y"), FlatSequence.pi(VS, "y", "x")
    assert is_flat(a)
    assert all(a.term(m) == b.term(m) for m in range(7))


@given(st.fractions(min_value=-3, max_value=3, max_denominator=3),
       st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_linear_combinations_stay_flat(r, s):
    c = FlatSequence.linear_combination(
        [(r, FlatSequence.pi_prime(VS, "x")), (s, FlatSequence.pi(VS, "x", "y"))])
    assert is_flat(c)


def test_not_flat():
    bad = FlatSequence.explicit([parse("x", VS) ** m * (m + 1) ** 2 for m in range(5)])
    assert not is_flat(bad)
    # (0, n) curvature always vanishes when a_0 is constant
    assert curvature_scalar(bad, 0, 1).is_zero()
    assert str(curvature_scalar(bad, 1, 2)) == "-2*x^3"


def test_truncation():
    s = FlatSequence.pi_prime(VS, "x", M_max=3)
    with pytest.raises(TruncationError):
        s.term(4)
    with pytest.raises(TruncationError):
        curvature_scalar(s, 2, 2)
    assert zero_sequence(VS, 2).term(2).is_zero()


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3))
def test_gauge_of_product_of_differences(ks):
    # p = prod (y - x)^k: L_m p / p = sum k pi_m
    p = parse("y - x", VS) ** sum(ks)
    g = flat_from_gauge(p, M_max=4)
    pi = FlatSequence.pi(VS, "x", "y")
    assert all(g.term(m) == pi.term(m) * sum(ks) for m in range(5))
    assert is_flat(g)


def test_gauge_not_divisible():
    with pytest.raises(NonDivisible):
        flat_from_gauge(parse("x + 1", VS))
    with pytest.raises(ValueError):
        flat_from_gauge(Polynomial.zero(VS))


def test_matrix_curvature_detects_nonabelian_term():
    z, one = Polynomial.zero(VS), Polynomial.const(VS, 1)
    N = ((z, one), (z, z))
    # constant nilpotent A_m = N for all m: curvature [A_n, A_m] - (n-m)A = -(n-m)N
    A = ConnectionMatrixSeq(2, lambda m: N, 4)
    assert pm.is_zero(curvature_matrix(A, 1, 1))
    assert not pm.is_zero(curvature_matrix(A, 0, 1))
