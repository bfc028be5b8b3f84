from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact.qpoly import Polynomial, VarSet, apply_witt, format_poly, parse, substitute

VS = VarSet(["x1", "x2", "x3"])

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda d: Polynomial(VS, d))


def test_parse_and_format():
    p = parse("3/2*x1^2*x2 - x3 + 1", VS)
    assert format_poly(p) == str(p)
    assert parse(str(p), VS) == p
    assert p.degree() == 3
    assert parse("(x1 + x2)^2", VS) == parse("x1^2 + 2*x1*x2 + x2^2", VS)


def test_parse_errors():
    with pytest.raises(ValueError):
        parse("x1 +", VS)
    with pytest.raises(ValueError):
        parse("z9", VS)


@given(polys)
def test_roundtrip(p):
    assert parse(str(p), VS) == p


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p - p == Polynomial.zero(VS)


@given(polys, polys, st.integers(0, 4))
def test_witt_is_derivation(p, q, m):
    assert apply_witt(m, p * q) == apply_witt(m, p) * q + p * apply_witt(m, q)


@given(polys, st.integers(0, 4), st.integers(0, 4))
def test_witt_bracket(p, m, n):
    lhs = apply_witt(m, apply_witt(n, p)) - apply_witt(n, apply_witt(m, p))
    assert lhs == apply_witt(m + n, p) * (n - m)


def test_witt_on_variable():
    x = Polynomial.var(VS, "x2")
    assert apply_witt(3, x) == x ** 4
    assert apply_witt(0, x ** 5) == x ** 5 * 5
    # acting only on x1 leaves x2 alone
    assert apply_witt(2, x, ["x1"]).is_zero()


def test_exact_div_and_substitute():
    x1, x2 = Polynomial.var(VS, "x1"), Polynomial.var(VS, "x2")
    p = (x2 - x1) * (x1 + x2) ** 2
    assert p.exact_div(x2 - x1) == (x1 + x2) ** 2
    assert (x1 ** 2 + x2).exact_div(x1 + 1) is None
    assert substitute(p, {"x2": x1}).is_zero()


def test_gradings():
    p = parse("x1^2 + x2*x3", VS)
    assert p.is_homogeneous() and p.q_degree() == 4
    assert not parse("x1 + 1", VS).is_homogeneous()
    assert parse("x1^2 + x3", VS).homogeneous_part(1) == parse("x3", VS)
    assert Polynomial.const(VS, Fraction(1, 2)).constant_term() == Fraction(1, 2)
