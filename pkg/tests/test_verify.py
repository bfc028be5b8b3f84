import pytest

from artifact.rouquier import parse_braid
from artifact.verify import (MARKOV2_SIGN, SUITES, pipeline, run_suite, witt_ratio_shift)


@pytest.mark.parametrize("suite", ["witt", "flatness", "chi", "lemmas", "koszul"])
def test_fast_suites_pass(suite):
    checks = run_suite(suite)
    assert checks
    assert [c.line() for c in checks if not c.passed] == []


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
    assert set(SUITES) == {"witt", "flatness", "chi", "lemmas", "koszul", "moves", "strands",
                           "euler"}


@pytest.mark.parametrize("text,n,sign", [("1", 2, 1), ("-1", 2, -1)])
def test_markov2_sign_fixture(text, n, sign):
    # pinned: closing sigma shifts L_m by -(m+1) lambda^m, sigma^-1 by +(m+1) lambda^m
    assert MARKOV2_SIGN == -1
    H, H0 = pipeline(parse_braid(text, n), 8), pipeline(parse_braid("", 1), 8)
    for m in range(4):
        diffs, probs = witt_ratio_shift(H, H0, "x1", "x1", m, 8)
        assert probs == []
        assert set(diffs.values()) == {-sign * (m + 1)}


def test_ratio_shift_reports_bad_pieces():
    # the trefoil has 2-dimensional pieces
    H = pipeline(parse_braid("1,1,1"), 6)
    _, probs = witt_ratio_shift(H, H, "x1", "x1", 1, 6)
    assert any("one-dimensional" in p for p in probs)


@pytest.mark.parametrize("suite,q", [("strands", 8), ("euler", 8), ("moves", 8)])
def test_slow_suites_at_small_q(suite, q):
    checks = run_suite(suite, q_max=q)
    assert [c.line() for c in checks if not c.passed] == []
