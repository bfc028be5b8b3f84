import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from artifact.homfly_oracle import (HeckeElement, Laurent, homfly, homfly_unreduced_series,
                                    mirror_poly, trace)
from artifact.rouquier import BraidWord, parse_braid

FIXTURE = json.loads((Path(__file__).parent / "fixtures" / "homfly_hand.json").read_text())
VZ = ("v", "z")


@pytest.mark.parametrize("name", sorted(FIXTURE["links"]))
def test_hand_values(name):
    rec = FIXTURE["links"][name]
    expect = Laurent(VZ, {(a, b): c for a, b, c in rec["terms"]})
    assert homfly(parse_braid(rec["braid"], rec["strands"])) == expect


def test_mirror():
    P = homfly(parse_braid("1,1,1"))
    assert homfly(parse_braid("-1,-1,-1")) == mirror_poly(P)
    fig8 = homfly(parse_braid("1,-2,1,-2"))
    assert mirror_poly(fig8) == fig8


def test_hecke_quadratic_relation():
    z = Laurent.mono(("z",), (1,))
    one = HeckeElement.one(3)
    t = one.times_generator(0)
    tt = t.times_generator(0)
    expect = {w: c for w, c in t.coeffs.items()}
    expect = {w: c * z for w, c in expect.items()}
    for w, c in one.coeffs.items():
        expect[w] = expect.get(w, Laurent(("z",))) + c
    assert tt.coeffs == expect
    # T^-1 T = 1
    assert t.times_generator(0, inverse=True).coeffs == one.coeffs
    assert trace(one) == Laurent.const(("z", "tau"), 1)


words = st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.sampled_from([i for i in range(-(n - 1), n) if i]), max_size=5)))


@given(words, st.data())
@settings(max_examples=25)
def test_skein(nw, data):
    n, rest = nw
    i = data.draw(st.integers(1, n - 1))
    v, vi, z = (Laurent.mono(VZ, (1, 0)), Laurent.mono(VZ, (-1, 0)), Laurent.mono(VZ, (0, 1)))
    plus = homfly(BraidWord(n, (i,) + tuple(rest)))
    minus = homfly(BraidWord(n, (-i,) + tuple(rest)))
    zero = homfly(BraidWord(n, tuple(rest)))
    assert vi * plus - v * minus == z * zero


@given(words)
@settings(max_examples=25)
def test_markov_invariance(nw):
    n, letters = nw
    letters = tuple(letters)
    P = homfly(BraidWord(n, letters))
    if letters:
        assert homfly(BraidWord(n, letters[1:] + letters[:1])) == P
    for s in (n, -n):
        assert homfly(BraidWord(n + 1, letters + (s,))) == P


def test_series():
    s = homfly_unreduced_series(parse_braid("", 1), 8)
    # U = (v^-1 - v)/z with v = a^-1 q (a exponents doubled), z = q - 1/q
    assert s == {(0, 1): -1, (2, -1): 1, (2, 1): -1, (4, -1): 1, (4, 1): -1,
                 (6, -1): 1, (6, 1): -1, (8, -1): 1, (8, 1): -1}
