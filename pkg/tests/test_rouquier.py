import pytest
from hypothesis import given, settings, strategies as st

from artifact.rouquier import (BraidWord, bracket, check_chain_iso, check_complex, parse_braid,
                               r3_reduced_complex, r3_symmetry_maps, transpose13_complex)
from artifact.soergel import StrandContext, cyclic_iso
from artifact.verify import self_writhes


def test_parse():
    w = parse_braid("1, -2  1")
    assert w.n == 3 and w.letters == (1, -2, 1)
    assert parse_braid("", 2).n == 2
    assert str(parse_braid("1,1,1")) == "1,1,1"
    with pytest.raises(ValueError):
        parse_braid("1,a")
    with pytest.raises(ValueError):
        parse_braid("3", 2)
    with pytest.raises(ValueError):
        BraidWord(2, (0,))


def test_components():
    assert parse_braid("1,1,1").components() == [[1, 2]]
    assert parse_braid("1,1").components() == [[1], [2]]
    assert parse_braid("1,2").components() == [[1, 2, 3]]
    assert parse_braid("", 3).components() == [[1], [2], [3]]
    assert parse_braid("1,-1").writhe() == 0
    assert parse_braid("1,-2").mirror().letters == (-1, 2)


words = st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.sampled_from([i for i in range(-(n - 1), n) if i]), max_size=6)))


@given(words)
def test_components_partition_strands(nw):
    n, letters = nw
    w = BraidWord(n, tuple(letters))
    comps = w.components()
    assert sorted(s for c in comps for s in c) == list(range(1, n + 1))
    wr = self_writhes(w)
    assert sum(abs(v) for v in wr.values()) <= len(letters)
    # crossings between different components and within them add up to the writhe parity
    assert (w.writhe() - sum(wr.values())) % 2 == 0


def test_self_writhes():
    assert self_writhes(parse_braid("1,1,1")) == {1: 3}
    assert self_writhes(parse_braid("1,1")) == {1: 0, 2: 0}
    assert self_writhes(parse_braid("1,-2")) == {1: 0}


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=3))
@settings(max_examples=8)
def test_brackets_are_complexes(letters):
    C = bracket(BraidWord(3, tuple(letters)), M_max=2)
    assert check_complex(C, 2) == []
    assert sum(len(v) for v in C.terms.values()) == 2 ** len(letters)


def test_letter_shifts():
    C = bracket(parse_braid("1"), M_max=2)
    assert (C.q_shift, C.a_shift_doubled, C.t_shift_doubled) == (2, -1, -1)
    assert C.positions() == [0, 2]
    C = bracket(parse_braid("-1"), M_max=2)
    assert (C.q_shift, C.a_shift_doubled, C.t_shift_doubled) == (-2, 1, 1)
    assert C.positions() == [-2, 0]


def test_reduced_r3_complex_symmetric():
    ctx = StrandContext(3, M_max=3)
    D = r3_reduced_complex(ctx)
    assert check_complex(D, 3) == []
    assert [len(D.terms[t]) for t in D.positions()] == [1, 2, 2, 1]
    T = transpose13_complex(D)
    assert check_chain_iso(T, D, r3_symmetry_maps(D, T), 3) == []
    # without swapping the summands the map is not even a bimodule map
    same = {t: {(i, i): cyclic_iso(T.terms[t][i], D.terms[t][i]) for i in range(len(D.terms[t]))}
            for t in D.positions()}
    assert check_chain_iso(T, D, same, 3) != []
