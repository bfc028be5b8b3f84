import pytest

from artifact import polymat as pm
from artifact.equibimod import BimoduleHom, check_hom, identity_hom, tensor_hom, tensor_middle
from artifact.soergel import StrandContext, chi_plus, elementary

from artifact.splitting import (basis_change_from_words, qdim_identity, split_s3, split_two,
                                split_two_with_diagonal)


def _bools(rep):
    return {k: v for k, v in rep.items() if isinstance(v, bool)}


@pytest.mark.parametrize("fn", [split_two, split_two_with_diagonal, split_s3])
def test_all_named_checks_hold(fn):
    rep = fn(3)
    failed = [k for k, v in _bools(rep).items() if not v]
    assert failed == []


def test_two_strand_matrices():
    rep = split_two(3)
    assert rep["chi_plus_x_1"] == rep["chi_plus_x_1_expected"]
    assert rep["one_x_chi_minus"] == rep["one_x_chi_minus_expected"]
    assert rep["q_rank"] == {0: 1, 2: 2, 4: 1}


def test_s3_generator_matrix():
    rep = split_s3(3)
    assert [[str(c) for c in r] for r in rep["generator_matrix"]] == [["1", "-x1 - x2 + 2*x3"],
                                                                    ["0", "-1"]]
    # the other sign of v2 gives +1 in the corner
    assert str(rep["generator_matrix_flipped_v2"][1][1]) == "1"
    assert rep["connection_not_split"]


def test_qdim():
    assert qdim_identity()


def test_dropping_the_half_breaks_the_diagram_not_equivariance():
    ctx = StrandContext(2, M_max=3)
    cp = chi_plus(ctx, 1)
    doubled = BimoduleHom(cp.source, cp.target, pm.scale(cp.matrix, 2), cp.q_shift)
    # a scalar multiple of a hom is still a hom ...
    assert check_hom(doubled, 3) == []
    # ... but the splitting diagram no longer commutes with the expected matrix
    B = elementary(ctx, 1)
    _, Pinv = basis_change_from_words(tensor_middle(B, B),
                                      ["1", "y2", "m1_2 - m1_1", "(m1_2 - m1_1)*y2"])
    up = pm.mul(Pinv, tensor_hom(doubled, identity_hom(B)).matrix)
    assert up != split_two(3)["chi_plus_x_1_expected"]
