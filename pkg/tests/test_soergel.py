import pytest

from artifact import polymat as pm
from artifact.equibimod import check_bimodule, check_hom, connection_shift
from artifact.soergel import (StrandContext, chi_minus, chi_plus, chi_plus_symmetric, cyclic_iso,
                              diagonal, elementary, elementary_closed_form, pi_shift, soergel3,
                              transpose13, transpose13_hom)


@pytest.fixture(scope="module")
def ctx3():
    return StrandContext(3, M_max=4)


def test_context_validation():
    with pytest.raises(ValueError):
        StrandContext(0)
    with pytest.raises(ValueError):
        StrandContext(2, left=("a",))


@pytest.mark.parametrize("i", [1, 2])
def test_elementary_closed_form(ctx3, i):
    B = elementary(ctx3, i)
    for m in range(5):
        assert B.D[m] == elementary_closed_form(ctx3, i, m)


@pytest.mark.parametrize("i", [1, 2])
def test_chi_maps_equivariant(ctx3, i):
    assert check_hom(chi_minus(ctx3, i), 4) == []
    assert check_hom(chi_plus(ctx3, i), 4) == []
    assert chi_plus(ctx3, i).matrix == chi_plus_symmetric(ctx3, i).matrix


def test_chi_plus_needs_negative_pi(ctx3):
    B = elementary(ctx3, 1)
    assert check_hom(chi_plus(ctx3, 1, target=B), 4) != []
    plus = connection_shift(B, pi_shift(ctx3, 1, +1))
    errs = check_hom(chi_plus(ctx3, 1, target=plus), 4)
    assert errs and all("Witt" in e for e in errs)


def test_chi_composites():
    ctx = StrandContext(2, M_max=3)
    # chi_- o chi_+ : D -> D is multiplication by x2 - x1 (q-degree 2)
    f = pm.mul(chi_minus(ctx, 1).matrix, chi_plus(ctx, 1).matrix)
    assert f == ((ctx.x(2) - ctx.x(1),),)


def test_transpose13_swaps_generators(ctx3):
    B1, B2 = elementary(ctx3, 1), elementary(ctx3, 2)
    T = transpose13(B1)
    assert check_bimodule(T, 4) == []
    iso = cyclic_iso(T, B2)
    assert check_hom(iso, 4) == []
    S = soergel3(ctx3)
    assert check_hom(cyclic_iso(transpose13(S), S), 4) == []
    f = transpose13_hom(chi_minus(ctx3, 1))
    assert check_hom(f, 4) == []
    assert diagonal(ctx3).rank == 1
