"""Explicit splittings of small tensor products of Soergel bimodules.

Each function builds the tensor product, changes to the generators named in
its docstring, and returns a report dict of named checks (booleans) together
with the matrices that were compared, so callers can print expected versus
computed data.
"""
from __future__ import annotations

from fractions import Fraction

from . import polymat as pm
from .equibimod import (EquivariantBimodule, change_basis, check_bimodule, identity_hom,
                        operator_matrix, q_rank, tensor_hom, tensor_middle, word_vector,
                        connection_shift)
from .qpoly import Polynomial, VarSet, parse
from .soergel import (StrandContext, chi_minus, chi_plus, diagonal, elementary, pi_shift,
                      soergel3)

__all__ = [
    "block",
    "basis_change_from_words",
    "split_two",
    "split_two_with_diagonal",
    "split_s3",
    "qdim_identity",
]


def block(A: pm.Matrix, rows: range, cols: range) -> pm.Matrix:
    return tuple(tuple(A[r][c] for c in cols) for r in rows)


def basis_change_from_words(M: EquivariantBimodule, words) -> tuple:
    """(P, Pinv): columns of P are the coordinates of word * generator."""
    wvs = VarSet(sorted(set(M.extra.get("middle", {})) | set(M.right_vars)))
    cols = [word_vector(M, parse(w, wvs) if isinstance(w, str) else w) for w in words]
    P = tuple(tuple(cols[c][r] for c in range(len(cols))) for r in range(M.rank))
    return P, pm.unimodular_inverse(P)


def _same_module_data(A: dict, B: EquivariantBimodule, rng, M_max) -> bool:
    for nm in B.right_vars:
        if block(A["Y"][nm], rng, rng) != B.Y[nm]:
            return False
    for m in range(M_max + 1):
        if block(A["D"][m], rng, rng) != B.D[m]:
            return False
    return True


def _blocks_zero(mats, rows, cols) -> bool:
    return all(pm.is_zero(block(A, rows, cols)) for A in mats)


def _data(M: EquivariantBimodule, M_max: int) -> dict:
    return {"Y": M.Y, "D": [M.D[m] for m in range(M_max + 1)]}


def split_two(M_max: int = 3) -> dict:
    """B (x) B = B + B<pi> on two strands.

    New basis: v1, ybar2 v1, v2, ybar2 v2 with v1 = 1 (x) 1 and
    v2 = (m2 - m1) v1, m the middle variables.  The maps chi_+ (x) 1 and
    1 (x) chi_- are read in this basis.
    """
    ctx = StrandContext(2, M_max=M_max)
    B = elementary(ctx, 1)
    BB = tensor_middle(B, B)
    P, Pinv = basis_change_from_words(BB, ["1", "y2", "m1_2 - m1_1", "(m1_2 - m1_1)*y2"])
    N = change_basis(BB, P, Pinv)
    data = _data(N, M_max)
    r1, r2 = range(0, 2), range(2, 4)
    Bpi = connection_shift(B, pi_shift(ctx, 1, +1), "B<pi>")
    rep = {"change_of_basis": P}
    rep["valid"] = not check_bimodule(BB, M_max)
    rep["block_diagonal"] = (_blocks_zero(list(N.Y.values()) + data["D"], r1, r2)
                             and _blocks_zero(list(N.Y.values()) + data["D"], r2, r1))
    rep["summand_1_is_B"] = _same_module_data(data, B, r1, M_max)
    rep["summand_2_is_B<pi>"] = _same_module_data(data, Bpi, r2, M_max)
    # chi_+ (x) 1 : D (x) B -> (B<-pi>) (x) B
    cp = tensor_hom(chi_plus(ctx, 1), identity_hom(B))
    up = pm.mul(Pinv, cp.matrix)
    half = Fraction(1, 2)
    x1, x2 = ctx.x(1), ctx.x(2)
    I2 = pm.identity(ctx.vs, 2)
    exp_up = tuple(list(pm.scale(I2, (x2 - x1) * half)) + list(pm.scale(I2, half)))
    rep["chi_plus_x_1"] = up
    rep["chi_plus_x_1_expected"] = exp_up
    rep["chi_plus_x_1_matches"] = up == exp_up
    # 1 (x) chi_- : B (x) B -> B (x) D = B
    cm = tensor_hom(identity_hom(B), chi_minus(ctx, 1))
    down = pm.mul(cm.matrix, P)
    z = parse("y2 - y1", VarSet(ctx.right))
    exp_down = tuple(tuple(list(I2[r]) + list(operator_matrix(B, z)[r])) for r in range(2))
    rep["one_x_chi_minus"] = down
    rep["one_x_chi_minus_expected"] = exp_down
    rep["one_x_chi_minus_matches"] = down == exp_down
    rep["q_rank"] = q_rank(BB)
    rep["q_rank_matches"] = q_rank(BB) == {0: 1, 2: 2, 4: 1}
    return rep


def split_two_with_diagonal(M_max: int = 3) -> dict:
    """B1 (x) D (x) B1 on three strands splits like B (x) B.

    Basis v1, ybar2 v1, v2, ybar2 v2 with v2 = (m1_2 - m1_1) v1.  Reports the
    matrices of chi_- (x) 1 (x) 1 and 1 (x) 1 (x) chi_- on (v1, v2).
    """
    ctx = StrandContext(3, M_max=M_max)
    B, D = elementary(ctx, 1), diagonal(ctx)
    BDB = tensor_middle(tensor_middle(B, D), B)
    P, Pinv = basis_change_from_words(BDB, ["1", "y2", "m1_2 - m1_1", "(m1_2 - m1_1)*y2"])
    N = change_basis(BDB, P, Pinv)
    data = _data(N, M_max)
    r1, r2 = range(0, 2), range(2, 4)
    Bpi = connection_shift(B, pi_shift(ctx, 1, +1), "B1<pi12>")
    rep = {"change_of_basis": P}
    rep["v2_equals_(z2-z1)v1"] = (word_vector(BDB, parse("m1_2 - m1_1", _wvs(BDB)))
                                  == word_vector(BDB, parse("m2_2 - m2_1", _wvs(BDB))))
    rep["block_diagonal"] = (_blocks_zero(list(N.Y.values()) + data["D"], r1, r2)
                             and _blocks_zero(list(N.Y.values()) + data["D"], r2, r1))
    rep["summand_1_is_B1"] = _same_module_data(data, B, r1, M_max)
    rep["summand_2_is_B1<pi12>"] = _same_module_data(data, Bpi, r2, M_max)
    x1, x2 = ctx.x(1), ctx.x(2)
    I2 = pm.identity(ctx.vs, 2)
    left = tensor_hom(tensor_hom(chi_minus(ctx, 1), identity_hom(D)), identity_hom(B))
    right = tensor_hom(tensor_hom(identity_hom(B), identity_hom(D)), chi_minus(ctx, 1))
    L = pm.mul(left.matrix, P)
    R = pm.mul(right.matrix, P)
    wdiff = operator_matrix(B, parse("y2 - y1", VarSet(ctx.right)))
    xdiff = pm.scale(I2, x2 - x1)
    rep["chi_minus_x_1_x_1"] = L
    rep["one_x_1_x_chi_minus"] = R
    rep["chi_minus_x_1_x_1_is_(1,x2-x1)"] = L == _hcat(I2, xdiff)
    rep["one_x_1_x_chi_minus_is_(1,w2-w1)"] = R == _hcat(I2, wdiff)
    rep["inverse"] = Pinv
    return rep


def _hcat(A, B):
    return tuple(tuple(list(a) + list(b)) for a, b in zip(A, B))


def _wvs(M):
    return VarSet(sorted(set(M.extra.get("middle", {})) | set(M.right_vars)))


def split_s3(M_max: int = 3) -> dict:
    """B1 (x) B2 (x) B1 = S3 + B1 as bimodules, generated by 1 and y.

    y = 2(m2_3 - m1_2); S3 is the span of the generator 1, with zero
    connection, and the quotient by it is B1<pi12>.  The map 1 (x) chi_- (x) 1
    to B1 (x) D (x) B1 is read relative to (1, y) and (v1, v2).
    """
    ctx = StrandContext(3, M_max=M_max)
    B1, B2 = elementary(ctx, 1), elementary(ctx, 2)
    S = soergel3(ctx)
    M = tensor_middle(tensor_middle(B1, B2), B1)
    wvs = _wvs(M)
    y = parse("2*m2_3 - 2*m1_2", wvs)
    s_words = [w.to_varset(wvs) for w in S.extra["words"]]
    words = s_words + [y, y * parse("y2", wvs)]
    P, Pinv = basis_change_from_words(M, words)
    N = change_basis(M, P, Pinv)
    data = _data(N, M_max)
    rs, rb = range(0, 6), range(6, 8)
    Bpi = connection_shift(B1, pi_shift(ctx, 1, +1), "B1<pi12>")
    rep = {"change_of_basis_rank": len(P)}
    full = VarSet(list(ctx.left) + list(wvs.names))
    rep["y_formula"] = (word_vector(M, y) == word_vector(
        M, parse("m1_1 - m1_2 - x1 - x2 + 2*y3", full)))
    rep["submodule_S3"] = _blocks_zero(list(N.Y.values()) + data["D"], rb, rs)
    rep["S3_block_is_S3"] = _same_module_data(data, S, rs, M_max)
    rep["right_action_splits"] = _blocks_zero(list(N.Y.values()), rs, rb)
    rep["quotient_is_B1<pi12>"] = _same_module_data(data, Bpi, rb, M_max)
    # the sequence does not split equivariantly: L_m y has a component in S3
    rep["connection_not_split"] = not _blocks_zero(data["D"], rs, rb)
    # 1 (x) chi_- (x) 1 followed by the B1 D B1 basis change
    f = tensor_hom(tensor_hom(identity_hom(B1), chi_minus(ctx, 2)), identity_hom(B1))
    P2inv = split_two_with_diagonal(M_max)["inverse"]
    F = pm.mul(P2inv, pm.mul(f.matrix, P))
    # columns 0 (generator 1) and 6 (generator y); rows 0 (v1) and 2 (v2)
    gen = [[F[r][c] for c in (0, 6)] for r in (0, 2)]
    rep["generator_matrix"] = gen
    other = [F[r][c] for r in (1, 3) for c in (0, 6)]
    rep["generator_columns_clean"] = all(p.is_zero() for p in other)
    x1, x2, x3 = ctx.x(1), ctx.x(2), ctx.x(3)
    c = x3 * 2 - x1 - x2
    one = Polynomial.const(ctx.vs, 1)
    zero = Polynomial.zero(ctx.vs)
    rep["generator_matrix_expected"] = [[one, c], [zero, -one]]
    rep["generator_matrix_matches"] = gen == [[one, c], [zero, -one]]
    # with v2 replaced by -v2 (i.e. v2 = (y1 - y2) v1) the lower-right entry is +1
    rep["generator_matrix_flipped_v2"] = [[gen[0][0], gen[0][1]], [-gen[1][0], -gen[1][1]]]
    rep["q_dimension_identity"] = qdim_identity()
    return rep


def qdim_identity() -> bool:
    """[2]^3 - q^2 [2] = [3]! with [k] = 1 + q^2 + ... ; checked on q-ranks."""
    ctx = StrandContext(3, M_max=1)
    B1, B2 = elementary(ctx, 1), elementary(ctx, 2)
    M = tensor_middle(tensor_middle(B1, B2), B1)
    lhs = dict(q_rank(M))
    for d, k in q_rank(B1).items():
        lhs[d + 2] = lhs.get(d + 2, 0) - k
    lhs = {d: k for d, k in lhs.items() if k}
    two = {0: 1, 2: 1}
    three = {0: 1, 2: 1, 4: 1}
    fact = {}
    for a, x in two.items():
        for b, y in three.items():
            fact[a + b] = fact.get(a + b, 0) + x * y
    return lhs == fact == q_rank(soergel3(ctx))
