"""Hochschild homology stage: Koszul complexes of the diagonal.

For a bimodule M over (x; y) on n strands, M (x)^L Delta is computed by
M (x) Lambda(theta_1..theta_n) with

    d = sum_j (Y_j - x_j I) d/dtheta_j ,

theta_j of q-degree 2 and Koszul (a-)degree -1.  Basis vectors are pairs
(S, i): a bitmask S of thetas (theta product in increasing index order) and a
basis index i of M; they are ordered by S, then i.

The Witt action on the theta part uses the diagonal gauge
a_{m;jj} = pi_m(x_j, y_j), evaluated through the Y matrices, so

    nabla_m (p theta_S) = (L_m p + D_m p + sum_{j in S} pi_m(x_j, Y_j) p) theta_S .

HH carries the shift (AT^-1)^(n/2): a += n and t -= n in doubled units.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import polymat as pm
from .equibimod import EquivariantBimodule, _left_names
from .qpoly import Polynomial, VarSet
from .rouquier import BimoduleComplex
from .witt import ConnectionMatrixSeq

__all__ = [
    "KoszulComplex",
    "Bicomplex",
    "koszul_of_diagonal",
    "hh_of_complex",
    "theta_connection",
    "check_koszul",
    "check_bicomplex",
    "theta_sign",
]


def theta_sign(S: int, j: int) -> int:
    """Sign of d/dtheta_j on theta_S (bit j set)."""
    return -1 if bin(S & ((1 << j) - 1)).count("1") % 2 else 1


def _popcount(S: int) -> int:
    return bin(S).count("1")


class KoszulComplex:
    """M (x) Lambda(theta) with the Koszul differential and Witt data."""

    def __init__(self, base: EquivariantBimodule):
        self.base = base
        self.n = len(base.right_vars)
        vs = base.left_vars
        self.vs = vs
        self.x_names = tuple(base.left_vars.names[: self.n])
        self.P = []
        for j in range(self.n):
            xj = Polynomial.var(vs, self.x_names[j])
            self.P.append(pm.sub(base.right_matrix(j), pm.identity(vs, base.rank, xj)))
        self._pi: dict = {}
        self._w: dict = {}

    @property
    def rank(self) -> int:
        return self.base.rank

    def basis(self) -> list:
        return [(S, i) for S in range(1 << self.n) for i in range(self.rank)]

    def qdeg(self, S: int, i: int) -> int:
        return self.base.qdeg(i) + 2 * _popcount(S)

    def a_doubled(self, S: int) -> int:
        return self.base.a_shift_doubled - 2 * _popcount(S)

    def d_terms(self, S: int):
        """(sign, target mask, matrix P_j) for each theta_j in S."""
        return [(theta_sign(S, j), S ^ (1 << j), self.P[j]) for j in range(self.n) if S >> j & 1]

    def pi_matrix(self, m: int, j: int) -> pm.Matrix:
        """pi_m(x_j, Y_j) as a matrix on M."""
        key = (m, j)
        if key not in self._pi:
            vs = self.vs
            xj = Polynomial.var(vs, self.x_names[j])
            Yj = self.base.right_matrix(j)
            acc = pm.zeros(vs, self.rank, self.rank)
            Ypow = pm.identity(vs, self.rank)
            for k in range(m + 1):
                # x^(m-k) Y^k
                acc = pm.add(acc, pm.scale(Ypow, xj ** (m - k)))
                Ypow = pm.mul(Ypow, Yj)
            self._pi[key] = acc
        return self._pi[key]

    def witt_matrix(self, m: int, S: int) -> pm.Matrix:
        """D_m plus the theta connection on the theta_S block."""
        key = (m, S)
        if key not in self._w:
            W = self.base.D[m]
            for j in range(self.n):
                if S >> j & 1:
                    W = pm.add(W, self.pi_matrix(m, j))
            self._w[key] = W
        return self._w[key]

    def full_differential(self) -> pm.Matrix:
        r = self.rank
        N = r << self.n
        rows = [list(x) for x in pm.zeros(self.vs, N, N)]
        for S in range(1 << self.n):
            for sign, T, P in self.d_terms(S):
                for k in range(r):
                    for i in range(r):
                        if P[k][i].terms:
                            rows[T * r + k][S * r + i] = P[k][i] * sign
        return tuple(tuple(x) for x in rows)

    def full_witt(self, m: int) -> pm.Matrix:
        blocks = [self.witt_matrix(m, S) for S in range(1 << self.n)]
        return pm.block_diag(self.vs, *blocks)

    def __repr__(self) -> str:
        return f"KoszulComplex({self.base.label}, n={self.n})"


def koszul_of_diagonal(M: EquivariantBimodule) -> KoszulComplex:
    return KoszulComplex(M)


def theta_connection(n: int, M_max: int = 4):
    """(A, p, vs): A_m = diag(pi_m(x_j, y_j)) over Q[x, y] and p = (y_j - x_j)."""
    xs = [f"x{j}" for j in range(1, n + 1)]
    ys = [f"y{j}" for j in range(1, n + 1)]
    vs = VarSet(xs + ys)
    z = Polynomial.zero(vs)

    def entries(m):
        rows = []
        for j in range(n):
            x, y = Polynomial.var(vs, xs[j]), Polynomial.var(vs, ys[j])
            pim = z
            for k in range(m + 1):
                pim = pim + x ** k * y ** (m - k)
            rows.append(tuple(pim if c == j else z for c in range(n)))
        return tuple(rows)

    p = tuple((Polynomial.var(vs, ys[j]) - Polynomial.var(vs, xs[j]),) for j in range(n))
    return ConnectionMatrixSeq(n, entries, M_max), p, vs


def check_koszul(K: KoszulComplex, M_max: int | None = None) -> list:
    """d^2 = 0 and [d, nabla_m] = 0 exactly, for m <= M_max."""
    M_max = K.base.M_max if M_max is None else M_max
    problems = []
    d = K.full_differential()
    if not pm.is_zero(pm.mul(d, d)):
        problems.append("Koszul d^2 != 0")
    acting = _left_names(K.base)
    for m in range(M_max + 1):
        W = K.full_witt(m)
        # nabla d - d nabla = L(d) + W d - d W on coordinates
        c = pm.sub(pm.add(pm.witt(m, d, acting), pm.mul(W, d)), pm.mul(d, W))
        if not pm.is_zero(c):
            problems.append(f"[d, nabla_{m}] != 0")
    return problems


@dataclass
class Bicomplex:
    """Columns of Koszul complexes indexed by doubled t; t-differential blocks."""

    n: int
    vs: VarSet
    columns: dict
    dt: dict
    q_shift: int
    a_shift_doubled: int
    t_shift_doubled: int
    source: BimoduleComplex | None = None
    x_names: tuple = field(default=())

    def positions(self) -> list:
        return sorted(self.columns)

    def total_rank(self, t: int) -> int:
        return sum(K.rank << K.n for K in self.columns[t])


def hh_of_complex(C: BimoduleComplex) -> Bicomplex:
    n = C.ctx.n
    columns = {t: [koszul_of_diagonal(M) for M in ms] for t, ms in C.terms.items()}
    dt = {t: {key: f.matrix for key, f in blk.items()} for t, blk in C.diffs.items()}
    return Bicomplex(n, C.ctx.vs, columns, dt, C.q_shift, C.a_shift_doubled + n,
                     C.t_shift_doubled - n, C, tuple(C.ctx.left))


def check_bicomplex(B: Bicomplex, M_max: int | None = None) -> list:
    """Koszul checks per column and dt dK = dK dt per block."""
    problems = []
    for t in B.positions():
        for s, K in enumerate(B.columns[t]):
            problems += [f"t={t} summand {s}: {p}" for p in check_koszul(K, M_max)]
        for (j, i), F in B.dt.get(t, {}).items():
            Ks, Kt = B.columns[t][i], B.columns[t + 2][j]
            for a in range(B.n):
                if pm.mul(F, Ks.P[a]) != pm.mul(Kt.P[a], F):
                    problems.append(f"t={t} block ({j},{i}) does not commute with theta_{a + 1}")
    return problems
