"""Exact homology of a Hochschild bicomplex, one (q, a) block at a time.

Every chain vector lives in a finite space C(t, q, a): basis elements
(s, S, i, mu) = summand s of column t, theta mask S, module basis index i and
an x-monomial mu, with total q-degree q and doubled a-degree a.  Both
differentials have q-degree 0, so each block is finite and exact with no
truncation error; operators that raise q (x_j, L_m) pull in higher blocks
lazily.

Homology is taken in the Koszul direction first, then in t:

    H^K(t)  = ker dK / im dK          (inside C(t, q, *))
    HHH(t)  = ker dT* / im dT*        (dT* induced on H^K)

All arithmetic is over Fraction.  Vectors are sparse dicts index -> Fraction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .hochschild import Bicomplex

__all__ = [
    "Echelon",
    "TruncatedSpace",
    "HomologyEngine",
    "TriplyGradedHomology",
    "homology",
    "poincare",
    "induced_operator",
    "euler_characteristic",
    "operator_piece",
    "check_block_exactness",
    "shift_audit",
]


# --------------------------------------------------------------------------
# sparse exact row reduction

def _axpy(acc: dict, c, vec: dict):
    """acc += c * vec, in place, dropping zeros."""
    for k, v in vec.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class Echelon:
    """Rows with distinct leading (smallest) indices; each row carries a tag.

    The tag records what the row stands for in some other coordinate system
    (a combination of source vectors, or of chosen representatives).
    """

    def __init__(self):
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict, tag: dict | None = None):
        """Return (remainder, tag - sum c_row tag_row); stops at a free leading index."""
        rem = dict(vec)
        tg = dict(tag) if tag else {}
        while rem:
            k = min(rem)
            row = self.rows.get(k)
            if row is None:
                break
            c = rem[k]
            _axpy(rem, -c, row[0])
            _axpy(tg, -c, row[1])
        return rem, tg

    def add(self, vec: dict, tag: dict | None = None):
        """Insert vec; returns the tag combination if vec was dependent, else None."""
        rem, tg = self.reduce(vec, tag)
        if not rem:
            return tg
        k = min(rem)
        inv = 1 / Fraction(rem[k])
        self.rows[k] = ({i: v * inv for i, v in rem.items()}, {i: v * inv for i, v in tg.items()})
        return None

    def coordinates(self, vec: dict) -> dict:
        """Tag combination of a vector in the row span (full reduction)."""
        rem, tg = self.reduce(vec)
        if rem:
            raise ValueError("vector is not in the span")
        return {i: -v for i, v in tg.items()}


def kernel_and_image(images: list):
    """images[s] = sparse image of source vector s.

    Returns (kernel basis as source-coordinate dicts, echelon of the image).
    """
    ech = Echelon()
    kernel = []
    for s, w in enumerate(images):
        dep = ech.add(w, {s: Fraction(1)})
        if dep is not None:
            kernel.append(dep)
    return kernel, ech


class QuotientBasis:
    """Basis of Z / B with representatives; coordinates of vectors of Z mod B."""

    def __init__(self, B_rows: Echelon, Z: list):
        self.ech = Echelon()
        for row, _ in B_rows.rows.values():
            self.ech.add(row, {})
        self.reps: list = []
        for z in Z:
            k = len(self.reps)
            if self.ech.add(z, {k: Fraction(1)}) is None:
                self.reps.append(z)
            # dependent vectors are dropped

    def __len__(self):
        return len(self.reps)

    def coordinates(self, vec: dict) -> dict:
        return self.ech.coordinates(vec)


# --------------------------------------------------------------------------
# truncated spaces

def monomials(nvars: int, degree: int) -> list:
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for c in combo:
            e[c] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


@dataclass
class TruncatedSpace:
    t: int
    q: int
    a: int
    basis: list
    index: dict

    def __len__(self):
        return len(self.basis)


class HomologyEngine:
    """Lazily computes blocks, Koszul homology and HHH of a bicomplex."""

    def __init__(self, bic: Bicomplex, monomial_order: int = 1):
        self.bic = bic
        self.n = bic.n
        self.nv = len(bic.vs)
        self._order = monomial_order
        self._spaces: dict = {}
        self._dk: dict = {}
        self._hk: dict = {}
        self._hhh: dict = {}
        self._mon: dict = {}

    # ----- gradings
    def grading(self, t: int, s: int, S: int, i: int, mu) -> tuple:
        K = self.bic.columns[t][s]
        q = 2 * sum(mu) + K.qdeg(S, i) + self.bic.q_shift
        a = K.a_doubled(S) + self.bic.a_shift_doubled
        return q, a, t + self.bic.t_shift_doubled

    def q_min(self) -> int:
        return min(K.qdeg(0, i) + self.bic.q_shift
                   for cols in self.bic.columns.values() for K in cols for i in range(K.rank))

    def a_values(self) -> list:
        out = set()
        for cols in self.bic.columns.values():
            for K in cols:
                for S in range(1 << K.n):
                    out.add(K.a_doubled(S) + self.bic.a_shift_doubled)
        return sorted(out)

    def _monomials(self, d):
        if d not in self._mon:
            ms = monomials(self.nv, d)
            if self._order < 0:
                ms = ms[::-1]
            self._mon[d] = ms
        return self._mon[d]

    def space(self, t: int, q: int, a: int) -> TruncatedSpace:
        """Basis of C(t, q, a); t is the local doubled position."""
        key = (t, q, a)
        if key in self._spaces:
            return self._spaces[key]
        basis = []
        bic = self.bic
        for s, K in enumerate(bic.columns.get(t, [])):
            for S in range(1 << K.n):
                if K.a_doubled(S) + bic.a_shift_doubled != a:
                    continue
                for i in range(K.rank):
                    rest = q - K.qdeg(S, i) - bic.q_shift
                    if rest < 0 or rest % 2:
                        continue
                    for mu in self._monomials(rest // 2):
                        basis.append((s, S, i, mu))
        sp = TruncatedSpace(t, q, a, basis, {b: k for k, b in enumerate(basis)})
        self._spaces[key] = sp
        return sp

    # ----- chain-level maps on basis elements, returning {(s,S,i,mu): coeff}
    @staticmethod
    def _col_times(out: dict, M, i, mu, s, S, coeff):
        for k in range(len(M)):
            p = M[k][i]
            for e, c in p.terms.items():
                key = (s, S, k, tuple(a + b for a, b in zip(mu, e)))
                nv = out.get(key, 0) + coeff * c
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)

    def dk_image(self, t, elem) -> dict:
        s, S, i, mu = elem
        K = self.bic.columns[t][s]
        out: dict = {}
        for sign, T, P in K.d_terms(S):
            self._col_times(out, P, i, mu, s, T, sign)
        return out

    def dt_image(self, t, elem) -> dict:
        s, S, i, mu = elem
        out: dict = {}
        for (j, i2), F in self.bic.dt.get(t, {}).items():
            if i2 == s:
                self._col_times(out, F, i, mu, j, S, 1)
        return out

    def x_image(self, t, elem, var: int) -> dict:
        s, S, i, mu = elem
        mu2 = list(mu)
        mu2[var] += 1
        return {(s, S, i, tuple(mu2)): Fraction(1)}

    def witt_image(self, t, elem, m: int) -> dict:
        s, S, i, mu = elem
        K = self.bic.columns[t][s]
        out: dict = {}
        for v in range(self.nv):
            if mu[v]:
                mu2 = list(mu)
                mu2[v] += m
                key = (s, S, i, tuple(mu2))
                out[key] = out.get(key, 0) + mu[v]
        self._col_times(out, K.witt_matrix(m, S), i, mu, s, S, 1)
        return {k: v for k, v in out.items() if v}

    def apply(self, t, vec: dict, fn, src: TruncatedSpace, tgt: TruncatedSpace) -> dict:
        out: dict = {}
        for k, c in vec.items():
            for e, v in fn(t, src.basis[k]).items():
                idx = tgt.index.get(e)
                if idx is None:
                    raise KeyError(f"image {e} outside block ({tgt.t},{tgt.q},{tgt.a})")
                nv = out.get(idx, 0) + c * v
                if nv:
                    out[idx] = nv
                else:
                    out.pop(idx, None)
        return out

    def map_images(self, t, fn, src, tgt) -> list:
        return [self.apply(t, {k: 1}, fn, src, tgt) for k in range(len(src))]

    # ----- Koszul homology
    def _dk_elim(self, t, q, a):
        key = (t, q, a)
        if key not in self._dk:
            src = self.space(t, q, a)
            tgt = self.space(t, q, a + 2)
            imgs = self.map_images(t, self.dk_image, src, tgt)
            self._dk[key] = kernel_and_image(imgs)
        return self._dk[key]

    def koszul_homology(self, t, q, a) -> QuotientBasis:
        key = (t, q, a)
        if key not in self._hk:
            Z, _ = self._dk_elim(t, q, a)
            _, Bech = self._dk_elim(t, q, a - 2)
            self._hk[key] = QuotientBasis(Bech, Z)
        return self._hk[key]

    def _delta(self, t, q, a) -> list:
        """Induced dT: H^K(t) -> H^K(t+2), as list of coordinate dicts."""
        hk = self.koszul_homology(t, q, a)
        if t + 2 not in self.bic.columns:
            return [{} for _ in hk.reps]
        hk2 = self.koszul_homology(t + 2, q, a)
        src, tgt = self.space(t, q, a), self.space(t + 2, q, a)
        return [hk2.coordinates(self.apply(t, r, self.dt_image, src, tgt)) for r in hk.reps]

    def hhh(self, t, q, a) -> QuotientBasis:
        """HHH(t, q, a) as a quotient inside H^K coordinates."""
        key = (t, q, a)
        if key not in self._hhh:
            Z, _ = kernel_and_image(self._delta(t, q, a))
            if t - 2 in self.bic.columns:
                _, Bech = kernel_and_image(self._delta(t - 2, q, a))
            else:
                Bech = Echelon()
            self._hhh[key] = QuotientBasis(Bech, Z)
        return self._hhh[key]

    def chain_reps(self, t, q, a) -> list:
        """HHH representatives as chain vectors in C(t, q, a)."""
        hk = self.koszul_homology(t, q, a)
        out = []
        for h in self.hhh(t, q, a).reps:
            v: dict = {}
            for k, c in h.items():
                _axpy(v, c, hk.reps[k])
            out.append(v)
        return out

    def operator_block(self, t, q, a, fn, dq: int) -> list:
        """Matrix (list of columns as dicts) of a chain operator on HHH(t,q,a) -> HHH(t,q+dq,a)."""
        reps = self.chain_reps(t, q, a)
        src, tgt = self.space(t, q, a), self.space(t, q + dq, a)
        hk2 = self.koszul_homology(t, q + dq, a)
        H2 = self.hhh(t, q + dq, a)
        cols = []
        for r in reps:
            img = self.apply(t, r, fn, src, tgt)
            cols.append(H2.coordinates(hk2.coordinates(img)))
        return cols

    def check_chain_map(self, t, q, a, fn, dq: int) -> bool:
        """fn commutes with dK and dT on the block C(t, q, a)."""
        src = self.space(t, q, a)
        up = self.space(t, q + dq, a)
        for k in range(len(src)):
            e = {k: Fraction(1)}
            fx = self.apply(t, e, fn, src, up)
            for d, tt, aa in ((self.dk_image, t, a + 2), (self.dt_image, t + 2, a)):
                if d is self.dt_image and tt not in self.bic.columns:
                    continue
                mid = self.space(tt, q, aa)
                top = self.space(tt, q + dq, aa)
                lhs = self.apply(tt, self.apply(t, e, d, src, mid), fn, mid, top)
                rhs = self.apply(t, fx, d, up, top)
                if lhs != rhs:
                    return False
        return True


# --------------------------------------------------------------------------
# results

@dataclass
class TriplyGradedHomology:
    dims: dict
    q_max: int
    engine: HomologyEngine = field(repr=False)
    operators: dict = field(default_factory=dict, repr=False)

    def blocks(self) -> list:
        return sorted(k for k, v in self.dims.items() if v)

    def poincare_terms(self) -> list:
        return poincare(self)


def homology(bic: Bicomplex, q_max: int = 16, monomial_order: int = 1) -> TriplyGradedHomology:
    """Dimensions of HHH for every q <= q_max (all a, t)."""
    if q_max % 2:
        raise ValueError("q_max must be even")
    eng = HomologyEngine(bic, monomial_order)
    dims = {}
    for q in range(eng.q_min(), q_max + 1, 2):
        for a in eng.a_values():
            for t in bic.positions():
                d = len(eng.hhh(t, q, a))
                if d:
                    dims[(q, a, t + bic.t_shift_doubled)] = d
    return TriplyGradedHomology(dims, q_max, eng)


def poincare(H: TriplyGradedHomology) -> list:
    return [(q, a, t, d) for (q, a, t), d in sorted(H.dims.items()) if d]


def euler_characteristic(H: TriplyGradedHomology) -> dict:
    """{(q, a_doubled): sum_t sign * dim} with sign = (-1)^((t - a) / 2).

    Half-integer a and t always come together (a + t is an integer), so the
    substitution t -> -1 is made on T A^-1; the half unit left over in A is
    a global monomial absorbed by the unknot calibration.
    """
    out: dict = {}
    for (q, a, t), d in H.dims.items():
        if (t - a) % 2:
            raise ValueError("a + t is not an integer")
        sgn = -1 if ((t - a) // 2) % 2 else 1
        out[(q, a)] = out.get((q, a), 0) + sgn * d
    return {k: v for k, v in sorted(out.items()) if v}


def _operator_fn(eng: HomologyEngine, op):
    kind = op[0]
    if kind == "x":
        var = eng.bic.vs.index(op[1])
        return (lambda t, e: eng.x_image(t, e, var)), 2
    if kind == "L":
        m = op[1]
        return (lambda t, e: eng.witt_image(t, e, m)), 2 * m
    raise ValueError(f"unknown operator {op!r}")


def induced_operator(H: TriplyGradedHomology, op, check: bool = True) -> dict:
    """Induced matrices per graded piece.

    ``op`` is ("x", name) for multiplication by a left variable or ("L", m)
    for the Witt generator.  Returns {(q, a, t): dense matrix as list of rows}
    mapping the piece at (q, a, t) to the one at q + shift.
    """
    eng = H.engine
    fn, dq = _operator_fn(eng, op)
    t0 = eng.bic.t_shift_doubled
    out = {}
    for (q, a, tt), d in sorted(H.dims.items()):
        t = tt - t0
        if check and not eng.check_chain_map(t, q, a, fn, dq):
            raise ValueError(f"{op!r} is not a chain map on block {(q, a, tt)}")
        cols = eng.operator_block(t, q, a, fn, dq)
        rows = len(eng.hhh(t, q + dq, a))
        out[(q, a, tt)] = [[cols[c].get(r, Fraction(0)) for c in range(d)] for r in range(rows)]
    H.operators[op] = out
    return out


def operator_piece(H: TriplyGradedHomology, op, q: int, a: int, t: int) -> list:
    """Induced matrix of op from the piece (q, a, t) to (q + shift, a, t).

    Works outside the reported window too; t is the absolute doubled degree.
    """
    eng = H.engine
    fn, dq = _operator_fn(eng, op)
    tl = t - eng.bic.t_shift_doubled
    d = len(eng.hhh(tl, q, a))
    cols = eng.operator_block(tl, q, a, fn, dq)
    rows = len(eng.hhh(tl, q + dq, a))
    return [[cols[c].get(r, Fraction(0)) for c in range(d)] for r in range(rows)]


def _compose_sparse(eng, t, vecs, fn, src, tgt):
    return [eng.apply(t, v, fn, src, tgt) for v in vecs]


def check_block_exactness(H: TriplyGradedHomology, q: int) -> list:
    """dK^2 = 0, dT^2 = 0 and dT dK = dK dT on every block of degree q."""
    eng = H.engine
    problems = []
    for a in eng.a_values():
        for t in eng.bic.positions():
            src = eng.space(t, q, a)
            unit = [{k: Fraction(1)} for k in range(len(src))]
            k1 = eng.space(t, q, a + 2)
            k2 = eng.space(t, q, a + 4)
            dk = _compose_sparse(eng, t, unit, eng.dk_image, src, k1)
            if any(_compose_sparse(eng, t, dk, eng.dk_image, k1, k2)):
                problems.append(f"dK^2 != 0 at {(t, q, a)}")
            if t + 2 not in eng.bic.columns:
                continue
            t1 = eng.space(t + 2, q, a)
            dt = _compose_sparse(eng, t, unit, eng.dt_image, src, t1)
            if t + 4 in eng.bic.columns:
                t2 = eng.space(t + 4, q, a)
                if any(_compose_sparse(eng, t + 2, dt, eng.dt_image, t1, t2)):
                    problems.append(f"dT^2 != 0 at {(t, q, a)}")
            both = eng.space(t + 2, q, a + 2)
            lhs = _compose_sparse(eng, t + 2, dt, eng.dk_image, t1, both)
            rhs = _compose_sparse(eng, t, dk, eng.dt_image, k1, both)
            if lhs != rhs:
                problems.append(f"dT dK != dK dT at {(t, q, a)}")
    return problems


def _has_q(p, d: int) -> bool:
    return d >= 0 and d % 2 == 0 and p.homogeneous_part(d // 2) == p


def shift_audit(bic: Bicomplex, q_max: int, witt_max: int = 3) -> dict:
    """Check that both differentials have q-degree 0 and report padding.

    Every entry of a Koszul matrix P_j (column i, row k) must have q-degree
    qdeg(i) + 2 - qdeg(k) and every t-differential entry qdeg(i) - qdeg(k),
    module shifts included.  Since nothing lowers or raises q, dimensions at
    q <= q_max need no padding; operators read blocks up to q_max + 2 M.
    """
    ok = True
    for t in bic.positions():
        for K in bic.columns[t]:
            for P in K.P:
                for k in range(K.rank):
                    for i in range(K.rank):
                        p = P[k][i]
                        if p.is_zero():
                            continue
                        if not _has_q(p, K.base.qdeg(i) + 2 - K.base.qdeg(k)):
                            ok = False
        for (j, i), F in bic.dt.get(t, {}).items():
            S, T = bic.columns[t][i].base, bic.columns[t + 2][j].base
            for k in range(T.rank):
                for c in range(S.rank):
                    p = F[k][c]
                    if not p.is_zero() and not _has_q(p, S.qdeg(c) - T.qdeg(k)):
                        ok = False
    return {"differentials_q_degree_zero": ok, "q_max": q_max,
            "dims_padding": 0, "operator_padding": 2 * max(witt_max, 1)}
