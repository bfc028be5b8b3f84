"""Small dense matrices with Polynomial entries.

Matrices are tuples of row tuples.  Only what the bimodule code needs.
"""
from __future__ import annotations

from fractions import Fraction

from .qpoly import Polynomial, VarSet, apply_witt

Matrix = tuple


def zeros(vs: VarSet, rows: int, cols: int) -> Matrix:
    z = Polynomial.zero(vs)
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def identity(vs: VarSet, n: int, scale=1) -> Matrix:
    z = Polynomial.zero(vs)
    if isinstance(scale, Polynomial):
        one = scale
    else:
        one = Polynomial.const(vs, scale)
    return tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))


def from_rows(vs: VarSet, rows) -> Matrix:
    def conv(v):
        if isinstance(v, Polynomial):
            return v.to_varset(vs)
        return Polynomial.const(vs, Fraction(v))
    return tuple(tuple(conv(v) for v in row) for row in rows)


def shape(a: Matrix):
    return len(a), (len(a[0]) if a else 0)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in a)


def scale(a: Matrix, s) -> Matrix:
    return tuple(tuple(x * s for x in r) for r in a)


def mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    if n == 0 or m == 0:
        return tuple(tuple() for _ in range(n))
    vs = (a[0][0] if k else b[0][0]).vs if (k or m) else None
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = Polynomial.zero(vs)
            for t in range(k):
                x = a[i][t]
                if x.terms:
                    y = b[t][j]
                    if y.terms:
                        acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def power(a: Matrix, k: int) -> Matrix:
    n = len(a)
    vs = a[0][0].vs
    out = identity(vs, n)
    for _ in range(k):
        out = mul(out, a)
    return out


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(mul(a, b), mul(b, a))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else a


def witt(m: int, a: Matrix, acting_vars) -> Matrix:
    return tuple(tuple(apply_witt(m, x, acting_vars) for x in r) for r in a)


def is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for r in a for x in r)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; index (i, j) -> i*len(b) + j."""
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = []
    for i in range(ra):
        for k in range(rb):
            out.append(tuple(a[i][j] * b[k][l] for j in range(ca) for l in range(cb)))
    return tuple(out)


def block_diag(vs: VarSet, *blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    m = sum(shape(b)[1] for b in blocks)
    rows = [list(r) for r in zeros(vs, n, m)]
    r0 = c0 = 0
    for b in blocks:
        br, bc = shape(b)
        for i in range(br):
            for j in range(bc):
                rows[r0 + i][c0 + j] = b[i][j]
        r0 += br
        c0 += bc
    return tuple(tuple(r) for r in rows)


def map_entries(a: Matrix, f) -> Matrix:
    return tuple(tuple(f(x) for x in r) for r in a)


def evaluate_at_matrices(p: Polynomial, mats: dict, coeff_map, n: int, vs: VarSet) -> Matrix:
    """Evaluate p at commuting matrices.

    ``mats`` maps some variables of p to n x n matrices over ``vs``; every other
    variable is sent through ``coeff_map`` (name -> Polynomial over vs) as a
    scalar.  Matrix powers are cached per call.
    """
    cache: dict = {}

    def pw(name, k):
        key = (name, k)
        if key not in cache:
            if k == 1:
                cache[key] = mats[name]
            else:
                cache[key] = mul(pw(name, k - 1), mats[name])
        return cache[key]

    out = zeros(vs, n, n)
    for e, c in p.terms.items():
        scal = Polynomial.const(vs, c)
        term = None
        for nm, k in zip(p.vs.names, e):
            if not k:
                continue
            if nm in mats:
                m = pw(nm, k)
                term = m if term is None else mul(term, m)
            else:
                scal = scal * (coeff_map(nm) ** k)
        if term is None:
            term = identity(vs, n, scal)
        else:
            term = scale(term, scal)
        out = add(out, term)
    return out


def to_str(a: Matrix):
    return [[str(x) for x in r] for r in a]


def unimodular_inverse(a: Matrix) -> Matrix:
    """Inverse of a square polynomial matrix by Gauss-Jordan with constant pivots.

    Raises ValueError when no constant pivot is available at some step (this
    covers non-invertible matrices and some invertible ones the simple
    elimination cannot handle).
    """
    n = len(a)
    vs = a[0][0].vs
    rows = [list(a[i]) + list(identity(vs, n)[i]) for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            p = rows[r][col]
            if p.is_constant() and not p.is_zero():
                piv = r
                break
        if piv is None:
            raise ValueError(f"no constant pivot in column {col}")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / Fraction(rows[col][col].constant_term())
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(r[n:]) for r in rows)
