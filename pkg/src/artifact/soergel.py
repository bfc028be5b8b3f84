"""Diagonal and Soergel bimodules, the chi maps, and the 1<->3 transposition.

The bimodule S_m at strands i..i+m-1 is Q[x, y] modulo
e_k(y_block) = e_k(x_block), k = 1..m, with y_j = x_j outside the block.  It
is free over Q[x] with the staircase basis y_{i+1}^{a_2} ... y_{i+m-1}^{a_m},
a_r <= r-1, obtained by rewriting with

    g_r = sum_j (-1)^j e_j(x_block) h_{r-j}(y_r, ..., y_m),   leading term y_r^r.

The Witt action is the standard one on x and y (so L_m 1 = 0) and on a basis
word f(y) it is L_m f reduced to the staircase.  For the rank-2 bimodule B
this gives the closed form

    L_m ybar = pi_m(x_i, x_{i+1}) ybar - x_i x_{i+1} pi_{m-1}(x_i, x_{i+1}),

with pi_{-1} = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import prod

from . import polymat as pm
from .equibimod import (
    BimoduleHom,
    EquivariantBimodule,
    connection_shift,
    cyclic_hom,
    DEFAULT_M_MAX,
)
from .qpoly import Polynomial, VarSet, apply_witt, substitute
from .witt import ConnectionMatrixSeq, FlatSequence

__all__ = [
    "StrandContext",
    "diagonal",
    "soergel_block",
    "elementary",
    "soergel3",
    "chi_minus",
    "chi_plus",
    "chi_plus_symmetric",
    "pi_shift",
    "transpose13",
    "transpose13_hom",
    "cyclic_iso",
    "elementary_closed_form",
]


@dataclass(frozen=True)
class StrandContext:
    n: int
    left: tuple = ()
    right: tuple = ()
    M_max: int = DEFAULT_M_MAX

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one strand")
        if not self.left:
            object.__setattr__(self, "left", tuple(f"x{i}" for i in range(1, self.n + 1)))
        if not self.right:
            object.__setattr__(self, "right", tuple(f"y{i}" for i in range(1, self.n + 1)))
        if len(self.left) != self.n or len(self.right) != self.n:
            raise ValueError("variable name lists must have n entries")

    @property
    def vs(self) -> VarSet:
        return VarSet(self.left)

    def x(self, i: int) -> Polynomial:
        return Polynomial.var(self.vs, self.left[i - 1])


def _elem_sym(vars_, k, vs):
    out = Polynomial.zero(vs)
    for combo in combinations(vars_, k):
        out = out + prod((Polynomial.var(vs, v) for v in combo), start=Polynomial.const(vs, 1))
    return out


def _complete_sym(vars_, k, vs):
    out = Polynomial.zero(vs)
    for combo in product(range(k + 1), repeat=len(vars_)):
        if sum(combo) == k:
            t = Polynomial.const(vs, 1)
            for v, a in zip(vars_, combo):
                t = t * Polynomial.var(vs, v) ** a
            out = out + t
    return out


def diagonal(ctx: StrandContext) -> EquivariantBimodule:
    vs = ctx.vs
    Y = {ctx.right[j]: ((ctx.x(j + 1),),) for j in range(ctx.n)}
    D = ConnectionMatrixSeq(1, lambda m: pm.zeros(vs, 1, 1), ctx.M_max)
    words = (Polynomial.const(VarSet(ctx.right), 1),)
    return EquivariantBimodule(vs, ctx.right, 1, (0,), Y, D, 0, 0, "D",
                               {"words": words, "block": None})


class _StaircaseReducer:
    """Rewrite polynomials in x and block y's to staircase normal form."""

    def __init__(self, ctx: StrandContext, i: int, m: int):
        self.ctx = ctx
        self.xb = list(ctx.left[i - 1:i - 1 + m])
        self.yb = list(ctx.right[i - 1:i - 1 + m])
        self.xy = VarSet(list(ctx.left) + list(ctx.right))
        self.m = m
        xy = self.xy
        self.rel = []
        for r in range(1, m + 1):
            g = Polynomial.zero(xy)
            for j in range(r + 1):
                g = g + _elem_sym(self.xb, j, xy) * _complete_sym(self.yb[r - 1:], r - j, xy) * (-1) ** j
            self.rel.append(g)
        self.ypos = [xy.index(v) for v in self.yb]
        self.outside = {ctx.right[j]: ctx.left[j] for j in range(ctx.n)
                        if ctx.right[j] not in self.yb}
        self.staircase = sorted(
            (e for e in product(*[range(r) for r in range(2, m + 1)])),
            key=lambda e: tuple(reversed(e)),
        )
        self.index = {e: k for k, e in enumerate(self.staircase)}

    def word(self, e) -> Polynomial:
        t = Polynomial.const(self.xy, 1)
        for v, a in zip(self.yb[1:], e):
            t = t * Polynomial.var(self.xy, v) ** a
        return t

    def reduce(self, p: Polynomial) -> Polynomial:
        p = p.to_varset(self.xy)
        if self.outside:
            p = substitute(p, {y: Polynomial.var(self.xy, x) for y, x in self.outside.items()}, self.xy)
        terms = dict(p.terms)
        out = {}
        while terms:
            e, c = terms.popitem()
            hit = None
            for r in range(1, self.m + 1):
                if e[self.ypos[r - 1]] >= r:
                    hit = r
                    break
            if hit is None:
                out[e] = out.get(e, 0) + c
                continue
            pos = self.ypos[hit - 1]
            base = list(e)
            base[pos] -= hit
            # y_r^r = y_r^r - g_r on this term
            for ge, gc in self.rel[hit - 1].terms.items():
                ne = tuple(a + b for a, b in zip(base, ge))
                if ne == e:
                    continue
                s = terms.get(ne, 0) - c * gc
                if s:
                    terms[ne] = s
                else:
                    terms.pop(ne, None)
        return Polynomial(self.xy, {e: c for e, c in out.items() if c})

    def coords(self, p: Polynomial) -> list:
        """Coordinates over Q[x] of the class of p in the staircase basis."""
        red = self.reduce(p)
        vs = self.ctx.vs
        nx = len(vs)
        cols = [dict() for _ in self.staircase]
        for e, c in red.terms.items():
            ye = tuple(e[self.ypos[r]] for r in range(1, self.m))
            k = self.index[ye]
            xe = e[:nx]
            cols[k][xe] = cols[k].get(xe, 0) + c
        return [Polynomial(vs, d) for d in cols]


def soergel_block(ctx: StrandContext, i: int, m: int, label: str | None = None) -> EquivariantBimodule:
    """S_m on strands i..i+m-1, diagonal on the others."""
    if m < 2 or i < 1 or i + m - 1 > ctx.n:
        raise ValueError(f"block of size {m} at {i} does not fit {ctx.n} strands")
    red = _StaircaseReducer(ctx, i, m)
    vs = ctx.vs
    basis = [red.word(e) for e in red.staircase]
    k = len(basis)

    def matrix_of(images):
        cols = [red.coords(p) for p in images]
        return tuple(tuple(cols[c][r] for c in range(k)) for r in range(k))

    Y = {}
    for j, yv in enumerate(ctx.right):
        if yv in red.yb:
            yy = Polynomial.var(red.xy, yv)
            Y[yv] = matrix_of([b * yy for b in basis])
        else:
            Y[yv] = pm.identity(vs, k, ctx.x(j + 1))

    def entries(mm):
        return matrix_of([apply_witt(mm, b, red.yb) for b in basis])

    D = ConnectionMatrixSeq(k, entries, ctx.M_max)
    qdeg = tuple(2 * sum(e) for e in red.staircase)
    rvs = VarSet(ctx.right)
    words = tuple(b.to_varset(rvs) for b in basis)
    name = label or (f"B{i}" if m == 2 else f"S{m}@{i}")
    return EquivariantBimodule(vs, ctx.right, k, qdeg, Y, D, 0, 0, name,
                               {"words": words, "block": (i, m), "reducer": red})


def elementary(ctx: StrandContext, i: int) -> EquivariantBimodule:
    """The rank-2 bimodule B_i with basis {1, class of y_{i+1}}."""
    if not 1 <= i <= ctx.n - 1:
        raise ValueError(f"elementary position {i} out of range for {ctx.n} strands")
    return soergel_block(ctx, i, 2)


def soergel3(ctx: StrandContext) -> EquivariantBimodule:
    if ctx.n != 3:
        raise ValueError("soergel3 needs a 3-strand context")
    return soergel_block(ctx, 1, 3, label="S3")


def elementary_closed_form(ctx: StrandContext, i: int, m: int) -> pm.Matrix:
    """D_m of B_i from the closed form in the module docstring."""
    vs = ctx.vs
    a, b = ctx.left[i - 1], ctx.left[i]
    pi = FlatSequence.pi(vs, a, b, max(m, 1))
    z = Polynomial.zero(vs)
    lower = pi.term(m - 1) if m >= 1 else z
    return ((z, -ctx.x(i) * ctx.x(i + 1) * lower), (z, pi.term(m)))


def pi_shift(ctx: StrandContext, i: int, sign: int = 1) -> FlatSequence:
    """The sequence sign * pi(x_i, x_{i+1})."""
    s = FlatSequence.pi(ctx.vs, ctx.left[i - 1], ctx.left[i], max(ctx.M_max, 6))
    return s if sign > 0 else -s


def chi_minus(ctx: StrandContext, i: int, source: EquivariantBimodule | None = None,
              target: EquivariantBimodule | None = None) -> BimoduleHom:
    """B_i -> D, sending 1 to 1 (and ybar to x_{i+1})."""
    src = source or elementary(ctx, i)
    tgt = target or diagonal(ctx)
    mat = ((Polynomial.const(ctx.vs, 1), ctx.x(i + 1)),)
    return BimoduleHom(src, tgt, mat, 0, 0, f"chi-{i}")


def chi_plus(ctx: StrandContext, i: int, source: EquivariantBimodule | None = None,
             target: EquivariantBimodule | None = None) -> BimoduleHom:
    """D -> B_i<-pi_i>, sending 1 to the class of y_{i+1} - x_i; q-degree 2.

    Equivariance forces the connection -pi(x_i, x_{i+1}) on the target: in B_i
    one has L_m (y_{i+1} - x_i) = pi_m (y_{i+1} - x_i).
    """
    src = source or diagonal(ctx)
    tgt = target or connection_shift(elementary(ctx, i), pi_shift(ctx, i, -1), f"B{i}<-pi>")
    mat = ((-ctx.x(i),), (Polynomial.const(ctx.vs, 1),))
    return BimoduleHom(src, tgt, mat, 2, 0, f"chi+{i}")


def chi_plus_symmetric(ctx: StrandContext, i: int) -> BimoduleHom:
    """chi+ from the symmetric formula (y_{i+1} - y_i + x_{i+1} - x_i)/2."""
    B = elementary(ctx, i)
    red = B.extra["reducer"]
    xy = red.xy
    v = lambda nm: Polynomial.var(xy, nm)
    p = (v(ctx.right[i]) - v(ctx.right[i - 1]) + v(ctx.left[i]) - v(ctx.left[i - 1])) * Fraction(1, 2)
    col = red.coords(p)
    tgt = connection_shift(B, pi_shift(ctx, i, -1), f"B{i}<-pi>")
    return BimoduleHom(diagonal(ctx), tgt, tuple((c,) for c in col), 2, 0, f"chi+{i}(sym)")


_SWAP = {1: 3, 3: 1}


def _swap_name(nm: str) -> str:
    # trailing strand index 1 <-> 3
    head = nm.rstrip("0123456789")
    idx = nm[len(head):]
    if idx and int(idx) in _SWAP:
        return f"{head}{_SWAP[int(idx)]}"
    return nm


def _swap_poly(p: Polynomial) -> Polynomial:
    vs = p.vs
    perm = [vs.index(_swap_name(nm)) for nm in vs.names]
    out = {}
    for e, c in p.terms.items():
        e2 = [0] * len(e)
        for i, k in enumerate(e):
            e2[perm[i]] = k
        out[tuple(e2)] = c
    return Polynomial(vs, out)


def _swap_matrix(A):
    return pm.map_entries(A, _swap_poly)


def transpose13(M: EquivariantBimodule) -> EquivariantBimodule:
    """Transport all data along x1<->x3, y1<->y3 (and the same in middle layers)."""
    if len(M.left_vars) != 3:
        raise ValueError("transpose13 needs a 3-strand bimodule")
    Y = {nm: _swap_matrix(M.Y[_swap_name(nm)]) for nm in M.right_vars}
    old = M.D
    D = ConnectionMatrixSeq(M.rank, lambda m: _swap_matrix(old[m]), M.M_max)
    extra = {}
    if "middle" in M.extra:
        extra["middle"] = {nm: _swap_matrix(M.extra["middle"][_swap_name(nm)])
                           for nm in M.extra["middle"]}
    if "nfactors" in M.extra:
        extra["nfactors"] = M.extra["nfactors"]
    if M.extra.get("words") is not None:
        extra["words"] = tuple(_swap_poly(w) for w in M.extra["words"])
    return EquivariantBimodule(M.left_vars, M.right_vars, M.rank, M.basis_qdeg, Y, D,
                               M.a_shift_doubled, M.q_shift, f"T({M.label})", extra)


def transpose13_hom(f: BimoduleHom, source=None, target=None) -> BimoduleHom:
    return BimoduleHom(source or transpose13(f.source), target or transpose13(f.target),
                       _swap_matrix(f.matrix), f.q_shift, f.a_shift_doubled, f"T({f.label})")


def cyclic_iso(M: EquivariantBimodule, N: EquivariantBimodule) -> BimoduleHom:
    """Generator-preserving map M -> N built from M's basis words."""
    return cyclic_hom(M, N, 0, f"{M.label}~{N.label}")
