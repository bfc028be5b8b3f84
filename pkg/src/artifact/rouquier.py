"""Complexes of equivariant bimodules and the braid bracket.

A complex stores, at each doubled t-position, a list of summands (bimodules
with their own q/a shifts) and, between consecutive positions, a block matrix
of homs.  Blocks are keyed ``(target_index, source_index)``.  Positions step by
2 in doubled units; the global (q, a, t) shifts are kept separately, also
doubled for a and t.

Letter conventions:

    <s_i>    = (AT)^(-1/2) Q^2  [ Delta --chi_+--> Q^-2 T B_i<-pi_i> ]
    <s_i^-1> = (AT)^(1/2)  Q^-2 [ T^-1 B_i --chi_--> Delta ]

The tensor product of complexes uses the sign (-1)^p on the second
differential, p being the (undoubled, local) position of the first factor.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import polymat as pm
from .equibimod import (BimoduleHom, EquivariantBimodule, check_hom, connection_shift, cyclic_hom,
                        direct_sum, identity_hom, q_shift, tensor_hom, tensor_middle)
from .soergel import (StrandContext, chi_minus, chi_plus, diagonal, elementary, pi_shift,
                      soergel3, transpose13, transpose13_hom)

__all__ = [
    "BraidWord",
    "BimoduleComplex",
    "bracket_letter",
    "bracket",
    "tensor_complex",
    "transpose13_complex",
    "check_complex",
    "r3_reduced_complex",
    "parse_braid",
    "unit_complex",
    "check_chain_iso",
    "r3_symmetry_maps",
]


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple

    def __post_init__(self):
        for s in self.letters:
            if s == 0 or abs(s) > self.n - 1:
                raise ValueError(f"letter {s} invalid on {self.n} strands")

    def permutation(self) -> tuple:
        """Image of each strand (0-based) after reading the word left to right."""
        perm = list(range(self.n))
        for s in self.letters:
            i = abs(s) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        # perm[position] = strand now at position; invert to strand -> position
        out = [0] * self.n
        for pos, strand in enumerate(perm):
            out[strand] = pos
        return tuple(out)

    def components(self) -> list:
        """Cycles of the permutation, as sorted lists of 1-based strands."""
        perm = self.permutation()
        seen, cycles = set(), []
        for s in range(self.n):
            if s in seen:
                continue
            cyc, k = [], s
            while k not in seen:
                seen.add(k)
                cyc.append(k + 1)
                k = perm[k]
            cycles.append(sorted(cyc))
        return cycles

    def writhe(self) -> int:
        return sum(1 if s > 0 else -1 for s in self.letters)

    def mirror(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-s for s in self.letters))

    def __str__(self) -> str:
        return ",".join(str(s) for s in self.letters)


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse comma- or space-separated signed integers."""
    toks = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    try:
        letters = tuple(int(t) for t in toks)
    except ValueError as exc:
        raise ValueError(f"cannot parse braid word {text!r}") from exc
    n = max((abs(s) for s in letters), default=0) + 1
    if strands is not None:
        if strands < n:
            raise ValueError(f"word needs at least {n} strands, got {strands}")
        n = strands
    return BraidWord(n, letters)


@dataclass
class BimoduleComplex:
    ctx: StrandContext
    terms: dict
    diffs: dict = field(default_factory=dict)
    q_shift: int = 0
    a_shift_doubled: int = 0
    t_shift_doubled: int = 0
    label: str = ""

    def positions(self) -> list:
        return sorted(self.terms)

    def block(self, t: int, j: int, i: int):
        return self.diffs.get(t, {}).get((j, i))

    def module_at(self, t: int) -> EquivariantBimodule:
        """All summands at position t as one bimodule (direct sum)."""
        parts = self.terms[t]
        out = parts[0]
        for p in parts[1:]:
            out = direct_sum(out, p)
        return out

    def differential_matrix(self, t: int) -> pm.Matrix:
        """Differential from position t to t+2 as one polynomial matrix."""
        src, tgt = self.terms[t], self.terms.get(t + 2, [])
        vs = self.ctx.vs
        rows = sum(m.rank for m in tgt)
        cols = sum(m.rank for m in src)
        out = [list(r) for r in pm.zeros(vs, rows, cols)]
        r0 = 0
        for j, T in enumerate(tgt):
            c0 = 0
            for i, S in enumerate(src):
                f = self.block(t, j, i)
                if f is not None:
                    for a in range(T.rank):
                        for b in range(S.rank):
                            out[r0 + a][c0 + b] = f.matrix[a][b]
                c0 += S.rank
            r0 += T.rank
        return tuple(tuple(r) for r in out)

    def summary(self) -> list:
        return [(t, [m.label for m in self.terms[t]]) for t in self.positions()]

    def __repr__(self) -> str:
        return f"BimoduleComplex({self.label}, {self.summary()})"


def check_complex(C: BimoduleComplex, M_max: int | None = None, homs: bool = True) -> list:
    """Problems found: d o d != 0 or a block failing check_hom."""
    problems = []
    for t in C.positions():
        if homs:
            for (j, i), f in C.diffs.get(t, {}).items():
                for p in check_hom(f, M_max):
                    problems.append(f"t={t} block ({j},{i}): {p}")
        if t + 4 not in C.terms:
            continue
        d1 = C.differential_matrix(t)
        d2 = C.differential_matrix(t + 2)
        if not pm.is_zero(pm.mul(d2, d1)):
            problems.append(f"d o d != 0 at t={t}")
    return problems


def bracket_letter(ctx: StrandContext, letter: int) -> BimoduleComplex:
    i = abs(letter)
    if not 1 <= i <= ctx.n - 1:
        raise ValueError(f"letter {letter} invalid on {ctx.n} strands")
    D = diagonal(ctx)
    B = elementary(ctx, i)
    if letter > 0:
        Bs = q_shift(connection_shift(B, pi_shift(ctx, i, -1), label=f"B{i}<-pi>"), -2)
        d = chi_plus(ctx, i, source=D, target=Bs)
        d = BimoduleHom(D, Bs, d.matrix, 0, 0, "chi+")
        return BimoduleComplex(ctx, {0: [D], 2: [Bs]}, {0: {(0, 0): d}}, 2, -1, -1, f"<{letter}>")
    d = chi_minus(ctx, i, source=B, target=D)
    return BimoduleComplex(ctx, {-2: [B], 0: [D]}, {-2: {(0, 0): d}}, -2, 1, 1, f"<{letter}>")


def tensor_complex(C: BimoduleComplex, E: BimoduleComplex) -> BimoduleComplex:
    """Total complex of C tensor_{middle} E, summands ordered (p, i, r, k)."""
    if C.ctx.n != E.ctx.n:
        raise ValueError("complexes over different strand counts")
    index = {}
    terms: dict = {}
    for p in C.positions():
        for i, M in enumerate(C.terms[p]):
            for r in E.positions():
                for k, N in enumerate(E.terms[r]):
                    lst = terms.setdefault(p + r, [])
                    index[(p, i, r, k)] = len(lst)
                    lst.append(tensor_middle(M, N))
    diffs: dict = {}

    def put(t, j, i, f):
        blk = diffs.setdefault(t, {})
        if (j, i) in blk:
            old = blk[(j, i)]
            f = BimoduleHom(old.source, old.target, pm.add(old.matrix, f.matrix),
                            old.q_shift, old.a_shift_doubled, old.label)
        blk[(j, i)] = f

    for (p, i, r, k), s in index.items():
        t = p + r
        src = terms[t][s]
        M, N = C.terms[p][i], E.terms[r][k]
        for (j, i2), f in C.diffs.get(p, {}).items():
            if i2 != i:
                continue
            tgt = terms[t + 2][index[(p + 2, j, r, k)]]
            h = tensor_hom(f, identity_hom(N), source=src, target=tgt)
            put(t, index[(p + 2, j, r, k)], s, h)
        sign = -1 if (p // 2) % 2 else 1
        for (l, k2), g in E.diffs.get(r, {}).items():
            if k2 != k:
                continue
            tgt = terms[t + 2][index[(p, i, r + 2, l)]]
            h = tensor_hom(identity_hom(M), g, source=src, target=tgt)
            if sign < 0:
                h = BimoduleHom(h.source, h.target, pm.neg(h.matrix), h.q_shift,
                                h.a_shift_doubled, "-" + h.label)
            put(t, index[(p, i, r + 2, l)], s, h)
    return BimoduleComplex(C.ctx, terms, diffs, C.q_shift + E.q_shift,
                           C.a_shift_doubled + E.a_shift_doubled,
                           C.t_shift_doubled + E.t_shift_doubled, f"{C.label}{E.label}")


def unit_complex(ctx: StrandContext) -> BimoduleComplex:
    return BimoduleComplex(ctx, {0: [diagonal(ctx)]}, {}, 0, 0, 0, "<>")


def bracket(word: BraidWord, M_max: int = 4) -> BimoduleComplex:
    ctx = StrandContext(word.n, M_max=M_max)
    if not word.letters:
        return unit_complex(ctx)
    out = bracket_letter(ctx, word.letters[0])
    for s in word.letters[1:]:
        out = tensor_complex(out, bracket_letter(ctx, s))
    return out


def transpose13_complex(C: BimoduleComplex) -> BimoduleComplex:
    if C.ctx.n != 3:
        raise ValueError("transpose13 needs a 3-strand complex")
    terms = {t: [transpose13(M) for M in ms] for t, ms in C.terms.items()}
    diffs = {}
    for t, blk in C.diffs.items():
        diffs[t] = {(j, i): transpose13_hom(f, terms[t][i], terms[t + 2][j])
                    for (j, i), f in blk.items()}
    return BimoduleComplex(C.ctx, terms, diffs, C.q_shift, C.a_shift_doubled,
                           C.t_shift_doubled, f"T({C.label})")


def r3_reduced_complex(ctx: StrandContext) -> BimoduleComplex:
    """Reduced form of the bracket of s1^-1 s2^-1 s1^-1.

    S3 -> B1B2 + B2B1 -> B1 + B2 -> Delta, all maps 1 (x) ... (x) 1 up to the
    marked signs.  Shifts are those of the three letters.
    """
    if ctx.n != 3:
        raise ValueError("needs 3 strands")
    D = diagonal(ctx)
    B1, B2 = elementary(ctx, 1), elementary(ctx, 2)
    S = soergel3(ctx)
    B12, B21 = tensor_middle(B1, B2), tensor_middle(B2, B1)
    terms = {-6: [S], -4: [B12, B21], -2: [B1, B2], 0: [D]}

    def neg(f):
        return BimoduleHom(f.source, f.target, pm.neg(f.matrix), f.q_shift, 0, "-" + f.label)

    def one_chi(left, right, which):
        # (1 (x) chi_) or (chi_ (x) 1) on a two-factor product
        if which == "right":
            f = tensor_hom(identity_hom(left), chi_minus(ctx, _index(right), source=right, target=D))
        else:
            f = tensor_hom(chi_minus(ctx, _index(left), source=left, target=D), identity_hom(right))
        return f

    diffs = {
        -6: {(0, 0): cyclic_hom(S, B12, label="1"), (1, 0): cyclic_hom(S, B21, label="1")},
        -4: {},
        -2: {(0, 0): chi_minus(ctx, 1, source=B1, target=D),
             (0, 1): chi_minus(ctx, 2, source=B2, target=D)},
    }
    f = one_chi(B1, B2, "right")          # B1B2 -> B1 (x) Delta = B1
    diffs[-4][(0, 0)] = BimoduleHom(B12, B1, f.matrix, 0, 0, "1*chi-")
    f = one_chi(B1, B2, "left")           # B1B2 -> Delta (x) B2 = B2
    diffs[-4][(1, 0)] = neg(BimoduleHom(B12, B2, f.matrix, 0, 0, "chi-*1"))
    f = one_chi(B2, B1, "right")
    diffs[-4][(1, 1)] = BimoduleHom(B21, B2, f.matrix, 0, 0, "1*chi-")
    f = one_chi(B2, B1, "left")
    diffs[-4][(0, 1)] = neg(BimoduleHom(B21, B1, f.matrix, 0, 0, "chi-*1"))
    return BimoduleComplex(ctx, terms, diffs, -6, 3, 3, "D(s1'-s2'-s1')")


def _index(B: EquivariantBimodule) -> int:
    return int(B.extra["block"][0])


def check_chain_iso(C: BimoduleComplex, E: BimoduleComplex, maps: dict, M_max: int | None = None) -> list:
    """Problems with a termwise map C -> E.

    ``maps[t]`` is {(j, i): BimoduleHom} from summand i of C to summand j of E.
    Checks every block with check_hom, invertibility of each position's
    matrix, and phi d_C = d_E phi.
    """
    problems = []
    vs = C.ctx.vs

    def assemble(t):
        src, tgt = C.terms[t], E.terms[t]
        rows = [list(r) for r in pm.zeros(vs, sum(m.rank for m in tgt), sum(m.rank for m in src))]
        roff = [sum(m.rank for m in tgt[:j]) for j in range(len(tgt))]
        coff = [sum(m.rank for m in src[:i]) for i in range(len(src))]
        for (j, i), f in maps.get(t, {}).items():
            for a in range(tgt[j].rank):
                for b in range(src[i].rank):
                    rows[roff[j] + a][coff[i] + b] = f.matrix[a][b]
        return tuple(tuple(r) for r in rows)

    if C.positions() != E.positions():
        return ["different t-positions"]
    if (C.q_shift, C.a_shift_doubled, C.t_shift_doubled) != (E.q_shift, E.a_shift_doubled,
                                                              E.t_shift_doubled):
        problems.append("global shifts differ")
    phis = {}
    for t in C.positions():
        for (j, i), f in maps.get(t, {}).items():
            problems += [f"t={t} ({j},{i}): {p}" for p in check_hom(f, M_max)]
        phis[t] = assemble(t)
        try:
            pm.unimodular_inverse(phis[t])
        except (ValueError, ZeroDivisionError):
            problems.append(f"t={t}: map is not invertible by constant pivots")
    for t in C.positions():
        if t + 2 not in C.terms:
            continue
        lhs = pm.mul(phis[t + 2], C.differential_matrix(t))
        rhs = pm.mul(E.differential_matrix(t), phis[t])
        if lhs != rhs:
            problems.append(f"square at t={t} does not commute")
    return problems


def r3_symmetry_maps(D: BimoduleComplex, TD: BimoduleComplex) -> dict:
    """Termwise isomorphisms T(D) -> D for the reduced complex.

    T(S3) ~ S3, T(B1B2) ~ B2B1, T(B2B1) ~ B1B2, T(B1) ~ B2, T(B2) ~ B1 and
    T(Delta) = Delta, each sending generator to generator.
    """
    from .soergel import cyclic_iso
    swap = {-6: {0: 0}, -4: {0: 1, 1: 0}, -2: {0: 1, 1: 0}, 0: {0: 0}}
    return {t: {(j, i): cyclic_iso(TD.terms[t][i], D.terms[t][j]) for i, j in perm.items()}
            for t, perm in swap.items()}
