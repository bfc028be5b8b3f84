"""Witt-equivariant bimodules in free presentation.

A bimodule over (left; right) variables is stored as a free left module
over Q[left] with basis e_0..e_{k-1}.  Coordinates are column vectors:

* right multiplication by y_j sends coordinates p to ``Y[y_j] @ p``, so the
  i-th column of ``Y[y_j]`` is e_i * y_j;
* the Witt generator L_m acts by ``p -> L_m(p) + D_m @ p`` where L_m
  differentiates the left variables, so the i-th column of ``D_m`` is
  L_m e_i.

In these coordinates the compatibility of L_m with the right action reads
``L_m(Y) + [D_m, Y] = Y^(m+1)`` and the representation condition is the
vanishing of the matrix curvature of the transposed sequence D_m^T, which is
the matrix of L_m on basis vectors written row by row.

A homomorphism is a target-rank x source-rank matrix F (column i = image of
e_i).  It is Witt-equivariant iff ``L_m(F) + D'_m F - F D_m = 0``.

Right variables are matched by position when tensoring, so every bimodule of
an n-strand context can use the same names x1..xn / y1..yn.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import combinations

from . import polymat as pm
from .qpoly import Polynomial, VarSet, parse
from .witt import ConnectionMatrixSeq, FlatSequence, curvature_matrix, curvature_scalar

__all__ = [
    "EquivariantBimodule",
    "BimoduleHom",
    "check_bimodule",
    "check_hom",
    "connection_shift",
    "tensor_middle",
    "tensor_hom",
    "direct_sum",
    "q_shift",
    "a_shift",
    "q_rank",
    "change_basis",
    "cyclic_hom",
    "operator_matrix",
    "word_vector",
    "action_matrices",
    "middle_name",
    "compose",
    "identity_hom",
    "to_json",
    "DEFAULT_M_MAX",
]

DEFAULT_M_MAX = 4


@dataclass
class EquivariantBimodule:
    left_vars: VarSet
    right_vars: tuple
    rank: int
    basis_qdeg: tuple
    Y: dict
    D: ConnectionMatrixSeq
    a_shift_doubled: int = 0
    q_shift: int = 0
    label: str = ""
    extra: dict = field(default_factory=dict, repr=False)

    @property
    def M_max(self) -> int:
        return self.D.M_max

    def qdeg(self, i: int) -> int:
        """Total q-degree of basis vector i (module shift included)."""
        return self.basis_qdeg[i] + self.q_shift

    def right_matrix(self, j: int) -> pm.Matrix:
        return self.Y[self.right_vars[j]]

    def __repr__(self) -> str:
        return (f"EquivariantBimodule({self.label or '?'}, rank={self.rank}, "
                f"q_shift={self.q_shift}, a2={self.a_shift_doubled})")


@dataclass
class BimoduleHom:
    source: EquivariantBimodule
    target: EquivariantBimodule
    matrix: pm.Matrix
    q_shift: int = 0
    a_shift_doubled: int = 0
    label: str = ""

    def __repr__(self) -> str:
        return f"BimoduleHom({self.label or '?'}: {self.source.label} -> {self.target.label})"


def q_rank(M: EquivariantBimodule) -> dict:
    """Graded rank as {exponent: multiplicity}."""
    out: dict = {}
    for i in range(M.rank):
        d = M.qdeg(i)
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def _left_names(M):
    return list(M.left_vars.names)


def check_bimodule(M: EquivariantBimodule, M_max: int | None = None) -> list:
    """Return a list of violated invariants (empty when M is valid)."""
    M_max = M.M_max if M_max is None else min(M_max, M.M_max)
    acting = _left_names(M)
    errs = []
    names = list(M.right_vars)
    for a, b in combinations(names, 2):
        if not pm.is_zero(pm.commutator(M.Y[a], M.Y[b])):
            errs.append(f"right actions of {a} and {b} do not commute")
    for nm in names:
        Y = M.Y[nm]
        for m in range(M_max + 1):
            lhs = pm.add(pm.witt(m, Y, acting), pm.commutator(M.D[m], Y))
            if lhs != pm.power(Y, m + 1):
                errs.append(f"Leibniz compatibility fails for {nm} at m={m}")
    DT = ConnectionMatrixSeq(M.rank, lambda m: pm.transpose(M.D[m]), M.M_max)
    for m in range(M_max + 1):
        for n in range(m + 1, M_max + 1 - m):
            if not pm.is_zero(curvature_matrix(DT, m, n, acting)):
                errs.append(f"connection curvature nonzero at (m,n)=({m},{n})")
    # grading: Y entries raise degree by 2, D_m entries by 2m
    for i in range(M.rank):
        for k in range(M.rank):
            want = M.basis_qdeg[i] - M.basis_qdeg[k]
            for nm in names:
                if not _has_qdeg(M.Y[nm][k][i], want + 2):
                    errs.append(f"{nm}-action entry ({k},{i}) has wrong q-degree")
            for m in range(M_max + 1):
                if not _has_qdeg(M.D[m][k][i], want + 2 * m):
                    errs.append(f"D_{m} entry ({k},{i}) has wrong q-degree")
    return errs


def _has_qdeg(p: Polynomial, d: int) -> bool:
    if p.is_zero():
        return True
    return p.q_degree() == d


def check_hom(f: BimoduleHom, M_max: int | None = None) -> list:
    src, tgt, F = f.source, f.target, f.matrix
    errs = []
    if pm.shape(F) != (tgt.rank, src.rank):
        return [f"matrix shape {pm.shape(F)} != ({tgt.rank},{src.rank})"]
    if len(src.right_vars) != len(tgt.right_vars) or src.left_vars != tgt.left_vars:
        return ["source and target live over different variables"]
    for j in range(len(src.right_vars)):
        if pm.mul(F, src.right_matrix(j)) != pm.mul(tgt.right_matrix(j), F):
            errs.append(f"does not intertwine right action of {src.right_vars[j]}")
    top = min(src.M_max, tgt.M_max)
    M_max = top if M_max is None else min(M_max, top)
    acting = _left_names(src)
    for m in range(M_max + 1):
        lhs = pm.add(pm.witt(m, F, acting), pm.sub(pm.mul(tgt.D[m], F), pm.mul(F, src.D[m])))
        if not pm.is_zero(lhs):
            errs.append(f"not Witt-equivariant at m={m}")
    for i in range(src.rank):
        for k in range(tgt.rank):
            if not _has_qdeg(F[k][i], src.qdeg(i) + f.q_shift - tgt.qdeg(k)):
                errs.append(f"entry ({k},{i}) has wrong q-degree")
    return errs


def _fresh(M: EquivariantBimodule, **kw) -> EquivariantBimodule:
    return replace(M, **kw)


def connection_shift(M: EquivariantBimodule, a: FlatSequence, label: str | None = None) -> EquivariantBimodule:
    """M<a>: add a_m times the identity to every D_m."""
    if a.vs != M.left_vars:
        a_vs = a.vs
        if not set(a_vs.names) <= set(M.left_vars.names):
            raise ValueError("shift sequence must be over the left variables")
    if a.M_max < M.M_max:
        raise ValueError(f"shift sequence truncated at {a.M_max} < {M.M_max}")
    acting = _left_names(M)
    for m in range(M.M_max + 1):
        for n in range(m + 1, M.M_max + 1 - m):
            c = curvature_scalar(a, m, n, [v for v in acting if v in a.vs])
            if not c.is_zero():
                raise ValueError(f"shift sequence {a.label} is not flat at ({m},{n})")
    old = M.D
    vs = M.left_vars

    def entries(m):
        am = a.term(m).to_varset(vs)
        return pm.add(old[m], pm.identity(vs, M.rank, am))

    D = ConnectionMatrixSeq(M.rank, entries, M.M_max)
    return _fresh(M, D=D, label=label if label is not None else f"{M.label}<{a.label}>")


def q_shift(M: EquivariantBimodule, amount: int) -> EquivariantBimodule:
    return _fresh(M, q_shift=M.q_shift + amount)


def a_shift(M: EquivariantBimodule, amount_doubled: int) -> EquivariantBimodule:
    return _fresh(M, a_shift_doubled=M.a_shift_doubled + amount_doubled)


def direct_sum(M: EquivariantBimodule, N: EquivariantBimodule) -> EquivariantBimodule:
    if M.left_vars != N.left_vars or len(M.right_vars) != len(N.right_vars):
        raise ValueError("direct sum of bimodules over different variables")
    vs = M.left_vars
    Y = {nm: pm.block_diag(vs, M.Y[nm], N.right_matrix(j)) for j, nm in enumerate(M.right_vars)}
    qd = tuple(d + M.q_shift for d in M.basis_qdeg) + tuple(d + N.q_shift for d in N.basis_qdeg)
    D = ConnectionMatrixSeq(M.rank + N.rank, lambda m: pm.block_diag(vs, M.D[m], N.D[m]),
                            min(M.M_max, N.M_max))
    return EquivariantBimodule(vs, M.right_vars, M.rank + N.rank, qd, Y, D, 0, 0,
                               f"({M.label}+{N.label})")


def _eval_block(N, entry_fn, Ymats, vs, rM, rN):
    """Matrix over basis (j,l) <- (i,k) with blocks entry_fn(l,k) evaluated at Ymats."""
    rows = [[Polynomial.zero(vs)] * (rM * rN) for _ in range(rM * rN)]
    scal = lambda nm: (_ for _ in ()).throw(ValueError(f"free variable {nm}"))
    for l in range(rN):
        for k in range(rN):
            p = entry_fn(l, k)
            if p.is_zero():
                continue
            E = pm.evaluate_at_matrices(p, Ymats, scal, rM, vs)
            for j in range(rM):
                for i in range(rM):
                    if E[j][i].terms:
                        rows[j * rN + l][i * rN + k] = E[j][i]
    return tuple(tuple(r) for r in rows)


def tensor_middle(M: EquivariantBimodule, N: EquivariantBimodule) -> EquivariantBimodule:
    """M tensor_{middle} N; basis e_i (x) f_k has index i*rank(N) + k.

    M's right variables are identified with N's left variables by position.
    """
    if len(M.right_vars) != len(N.left_vars):
        raise ValueError("middle variable counts do not match")
    vs = M.left_vars
    rM, rN = M.rank, N.rank
    Ymats = {N.left_vars.names[j]: M.right_matrix(j) for j in range(len(M.right_vars))}
    Z = {}
    for nm in N.right_vars:
        Zn = N.Y[nm]
        Z[nm] = _eval_block(N, lambda l, k, Zn=Zn: Zn[l][k], Ymats, vs, rM, rN)
    qd = tuple(M.basis_qdeg[i] + N.basis_qdeg[k] + N.q_shift for i in range(rM) for k in range(rN))
    Irn = pm.identity(vs, rN)

    def entries(m):
        Dn = N.D[m]
        return pm.add(pm.kron(M.D[m], Irn), _eval_block(N, lambda l, k: Dn[l][k], Ymats, vs, rM, rN))

    D = ConnectionMatrixSeq(rM * rN, entries, min(M.M_max, N.M_max))
    extra = _tensor_extra(M, N, Ymats, vs, rM, rN)
    return EquivariantBimodule(vs, N.right_vars, rM * rN, qd, Z, D,
                               M.a_shift_doubled + N.a_shift_doubled, M.q_shift,
                               f"{M.label}*{N.label}", extra)


def middle_name(layer: int, strand: int) -> str:
    """Name of the middle variable on ``strand`` (1-based) after ``layer`` factors."""
    return f"m{layer}_{strand}"


def _tensor_extra(M, N, Ymats, vs, rM, rN):
    """Middle-variable actions and basis words of a tensor product.

    Middle layer l holds the variables between factor l and factor l+1.  A
    basis word is a polynomial in middle and right variables which, applied
    to the generator 1 (x) 1, gives the basis vector.
    """
    fM = M.extra.get("nfactors", 1)
    fN = N.extra.get("nfactors", 1)
    IrN = pm.identity(vs, rN)
    middle = {nm: pm.kron(A, IrN) for nm, A in M.extra.get("middle", {}).items()}
    for j, rv in enumerate(M.right_vars):
        middle[middle_name(fM, j + 1)] = pm.kron(M.Y[rv], IrN)
    for nm, A in N.extra.get("middle", {}).items():
        layer, strand = nm[1:].split("_")
        middle[middle_name(fM + int(layer), int(strand))] = _eval_block(
            N, lambda l, k, A=A: A[l][k], Ymats, vs, rM, rN)
    extra = {"nfactors": fM + fN, "middle": middle}
    wM, wN = M.extra.get("words"), N.extra.get("words")
    if wM is not None and wN is not None:
        ren_M = {rv: middle_name(fM, j + 1) for j, rv in enumerate(M.right_vars)}
        ren_N = {}
        for nm in N.extra.get("middle", {}):
            layer, strand = nm[1:].split("_")
            ren_N[nm] = middle_name(fM + int(layer), int(strand))
        names = sorted(middle) + list(N.right_vars)
        wvs = VarSet(names)
        words = []
        for u in wM:
            uu = _rename_word(u, ren_M, wvs)
            for v in wN:
                words.append(uu * _rename_word(v, ren_N, wvs))
        extra["words"] = tuple(words)
    return extra


def _rename_word(p: Polynomial, ren: dict, vs: VarSet) -> Polynomial:
    out = {}
    for e, c in p.terms.items():
        e2 = [0] * len(vs)
        for nm, k in zip(p.vs.names, e):
            if k:
                e2[vs.index(ren.get(nm, nm))] += k
        out[tuple(e2)] = c
    return Polynomial(vs, out)


def action_matrices(M: EquivariantBimodule) -> dict:
    """Matrices of multiplication by every right and middle variable."""
    mats = dict(M.extra.get("middle", {}))
    mats.update(M.Y)
    return mats


def operator_matrix(M: EquivariantBimodule, p: Polynomial) -> pm.Matrix:
    """Matrix of multiplication by p (left, middle and right variables allowed)."""
    mats = action_matrices(M)
    vs = M.left_vars

    def scal(nm):
        if nm in vs:
            return Polynomial.var(vs, nm)
        raise ValueError(f"variable {nm} does not act on {M.label}")

    return pm.evaluate_at_matrices(p, mats, scal, M.rank, vs)


def word_vector(M: EquivariantBimodule, p: Polynomial) -> tuple:
    """Coordinates of p * generator (the generator is basis vector 0)."""
    A = operator_matrix(M, p)
    return tuple(A[k][0] for k in range(M.rank))


def cyclic_hom(M: EquivariantBimodule, N: EquivariantBimodule, q_shift: int = 0,
               label: str = "") -> BimoduleHom:
    """The map sending generator to generator, read off from M's basis words."""
    words = M.extra.get("words")
    if words is None:
        raise ValueError(f"{M.label} has no basis words")
    cols = [word_vector(N, w) for w in words]
    mat = tuple(tuple(cols[i][k] for i in range(M.rank)) for k in range(N.rank))
    return BimoduleHom(M, N, mat, q_shift, 0, label or f"{M.label}->{N.label}")


def tensor_hom(f: BimoduleHom, g: BimoduleHom, source=None, target=None) -> BimoduleHom:
    """f (x) g between the middle tensor products of sources and targets.

    g's entries (polynomials in the middle variables) are evaluated at the
    right-action matrices of f's target; equivalently (1 (x) g)(f (x) 1).
    """
    S = source or tensor_middle(f.source, g.source)
    T = target or tensor_middle(f.target, g.target)
    vs = f.source.left_vars
    # f (x) 1 : A(x)C -> A'(x)C  then 1 (x) g : A'(x)C -> A'(x)C'
    A2 = f.target
    rC, rC2 = g.source.rank, g.target.rank
    f1 = pm.kron(f.matrix, pm.identity(vs, rC))
    Ymats = {g.source.left_vars.names[j]: A2.right_matrix(j) for j in range(len(A2.right_vars))}
    scal = lambda nm: (_ for _ in ()).throw(ValueError(f"free variable {nm}"))
    rA2 = A2.rank
    rows = [[Polynomial.zero(vs)] * (rA2 * rC) for _ in range(rA2 * rC2)]
    for l in range(rC2):
        for k in range(rC):
            p = g.matrix[l][k]
            if p.is_zero():
                continue
            E = pm.evaluate_at_matrices(p, Ymats, scal, rA2, vs)
            for j in range(rA2):
                for i in range(rA2):
                    if E[j][i].terms:
                        rows[j * rC2 + l][i * rC + k] = E[j][i]
    g1 = tuple(tuple(r) for r in rows)
    mat = pm.mul(g1, f1)
    return BimoduleHom(S, T, mat, f.q_shift + g.q_shift, f.a_shift_doubled + g.a_shift_doubled,
                       f"{f.label}*{g.label}")


def compose(g: BimoduleHom, f: BimoduleHom) -> BimoduleHom:
    """g after f."""
    return BimoduleHom(f.source, g.target, pm.mul(g.matrix, f.matrix), f.q_shift + g.q_shift,
                       f.a_shift_doubled + g.a_shift_doubled, f"{g.label}.{f.label}")


def identity_hom(M: EquivariantBimodule) -> BimoduleHom:
    return BimoduleHom(M, M, pm.identity(M.left_vars, M.rank), 0, 0, "1")


def change_basis(M: EquivariantBimodule, P: pm.Matrix, Pinv: pm.Matrix, basis_qdeg=None,
                 label: str | None = None) -> EquivariantBimodule:
    """Re-express M in the basis whose i-th vector has old coordinates P[:, i]."""
    vs = M.left_vars
    if pm.mul(P, Pinv) != pm.identity(vs, M.rank):
        raise ValueError("Pinv is not the inverse of P")
    acting = _left_names(M)
    Y = {nm: pm.mul(Pinv, pm.mul(M.Y[nm], P)) for nm in M.right_vars}
    old = M.D

    def entries(m):
        return pm.mul(Pinv, pm.add(pm.witt(m, P, acting), pm.mul(old[m], P)))

    D = ConnectionMatrixSeq(M.rank, entries, M.M_max)
    if basis_qdeg is None:
        basis_qdeg = []
        for i in range(M.rank):
            degs = {M.basis_qdeg[k] + P[k][i].q_degree() for k in range(M.rank)
                    if not P[k][i].is_zero() and P[k][i].q_degree() is not None}
            if len(degs) != 1:
                raise ValueError(f"new basis vector {i} is not homogeneous")
            basis_qdeg.append(degs.pop())
    return _fresh(M, Y=Y, D=D, basis_qdeg=tuple(basis_qdeg),
                  label=label if label is not None else M.label)


def to_json(M: EquivariantBimodule, M_max: int | None = None) -> str:
    """Deterministic JSON document describing M."""
    M_max = M.M_max if M_max is None else M_max
    doc = {
        "label": M.label,
        "left_vars": list(M.left_vars.names),
        "right_vars": list(M.right_vars),
        "rank": M.rank,
        "basis_qdeg": list(M.basis_qdeg),
        "q_shift": M.q_shift,
        "a_shift_doubled": M.a_shift_doubled,
        "Y": {nm: pm.to_str(M.Y[nm]) for nm in M.right_vars},
        "D": [pm.to_str(M.D[m]) for m in range(M_max + 1)],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> EquivariantBimodule:
    doc = json.loads(text)
    vs = VarSet(doc["left_vars"])
    conv = lambda rows: tuple(tuple(parse(s, vs) for s in r) for r in rows)
    Dl = [conv(d) for d in doc["D"]]
    D = ConnectionMatrixSeq.from_list(Dl)
    return EquivariantBimodule(vs, tuple(doc["right_vars"]), doc["rank"], tuple(doc["basis_qdeg"]),
                               {nm: conv(doc["Y"][nm]) for nm in doc["right_vars"]}, D,
                               doc["a_shift_doubled"], doc["q_shift"], doc["label"])
