"""Connection sequences for the positive Witt algebra.

A scalar sequence a = (a_0, a_1, ...) of polynomials is flat when

    L_m a_n - L_n a_m - (n - m) a_{m+n} = 0   for all m, n,

and then L_m -> L_m + a_m is an automorphism of the semidirect product of the
Witt algebra with the polynomial ring.  Sequences here are lazy rules with a
hard truncation index ``M_max``.

Matrix-valued sequences (``ConnectionMatrixSeq``) have curvature

    L_m A_n - L_n A_m + [A_n, A_m] - (n - m) A_{m+n}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import polymat as pm
from .qpoly import Polynomial, VarSet, apply_witt

__all__ = [
    "TruncationError",
    "NonDivisible",
    "FlatSequence",
    "ConnectionMatrixSeq",
    "seq_term",
    "curvature_scalar",
    "curvature_matrix",
    "flat_from_gauge",
    "is_flat",
    "zero_sequence",
]

DEFAULT_M_MAX = 6


class TruncationError(IndexError):
    """Requested index lies beyond a sequence's truncation."""


class NonDivisible(ArithmeticError):
    """L_m p is not a polynomial multiple of p."""

    def __init__(self, m: int):
        super().__init__(f"L_{m} p is not divisible by p")
        self.m = m


@dataclass(frozen=True)
class FlatSequence:
    """A connection sequence given by a rule.

    kind is one of ``pi_prime`` (data: var), ``pi`` (data: (var_a, var_b)),
    ``lincomb`` (data: tuple of (Fraction, FlatSequence)) and ``explicit``
    (data: tuple of Polynomial).
    """

    kind: str
    vs: VarSet
    data: tuple
    M_max: int = DEFAULT_M_MAX
    label: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def pi_prime(cls, vs: VarSet, var: str, M_max: int = DEFAULT_M_MAX) -> "FlatSequence":
        return cls("pi_prime", vs, (var,), M_max, f"pi'({var})")

    @classmethod
    def pi(cls, vs: VarSet, a: str, b: str, M_max: int = DEFAULT_M_MAX) -> "FlatSequence":
        return cls("pi", vs, (a, b), M_max, f"pi({a},{b})")

    @classmethod
    def linear_combination(cls, parts: Sequence[tuple], M_max: int | None = None) -> "FlatSequence":
        parts = tuple((Fraction(r), s) for r, s in parts)
        if not parts:
            raise ValueError("empty linear combination")
        vs = parts[0][1].vs
        if M_max is None:
            M_max = min(s.M_max for _, s in parts)
        label = " + ".join(f"{r}*{s.label}" for r, s in parts)
        return cls("lincomb", vs, parts, M_max, label)

    @classmethod
    def explicit(cls, terms: Sequence[Polynomial], label: str = "explicit") -> "FlatSequence":
        terms = tuple(terms)
        if not terms:
            raise ValueError("explicit sequence needs at least one term")
        return cls("explicit", terms[0].vs, terms, len(terms) - 1, label)

    def term(self, m: int) -> Polynomial:
        return seq_term(self, m)

    def truncate(self, M_max: int) -> "FlatSequence":
        if M_max > self.M_max and self.kind == "explicit":
            raise TruncationError(f"cannot extend explicit sequence past {self.M_max}")
        return FlatSequence(self.kind, self.vs, self.data, M_max, self.label)

    def scaled(self, r) -> "FlatSequence":
        return FlatSequence.linear_combination([(r, self)], self.M_max)

    def __neg__(self):
        out = self.scaled(-1)
        return FlatSequence(out.kind, out.vs, out.data, out.M_max, "-" + self.label)

    def __add__(self, other: "FlatSequence") -> "FlatSequence":
        return FlatSequence.linear_combination([(1, self), (1, other)],
                                               min(self.M_max, other.M_max))

    def terms(self, upto: int | None = None) -> list:
        upto = self.M_max if upto is None else upto
        return [seq_term(self, m) for m in range(upto + 1)]


def zero_sequence(vs: VarSet, M_max: int = DEFAULT_M_MAX) -> FlatSequence:
    return FlatSequence.explicit([Polynomial.zero(vs)] * (M_max + 1), label="0")


def seq_term(s: FlatSequence, m: int) -> Polynomial:
    if m < 0 or m > s.M_max:
        raise TruncationError(f"term {m} requested beyond truncation M_max={s.M_max}")
    if m in s._cache:
        return s._cache[m]
    vs = s.vs
    if s.kind == "pi_prime":
        x = Polynomial.var(vs, s.data[0])
        val = (x ** m) * (m + 1)
    elif s.kind == "pi":
        x = Polynomial.var(vs, s.data[0])
        y = Polynomial.var(vs, s.data[1])
        val = Polynomial.zero(vs)
        for i in range(m + 1):
            val = val + (x ** i) * (y ** (m - i))
    elif s.kind == "lincomb":
        val = Polynomial.zero(vs)
        for r, sub in s.data:
            val = val + seq_term(sub, m) * r
    elif s.kind == "explicit":
        val = s.data[m]
    else:
        raise ValueError(f"unknown rule {s.kind}")
    s._cache[m] = val
    return val


def curvature_scalar(s: FlatSequence, m: int, n: int, acting_vars=None) -> Polynomial:
    if m + n > s.M_max:
        raise TruncationError(f"curvature ({m},{n}) needs M_max >= {m + n}")
    return (apply_witt(m, seq_term(s, n), acting_vars)
            - apply_witt(n, seq_term(s, m), acting_vars)
            - seq_term(s, m + n) * (n - m))


def is_flat(s: FlatSequence, acting_vars=None, upto: int | None = None) -> bool:
    upto = s.M_max if upto is None else upto
    return all(curvature_scalar(s, m, n, acting_vars).is_zero()
               for m in range(upto + 1) for n in range(upto + 1 - m))


class ConnectionMatrixSeq:
    """Sequence m -> k x k matrix of polynomials, cached, truncated at M_max."""

    def __init__(self, size: int, entries: Callable[[int], pm.Matrix], M_max: int):
        self.size = size
        self._entries = entries
        self.M_max = M_max
        self._cache: dict = {}

    @classmethod
    def from_list(cls, mats: Sequence[pm.Matrix]) -> "ConnectionMatrixSeq":
        mats = list(mats)
        return cls(len(mats[0]), lambda m: mats[m], len(mats) - 1)

    def __getitem__(self, m: int) -> pm.Matrix:
        if m < 0 or m > self.M_max:
            raise TruncationError(f"connection term {m} beyond M_max={self.M_max}")
        if m not in self._cache:
            self._cache[m] = self._entries(m)
        return self._cache[m]

    def as_list(self) -> list:
        return [self[m] for m in range(self.M_max + 1)]


def curvature_matrix(A: ConnectionMatrixSeq, m: int, n: int, acting_vars=None) -> pm.Matrix:
    if m + n > A.M_max:
        raise TruncationError(f"curvature ({m},{n}) needs M_max >= {m + n}")
    Am, An = A[m], A[n]
    out = pm.sub(pm.witt(m, An, acting_vars), pm.witt(n, Am, acting_vars))
    out = pm.add(out, pm.commutator(An, Am))
    return pm.sub(out, pm.scale(A[m + n], n - m))


def flat_from_gauge(p: Polynomial, acting_vars=None, M_max: int = DEFAULT_M_MAX) -> FlatSequence:
    """Solve L_m p = a_m p; the resulting sequence is flat."""
    if p.is_zero():
        raise ValueError("gauge polynomial must be nonzero")
    terms = []
    for m in range(M_max + 1):
        q = apply_witt(m, p, acting_vars).exact_div(p)
        if q is None:
            raise NonDivisible(m)
        terms.append(q)
    return FlatSequence.explicit(terms, label=f"gauge({p})")
