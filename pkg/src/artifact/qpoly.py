"""Exact sparse multivariate polynomials over the rationals.

A polynomial lives over a fixed ordered :class:`VarSet`; its terms are a map
from exponent tuples (one entry per variable, in VarSet order) to nonzero
:class:`fractions.Fraction` coefficients.  Every variable has q-degree 2.

The Witt operator ``apply_witt(m, p, vars)`` is the derivation
``sum_v v^(m+1) d/dv`` over the chosen variables.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "VarSet",
    "Polynomial",
    "apply_witt",
    "substitute",
    "parse",
]


class VarSet:
    """Ordered list of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.names = names
        self._index = {nm: i for i, nm in enumerate(names)}

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarSet({list(self.names)})"

    def __add__(self, other: "VarSet") -> "VarSet":
        return VarSet(self.names + tuple(n for n in other.names if n not in self))


def _grlex_key(exp):
    return (sum(exp), exp)


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("vs", "terms", "_hash")

    def __init__(self, vs: VarSet, terms: Mapping[tuple, Fraction] | None = None):
        self.vs = vs
        clean = {}
        if terms:
            n = len(vs)
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise ValueError("exponent length does not match VarSet")
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def _raw(cls, vs, terms):
        # trusted path: terms already canonical (no zeros)
        p = object.__new__(cls)
        p.vs = vs
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, vs: VarSet) -> "Polynomial":
        return cls._raw(vs, {})

    @classmethod
    def const(cls, vs: VarSet, c) -> "Polynomial":
        c = Fraction(c)
        return cls._raw(vs, {(0,) * len(vs): c} if c else {})

    @classmethod
    def var(cls, vs: VarSet, name: str) -> "Polynomial":
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return cls._raw(vs, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, vs: VarSet, exp, c=1) -> "Polynomial":
        return cls(vs, {tuple(exp): Fraction(c)})

    # basic predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vs), Fraction(0))

    def degree(self) -> int:
        """Total degree in the variables (-1 for the zero polynomial)."""
        return max((sum(e) for e in self.terms), default=-1)

    def q_degree(self) -> int | None:
        """q-degree 2*deg if homogeneous, None otherwise (and for zero)."""
        degs = {sum(e) for e in self.terms}
        if len(degs) != 1:
            return None
        return 2 * degs.pop()

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, deg: int) -> "Polynomial":
        return Polynomial._raw(self.vs, {e: c for e, c in self.terms.items() if sum(e) == deg})

    def sorted_terms(self):
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.vs.names[i])
        return used

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vs != self.vs:
                raise ValueError(f"VarSet mismatch: {self.vs} vs {other.vs}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.vs, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.vs, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vs, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.vs)
            return Polynomial._raw(self.vs, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.vs, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.vs, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self * (Fraction(1) / Fraction(c))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.vs, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vs == other.vs and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vs, frozenset(self.terms.items())))
        return self._hash

    # calculus
    def diff(self, name: str) -> "Polynomial":
        i = self.vs.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = c * k
        return Polynomial._raw(self.vs, out)

    def exact_div(self, d: "Polynomial") -> "Polynomial | None":
        """Return self/d if d divides self exactly, else None.

        Multivariate division by a single divisor with respect to grlex; a
        single polynomial is a Groebner basis of its principal ideal, so the
        remainder vanishes iff d divides self.
        """
        d = self._coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lt_e, lt_c = max(d.terms.items(), key=lambda t: _grlex_key(t[0]))
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem, key=_grlex_key)
            c = rem[e]
            if any(a < b for a, b in zip(e, lt_e)):
                return None
            qe = tuple(a - b for a, b in zip(e, lt_e))
            qc = c / lt_c
            quot[qe] = qc
            for de, dc in d.terms.items():
                te = tuple(a + b for a, b in zip(qe, de))
                s = rem.get(te, 0) - qc * dc
                if s:
                    rem[te] = s
                else:
                    rem.pop(te, None)
        return Polynomial._raw(self.vs, quot)

    def to_varset(self, vs: VarSet) -> "Polynomial":
        """Re-express over another VarSet containing every variable in use."""
        if vs == self.vs:
            return self
        pos = []
        for i, nm in enumerate(self.vs.names):
            pos.append(vs.index(nm) if nm in vs else None)
        out = {}
        n = len(vs)
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.vs.names[i]} not in target VarSet")
                    e2[pos[i]] = k
            out[tuple(e2)] = c
        return Polynomial._raw(vs, out)

    # text
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial) -> str:
    """Canonical text form: ``c*x1^a*y2^b + ...`` in grlex order."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mon = "*".join(
            nm if k == 1 else f"{nm}^{k}" for nm, k in zip(p.vs.names, e) if k
        )
        a = abs(c)
        if not mon:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mon
        else:
            body = f"{_fmt_coeff(a)}*{mon}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    s0, b0 = parts[0]
    out = ("-" if s0 == "-" else "") + b0
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("var", name))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return toks


class _Parser:
    # expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
    # factor := ('-'|'+') factor | atom ('^' int)? ; atom := num | var | '(' expr ')'
    def __init__(self, toks, vs):
        self.toks = toks
        self.i = 0
        self.vs = vs

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("division only by nonzero constants")
                val = val / rhs.constant_term()
        return val

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        if self.peek() == ("op", "+"):
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, k = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** k
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Polynomial.const(self.vs, val)
        if kind == "var":
            if val not in self.vs:
                raise ValueError(f"unknown variable {val!r}")
            return Polynomial.var(self.vs, val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            return inner
        raise ValueError(f"unexpected token {val!r}")


def parse(text: str, vs: VarSet | Iterable[str] | None = None) -> Polynomial:
    """Parse a polynomial; without a VarSet, variables are taken in order of appearance."""
    toks = _tokenize(text)
    if vs is None:
        seen = []
        for kind, val in toks:
            if kind == "var" and val not in seen:
                seen.append(val)
        vs = VarSet(seen)
    elif not isinstance(vs, VarSet):
        vs = VarSet(vs)
    if not toks:
        raise ValueError("empty polynomial text")
    pr = _Parser(toks, vs)
    out = pr.expr()
    if pr.i != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return out


def apply_witt(m: int, p: Polynomial, acting_vars: Iterable[str] | None = None) -> Polynomial:
    """sum over acting variables v of v^(m+1) * dp/dv (all variables if None)."""
    if m < 0:
        raise ValueError("Witt index must be nonnegative")
    vs = p.vs
    idx = [vs.index(v) for v in (vs.names if acting_vars is None else acting_vars)]
    out: dict = {}
    for e, c in p.terms.items():
        for i in idx:
            k = e[i]
            if k:
                e2 = e[:i] + (k + m,) + e[i + 1:]
                out[e2] = out.get(e2, 0) + c * k
    return Polynomial._raw(vs, {e: c for e, c in out.items() if c})


def substitute(p: Polynomial, assignment: Mapping[str, Polynomial], target: VarSet | None = None) -> Polynomial:
    """Replace each variable of p by a polynomial (all over a common target VarSet).

    Variables of p missing from ``assignment`` are kept as themselves, which
    requires them to exist in the target VarSet.
    """
    if target is None:
        vals = [v for v in assignment.values() if isinstance(v, Polynomial)]
        target = vals[0].vs if vals else p.vs
    images = []
    for nm in p.vs.names:
        if nm in assignment:
            v = assignment[nm]
            images.append(v if isinstance(v, Polynomial) else Polynomial.const(target, v))
        else:
            images.append(None)
    # powers cached per variable
    cache: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            img = images[i]
            if img is None:
                img = Polynomial.var(target, p.vs.names[i])
            cache[key] = img ** k
        return cache[key]

    out = Polynomial.zero(target)
    for e, c in p.terms.items():
        t = Polynomial.const(target, c)
        for i, k in enumerate(e):
            if k:
                t = t * power(i, k)
        out = out + t
    return out
