"""HOMFLY-PT polynomials of braid closures via the Hecke algebra.

Conventions (fixed here, used nowhere else in the package):

* Hecke algebra H_n with basis T_w, w in S_n, and T_i^2 = z T_i + 1, so that
  T_i - T_i^-1 = z.
* Ocneanu trace: tr(1) = 1 and tr(x T_{n-1} y) = tau tr(x y) for x, y in
  H_{n-1}.
* P(beta) = v^e mu^(n-1) tr(beta) with tau = z / (1 - v^2),
  mu = (v^-1 - v) / z and e the writhe.  Then P(unknot) = 1 and

      v^-1 P(L+) - v P(L-) = z P(L0),
      P(mirror L)(v, z) = P(L)(v^-1, -z).

Sigma_i is the positive crossing.  The unreduced polynomial is P * U with
U = (v^-1 - v) / z.  For comparison with graded Euler characteristics, the
substitution v = a^-1 q, z = q - q^-1 is used, a standing for the half unit
of the a-grading (exponents of a are doubled units), and the result is
expanded as a power series in q.

Only the standard library is used: Laurent polynomials are dicts from
exponent tuples to ints.
"""
from __future__ import annotations

from functools import lru_cache

__all__ = [
    "Laurent",
    "HeckeElement",
    "homfly",
    "homfly_unreduced_series",
    "mirror_poly",
    "trace",
]


class Laurent:
    """Integer Laurent polynomial in a fixed tuple of variable names."""

    __slots__ = ("names", "terms")

    def __init__(self, names: tuple, terms: dict | None = None):
        self.names = tuple(names)
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, names, c: int) -> "Laurent":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def mono(cls, names, exps, c: int = 1) -> "Laurent":
        return cls(names, {tuple(exps): c})

    def __add__(self, o):
        if isinstance(o, int):
            o = Laurent.const(self.names, o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return Laurent(self.names, {e: c * o for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Laurent(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Laurent.const(self.names, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, int):
            o = Laurent.const(self.names, o)
        return self.names == o.names and self.terms == o.terms

    def __hash__(self):
        return hash((self.names, tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(f"{n}^{k}" if k != 1 else n for n, k in zip(self.names, e) if k)
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


_Z = ("z",)
_ZT = ("z", "tau")
_VZ = ("v", "z")


# ---------------------------------------------------------------- Hecke algebra

def _length(w: tuple) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def _compose(u: tuple, w: tuple) -> tuple:
    """(u w)(k) = u(w(k))."""
    return tuple(u[w[k]] for k in range(len(w)))


def _s(n: int, i: int) -> tuple:
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


class HeckeElement:
    """Linear combination of T_w with coefficients in Z[z]."""

    def __init__(self, n: int, coeffs: dict | None = None):
        self.n = n
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if not c.is_zero()}

    @classmethod
    def one(cls, n: int) -> "HeckeElement":
        return cls(n, {tuple(range(n)): Laurent.const(_Z, 1)})

    def times_generator(self, i: int, inverse: bool = False) -> "HeckeElement":
        """Right multiplication by T_i (0-based i) or by T_i^-1 = T_i - z."""
        s = _s(self.n, i)
        z = Laurent.mono(_Z, (1,))
        out: dict = {}

        def put(w, c):
            out[w] = out.get(w, Laurent(_Z)) + c

        for w, c in self.coeffs.items():
            ws = _compose(w, s)
            if _length(ws) > _length(w):
                put(ws, c)
            else:
                put(ws, c)
                put(w, c * z)
            if inverse:
                put(w, -(c * z))
        return HeckeElement(self.n, out)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        out = HeckeElement(self.n, {})
        for w, c in other.coeffs.items():
            part = HeckeElement(self.n, dict(self.coeffs))
            for i in _reduced_word(w):
                part = part.times_generator(i)
            for u, d in part.coeffs.items():
                out.coeffs[u] = out.coeffs.get(u, Laurent(_Z)) + d * c
        out.coeffs = {u: c for u, c in out.coeffs.items() if not c.is_zero()}
        return out


def _reduced_word(w: tuple) -> list:
    """Indices i with w = s_{i1} s_{i2} ... (right descents peeled off)."""
    w = list(w)
    word = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i)
                break
        else:
            break
    return word[::-1]


def _zt(c: Laurent) -> Laurent:
    return Laurent(_ZT, {(e[0], 0): k for e, k in c.terms.items()})


@lru_cache(maxsize=None)
def _trace_basis(w: tuple) -> Laurent:
    """tr(T_w) in Z[z, tau]."""
    n = len(w)
    if n == 1:
        return Laurent.const(_ZT, 1)
    if w[n - 1] == n - 1:
        return _trace_basis(w[: n - 1])
    for k in range(n - 1):
        c = tuple(range(n))
        for i in range(n - 2, k - 1, -1):
            c = _compose(c, _s(n, i))
        # c = s_{n-2} s_{n-3} ... s_k (0-based), last generator first
        cinv = tuple(sorted(range(n), key=lambda j: c[j]))
        u = _compose(w, cinv)
        if u[n - 1] == n - 1 and _length(w) == _length(u) + (n - 1 - k):
            m = n - 1
            rest = HeckeElement(m, {u[:m]: Laurent.const(_Z, 1)})
            for i in range(n - 3, k - 1, -1):
                rest = rest.times_generator(i)
            tau = Laurent.mono(_ZT, (0, 1))
            return tau * trace(rest)
    raise AssertionError(f"no coset decomposition for {w}")


def trace(h: HeckeElement) -> Laurent:
    out = Laurent(_ZT)
    for w, c in h.coeffs.items():
        out = out + _zt(c) * _trace_basis(w)
    return out


def _braid_element(letters, n: int) -> HeckeElement:
    h = HeckeElement.one(n)
    for s in letters:
        h = h.times_generator(abs(s) - 1, inverse=s < 0)
    return h


def homfly(word) -> Laurent:
    """Reduced HOMFLY-PT polynomial P(v, z) of the closure, P(unknot) = 1."""
    n, letters = word.n, word.letters
    tr = trace(_braid_element(letters, n))
    e = sum(1 if s > 0 else -1 for s in letters)
    v = Laurent.mono(_VZ, (1, 0))
    vinv = Laurent.mono(_VZ, (-1, 0))
    U = (vinv - v) * Laurent.mono(_VZ, (0, -1))
    out = Laurent(_VZ)
    for (ze, k), c in tr.terms.items():
        # mu^(n-1) tau^k = mu^(n-1-k) v^-k
        out = out + Laurent.mono(_VZ, (e - k, ze), c) * U ** (n - 1 - k)
    return out


def mirror_poly(P: Laurent) -> Laurent:
    """P(v^-1, -z)."""
    return Laurent(P.names, {(-a, b): c * (-1) ** (b % 2) for (a, b), c in P.terms.items()})


# ----------------------------------------------------------- series expansion

def _series_mul(A: dict, B: dict, q_max: int) -> dict:
    if not A or not B:
        return {}
    qa = min(q for q, _ in A)
    qb = min(q for q, _ in B)
    out: dict = {}
    for (q1, a1), c1 in A.items():
        if q1 + qb > q_max:
            continue
        for (q2, a2), c2 in B.items():
            if q1 + q2 > q_max:
                continue
            k = (q1 + q2, a1 + a2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c and k[0] <= q_max and k[0] >= qa + qb}


def homfly_unreduced_series(word, q_max: int = 16) -> dict:
    """Unreduced P * U under v = a^-1 q, z = q - q^-1, as {(q, a_doubled): int}.

    Powers of z^-1 are expanded as -q (1 + q^2 + q^4 + ...).
    """
    P = homfly(word)
    P = P * ((Laurent.mono(_VZ, (-1, 0)) - Laurent.mono(_VZ, (1, 0))) * Laurent.mono(_VZ, (0, -1)))
    zmin = min((b for _, b in P.terms), default=0)
    pad = max(0, -zmin) + 2
    work = q_max + 2 * pad + 4
    zs = {(1, 0): 1, (-1, 0): -1}
    vmin = min((a for a, _ in P.terms), default=0)
    work += 2 * abs(vmin)
    zinv = {(2 * j + 1, 0): -1 for j in range(work // 2 + 2)}
    total: dict = {}
    for (ve, ze), c in P.terms.items():
        term = {(ve, -ve): c}       # v^ve = q^ve a^-ve
        base = zs if ze >= 0 else zinv
        for _ in range(abs(ze)):
            term = _series_mul(term, base, work)
        for k, x in term.items():
            total[k] = total.get(k, 0) + x
    return {k: c for k, c in sorted(total.items()) if c and k[0] <= q_max}
