"""Acceptance criteria 1-11, each timed against its budget.

Run under pytest (a summary line per criterion is printed at the end of the
session) or directly with ``python tests/test_acceptance.py``.
"""
import time
from itertools import product

import pytest

from artifact import verify
from artifact.qpoly import Polynomial, VarSet, apply_witt
from artifact.rouquier import (check_chain_iso, check_complex, parse_braid, r3_reduced_complex,
                               r3_symmetry_maps, transpose13_complex)
from artifact.soergel import StrandContext
from artifact.splitting import split_s3, split_two
from artifact.verify import (MARKOV2_SIGN, euler_calibration, pipeline, suite_chi,
                             suite_flatness, witt_ratio_shift)
from artifact.gradedlin import euler_characteristic, induced_operator
from artifact.homfly_oracle import homfly_unreduced_series

RESULTS = {}


def _w(text, n):
    return parse_braid(text, n)


def c1():
    vs = VarSet(["x1", "x2", "x3"])
    mons = [Polynomial.monomial(vs, e) for e in product(range(7), repeat=3) if sum(e) <= 6]
    for m in range(5):
        for n in range(5):
            for p in mons:
                lhs = apply_witt(m, apply_witt(n, p)) - apply_witt(n, apply_witt(m, p))
                if lhs != apply_witt(m + n, p) * (n - m):
                    return f"fails at m={m} n={n} on {p}"
    return True


def c2():
    bad = [c.line() for c in suite_flatness(6) if not c.passed]
    return bad or True


def c3():
    bad = [c.line() for c in suite_chi(4) if not c.passed]
    return bad or True


def _report(rep, keys):
    bad = [k for k in keys if not rep[k]]
    return bad or True


def c4():
    rep = split_two(4)
    return _report(rep, ["valid", "block_diagonal", "summand_1_is_B", "summand_2_is_B<pi>",
                         "chi_plus_x_1_matches", "one_x_chi_minus_matches", "q_rank_matches"])


def c5():
    rep = split_s3(4)
    return _report(rep, ["y_formula", "submodule_S3", "S3_block_is_S3", "quotient_is_B1<pi12>",
                         "generator_columns_clean", "generator_matrix_matches",
                         "q_dimension_identity"])


def _same(a, b, what):
    return True if a.dims == b.dims else f"{what}: dims differ"


def c6():
    ident = pipeline(_w("", 2), 16)
    for text in ("1,-1", "-1,1"):
        r = _same(pipeline(_w(text, 2), 16), ident, f"<{text}>")
        if r is not True:
            return r
    return True


def c7():
    r = _same(pipeline(_w("1,2,1", 3), 12), pipeline(_w("2,1,2", 3), 12), "R3")
    if r is not True:
        return r
    ctx = StrandContext(3, M_max=3)
    D = r3_reduced_complex(ctx)
    probs = check_complex(D, 3)
    T = transpose13_complex(D)
    probs += check_chain_iso(T, D, r3_symmetry_maps(D, T), 3)
    return probs or True


def c8():
    for w1, w2 in (("1", "2"), ("1,1", "2"), ("1", "-2")):
        r = _same(pipeline(_w(f"{w1},{w2}", 3), 12), pipeline(_w(f"{w2},{w1}", 3), 12),
                  f"<{w1},{w2}>")
        if r is not True:
            return r
    return True


def c9():
    q = 16
    signs = set()
    for text, n, ref, n0, s in (("1", 2, "", 1, 1), ("-1", 2, "", 1, -1),
                                ("1,2", 3, "1", 2, 1), ("1,-2", 3, "1", 2, -1)):
        H, H0 = pipeline(_w(text, n), q if n < 3 else 12), pipeline(_w(ref, n0), q if n < 3 else 12)
        if H.dims != H0.dims:
            return f"<{text}>: dims differ"
        for m in range(4):
            diffs, probs = witt_ratio_shift(H, H0, "x1", "x1", m, q if n < 3 else 12)
            if probs or len(set(diffs.values())) != 1:
                return f"<{text}> m={m}: {probs[:1] or sorted(set(diffs.values()))}"
            (d,) = set(diffs.values())
            if d % (m + 1):
                return f"<{text}> m={m}: shift {d} not a multiple of {m + 1}"
            signs.add(s * d // (m + 1))
    if len(signs) != 1:
        return f"inconsistent signs {signs}"
    return True if signs == {MARKOV2_SIGN} else f"realized sign {signs} differs from fixture"


def c10():
    H = pipeline(_w("1,1,1", 2), 16)
    return True if induced_operator(H, ("x", "x1")) == induced_operator(H, ("x", "x2")) \
        else "x1 and x2 differ"


def c11():
    cal = euler_calibration(16)
    for text, n in verify.EULER_CASES:
        chi = euler_characteristic(pipeline(_w(text, n), 16))
        ora = homfly_unreduced_series(_w(text, n), 16)
        dq, da, s = cal
        ora = {(q + dq, a + da): s * c for (q, a), c in ora.items() if q + dq <= 16}
        if chi != ora:
            return f"<{text}> on {n}: mismatch"
    return True


CRITERIA = [
    (1, "Witt relations on Q[x1,x2,x3], deg <= 6", 5, c1),
    (2, "flatness of pi' and pi, gauge reproduces pi", 1, c2),
    (3, "chi maps equivariant up to m = 4", 1, c3),
    (4, "B (x) B splitting matrices and q-rank", 5, c4),
    (5, "B1 B2 B1 generator matrix, quotient, q-dimension", 30, c5),
    (6, "R2 dims, q <= 16", 60, c6),
    (7, "R3 dims q <= 12 and f13 symmetry", 600, c7),
    (8, "Markov I pairs, q <= 12", 600, c8),
    (9, "Markov II dims and L_m framing shift, m <= 3", 60, c9),
    (10, "strand independence on the trefoil, q <= 16", 120, c10),
    (11, "Euler characteristic vs HOMFLY-PT oracle, q <= 16", 600, c11),
]


def run_criterion(k, name, limit, fn):
    verify._pipeline.cache_clear()
    t0 = time.perf_counter()
    res = fn()
    dt = time.perf_counter() - t0
    ok = res is True and dt < limit
    detail = "" if res is True else f" ({res})"
    line = f"criterion {k:>2} {'PASS' if ok else 'FAIL'}  {dt:7.2f}s / {limit}s  {name}{detail}"
    RESULTS[k] = line
    return ok, line


@pytest.mark.parametrize("k,name,limit,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(k, name, limit, fn):
    ok, line = run_criterion(k, name, limit, fn)
    print(line)
    assert ok, line


if __name__ == "__main__":
    lines = [run_criterion(*c)[1] for c in CRITERIA]
    print("\n".join(lines))
