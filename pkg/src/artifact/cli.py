"""Command-line front end.

    python -m artifact compute --braid "1,1,1" --qmax 16
    python -m artifact verify --suite moves --qmax 12
    python -m artifact homfly --braid "1,1,1"

Exit status is 0 iff every check in the run passed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .gradedlin import euler_characteristic, operator_piece, poincare, shift_audit
from .homfly_oracle import homfly, homfly_unreduced_series
from .rouquier import BraidWord, parse_braid
from .verify import MARKOV2_SIGN, SUITES, pipeline, run_suite, self_writhes

SCHEMA = 1


@dataclass(frozen=True)
class RunConfig:
    word: BraidWord
    q_max: int = 24
    witt_max: int = 3
    reps: tuple | None = None       # one 1-based strand per component, None = auto
    fmt: str = "json"

    def __post_init__(self):
        if self.q_max < 2 or self.q_max % 2:
            raise ValueError("--qmax must be even and at least 2")
        if not 0 <= self.witt_max <= 6:
            raise ValueError("--witt-max must lie in 0..6")
        if self.fmt not in ("json", "table"):
            raise ValueError("--format must be json or table")


def _frac(x) -> str:
    return str(x)


def _matrix(A) -> list:
    return [[_frac(c) for c in row] for row in A]


def choose_reps(word: BraidWord, reps) -> list:
    comps = word.components()
    if reps is None:
        return [c[0] for c in comps]
    reps = list(reps)
    if len(reps) != len(comps):
        raise ValueError(f"--reps needs one strand per component ({len(comps)} components)")
    for r, c in zip(reps, comps):
        if r not in c:
            raise ValueError(f"strand {r} is not on component {c}")
    return reps


def _operator_doc(H, op, dq: int, q_max: int) -> list:
    out = []
    for (q, a, t) in H.blocks():
        if q + dq > q_max:
            continue
        out.append({"piece": [q, a, t], "matrix": _matrix(operator_piece(H, op, q, a, t))})
    return out


def framing_name(k: int, w: int) -> str:
    s = MARKOV2_SIGN * w
    return "0" if s == 0 else f"{s:+d}*pi'(lambda_{k})"


def cmd_compute(cfg: RunConfig) -> tuple:
    """(document, all_checks_passed)."""
    word = cfg.word
    comps = word.components()
    reps = choose_reps(word, cfg.reps)
    H = pipeline(word, cfg.q_max, M_max=max(cfg.witt_max, 1))
    audit = shift_audit(H.engine.bic, cfg.q_max, cfg.witt_max)
    checks = {"shift_audit": audit["differentials_q_degree_zero"]}
    lam = {}
    for k, (r, comp) in enumerate(zip(reps, comps), 1):
        ref = _operator_doc(H, ("x", f"x{r}"), 2, cfg.q_max)
        lam[f"lambda_{k}"] = {"strand": r, "pieces": ref}
        same = all(_operator_doc(H, ("x", f"x{s}"), 2, cfg.q_max) == ref for s in comp if s != r)
        checks[f"lambda_{k}_independent_of_strand"] = same
    witt = {f"L_{m}": _operator_doc(H, ("L", m), 2 * m, cfg.q_max)
            for m in range(cfg.witt_max + 1)}
    chi = euler_characteristic(H)
    oracle = homfly_unreduced_series(word, cfg.q_max)
    checks["euler_matches_oracle"] = chi == oracle
    writhes = self_writhes(word)
    doc = {
        "schema": SCHEMA,
        "doubled": True,
        "braid": {"word": list(word.letters), "strands": word.n, "writhe": word.writhe()},
        "permutation": [p + 1 for p in word.permutation()],
        "components": comps,
        "truncation": {"q_max": cfg.q_max, "q_min": H.engine.q_min(), "witt_max": cfg.witt_max,
                       "dims_padding": audit["dims_padding"],
                       "operator_padding": audit["operator_padding"]},
        "poincare": [list(x) for x in poincare(H)],
        "euler_characteristic": [[q, a, c] for (q, a), c in sorted(chi.items())],
        "homfly": str(homfly(word)),
        "lambda": lam,
        "witt": witt,
        "framing": [{"component": k, "self_writhe": writhes[k], "shift": framing_name(k, writhes[k])}
                    for k in sorted(writhes)],
        "checks": checks,
    }
    return doc, all(checks.values())


def dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _table_compute(doc: dict) -> str:
    lines = [f"braid {doc['braid']['word']} on {doc['braid']['strands']} strands, "
             f"components {doc['components']}",
             "q a2 t2 dim   (a, t doubled)"]
    lines += [" ".join(f"{v:>3}" for v in row) for row in doc["poincare"]]
    lines.append(f"HOMFLY-PT: {doc['homfly']}")
    for f in doc["framing"]:
        lines.append(f"framing component {f['component']}: {f['shift']}")
    for k, v in doc["checks"].items():
        lines.append(f"[{'PASS' if v else 'FAIL'}] {k}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description="Equivariant triply graded homology "
                                "of braid closures.")
    sub = p.add_subparsers(dest="cmd", required=True)
    c = sub.add_parser("compute", help="homology, operators and checks for one braid")
    c.add_argument("--braid", required=True, help='signed generators, e.g. "1,-2,1"')
    c.add_argument("--strands", type=int)
    c.add_argument("--qmax", type=int, default=24)
    c.add_argument("--witt-max", type=int, default=3)
    c.add_argument("--reps", default="auto", help='"auto" or one strand per component, e.g. "1,3"')
    c.add_argument("--format", choices=("json", "table"), default="json")
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", choices=sorted(SUITES) + ["all"])
    v.add_argument("--qmax", type=int)
    v.add_argument("--witt-max", type=int)
    v.add_argument("--format", choices=("json", "table"), default="table")
    h = sub.add_parser("homfly", help="HOMFLY-PT polynomial of the closure")
    h.add_argument("--braid", required=True)
    h.add_argument("--strands", type=int)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "compute":
            reps = None if args.reps == "auto" else tuple(int(s) for s in args.reps.split(","))
            cfg = RunConfig(parse_braid(args.braid, args.strands), args.qmax, args.witt_max,
                            reps, args.format)
            doc, ok = cmd_compute(cfg)
            sys.stdout.write(dump(doc) if cfg.fmt == "json" else _table_compute(doc))
            return 0 if ok else 1
        if args.cmd == "verify":
            checks = run_suite(args.suite, args.qmax, args.witt_max)
            if args.format == "json":
                sys.stdout.write(dump({"schema": SCHEMA, "checks": [
                    {"suite": c.suite, "name": c.name, "expected": c.expected,
                     "computed": c.computed, "passed": c.passed} for c in checks]}))
            else:
                for c in checks:
                    print(c.line())
                print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
            return 0 if all(c.passed for c in checks) else 1
        word = parse_braid(args.braid, args.strands)
        print(homfly(word))
        return 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
