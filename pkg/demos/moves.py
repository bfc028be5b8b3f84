"""Braid moves leave the homology unchanged; stabilization shifts the Witt action.

    python demos/moves.py [q_max]
"""
import sys

from artifact.rouquier import parse_braid
from artifact.verify import pipeline, witt_ratio_shift

q = int(sys.argv[1]) if len(sys.argv) > 1 else 10


def dims(text, n):
    return pipeline(parse_braid(text, n), q).dims


pairs = [("R2", ("1,-1", 2), ("", 2)),
         ("R3", ("1,2,1", 3), ("2,1,2", 3)),
         ("conjugation", ("1,1,2", 3), ("2,1,1", 3)),
         ("stabilization", ("1", 2), ("", 1)),
         ("stabilization", ("-1", 2), ("", 1))]
for name, a, b in pairs:
    print(f"{name:14} <{a[0]}> vs <{b[0]}>: equal dims = {dims(*a) == dims(*b)}")

print("\nL_m / lambda^m after closing one extra crossing, minus the same for the unknot:")
H0 = pipeline(parse_braid("", 1), q)
for text in ("1", "-1"):
    H = pipeline(parse_braid(text, 2), q)
    row = []
    for m in range(4):
        diffs, _ = witt_ratio_shift(H, H0, "x1", "x1", m, q)
        row.append([str(v) for v in sorted(set(diffs.values()))])
    print(f"  <{text}>:", ", ".join(f"m={m}: {v}" for m, v in enumerate(row)))
