"""Homology of the trefoil, its Euler characteristic and the Witt action.

    python demos/trefoil.py [q_max]
"""
import sys

from artifact import (bracket, euler_characteristic, hh_of_complex, homfly,
                      homfly_unreduced_series, homology, parse_braid, poincare)
from artifact.gradedlin import operator_piece

q_max = int(sys.argv[1]) if len(sys.argv) > 1 else 12
word = parse_braid("1,1,1")
C = bracket(word)
print("complex:", C.summary())
H = homology(hh_of_complex(C), q_max)

print("\n q  a2  t2  dim   (a and t doubled)")
for q, a, t, d in poincare(H):
    print(f"{q:2} {a:3} {t:3} {d:4}")

chi = euler_characteristic(H)
print("\nHOMFLY-PT:", homfly(word))
print("Euler characteristic agrees with the oracle series:",
      chi == homfly_unreduced_series(word, q_max))

# L_1 on the two lowest pieces of the top row
for q in (0, 2):
    piece = (q, -1, 1)
    print(f"L_1 from {piece}:", [[str(c) for c in r] for r in operator_piece(H, ("L", 1), *piece)])
