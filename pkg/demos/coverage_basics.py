"""Johnson coverage instances and their exact solvers
=====================================================

Build coverage instances over small universes, solve them by exhaustive
enumeration and by bounded branching, and print the closed-form quantities
(the random-extremal uncovered fraction and the inapproximability factor
table) that the rest of the toolkit consumes.
"""

import math
from fractions import Fraction

from jchlab import (
    gen_instance, cov, coverage_fraction, brute_force_max_coverage,
    fpt_cover_decide, turan_random_uncovered, inapprox_factors,
)

# A complete instance: every 3-subset of [6] is an edge, and we may pick
# k = 3 pairs.  Each pair covers exactly n - z + 1 = 4 triples.
inst = gen_instance("complete", n=6, z=3, y=2, k=3)
print(f"complete instance: {inst.num_edges} edges over [{inst.n}]")
print("coverage of {1,2}:", cov((1, 2), inst))

best, rep = brute_force_max_coverage(inst)
print(f"brute force optimum: {best} covering {rep.covered}/{rep.total} "
      f"= {rep.fraction}")

# Three disjoint pairs can never cover a triple that straddles them, so the
# complete instance is not fully coverable at this budget.
decision, witness = fpt_cover_decide(inst)
print("branching decision (full cover?):", decision)

# A sparse random instance usually is coverable.
sparse = gen_instance("random", n=6, z=3, y=2, k=3, m=6, seed=42)
decision, witness = fpt_cover_decide(sparse)
print(f"random m=6 instance fully coverable: {decision}, witness {witness}")
if witness:
    print("  cross-check:", coverage_fraction(witness, sparse))

# The random-extremal benchmark: fraction of z-sets missed by the extremal
# partition construction, converging to 1/e.
print()
for z in (4, 6, 10, 50):
    v = turan_random_uncovered(z)
    shown = str(v) if z <= 6 else f"{float(v):.12f}..."
    print(f"uncovered fraction at z={z:>2}: {shown}  (~{float(v):.5f}, "
          f"1/e = {1/math.e:.5f})")

# Factor tables: what a coverage gap alpha buys for clustering objectives.
print()
for p, delta, alpha, note in (
        (1, 1, 1 - 1 / math.e, "max-coverage-style gap, l1"),
        (2, 1, 1 - 1 / math.e, "max-coverage-style gap, l2"),
        (1, 2, Fraction(7, 8), "triple-coverage gap, l1")):
    t = inapprox_factors(p, delta, alpha)
    print(f"p={p} delta={delta} alpha={float(alpha):.4f}  "
          f"zeta1={float(t.zeta1):.4f} zeta2={float(t.zeta2):.4f}  # {note}")
