"""Layered projection systems to dense unweighted hypergraphs
=============================================================

A toy two-layer system is expanded into a vertex- and edge-weighted
3-hypergraph over cube points, the half-cube cover induced by a satisfying
assignment is checked against every edge, and densification turns the
weighted object into a simple unweighted one while keeping the cover.
"""

from fractions import Fraction

from jchlab import (
    LayeredPcp, layer_marginal, build_weighted_hypergraph,
    completeness_cover_check, densify, retained_count_bound, cover_transfers,
)

print("lower-layer sampling marginal for 3 layers:", layer_marginal(3))

pcp = LayeredPcp(layers=(("u",), ("v",)), alphabets=(2, 2),
                 edges=((1, 2, "u", "v", (0, 1)),))
hg = build_weighted_hypergraph(pcp, delta=Fraction(1, 8))
print(f"\nexact hypergraph: {len(hg.edges)} weighted edges, "
      f"total weight {hg.edge_weight_total()}")

good = {(1, "u"): 1, (2, "v"): 1}     # satisfies the identity projection
chk = completeness_cover_check(pcp, hg, good)
print(f"satisfying assignment: cover weight {chk.weight}, "
      f"hits every edge: {chk.all_hit}")

bad = {(1, "u"): 0, (2, "v"): 1}      # violates it
chk = completeness_cover_check(pcp, hg, bad)
print(f"violating assignment: hits every edge: {chk.all_hit}")
if chk.witness:
    print("  missed edge:", sorted(chk.witness, key=repr))

# Monte-Carlo sampling agrees with the exact weights.
mc = build_weighted_hypergraph(pcp, delta=Fraction(1, 8), mode="montecarlo",
                               samples=200_000, seed=11)
pairs = sorted(hg.edges.items(), key=lambda kv: -kv[1])[:3]
print("\nheaviest edges, exact vs sampled:")
for t, w in pairs:
    print(f"  {float(w):.4f} vs {float(mc.edges.get(t, 0)):.4f}")

# Densify a singleton-alphabet system's hypergraph.
tiny = LayeredPcp(layers=(("a",), ("b",)), alphabets=(1, 1),
                  edges=((1, 2, "a", "b", (0,)),))
thg = build_weighted_hypergraph(tiny, delta=0)
cover = completeness_cover_check(tiny, thg, {(1, "a"): 0, (2, "b"): 0}).cover
dense = densify(thg, b=8, c=181, seed=3)
print(f"\ndensified: {dense.replicas} replicas, {len(dense.edges)} kept, "
      f"{dense.deleted} deleted as duplicates")
print("retained-count bound:", float(retained_count_bound(181, len(thg.edges), 8)))
print("cover transfers to the blow-up:", cover_transfers(cover, dense))
