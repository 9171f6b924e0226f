"""
Deciding the conditions for a step graphon
==========================================

A step graphon is constant on the blocks of a partition of [0, 1].  Its
skeleton records which blocks are nonzero, and its edge polytope is the
convex hull of the skeleton's incidence columns.  This walk-through decides
both conditions for a three-block graphon and prints the certificates.
"""

# %%
# Build the graphon
# -----------------
#
# Breakpoints are parsed as exact fractions, so ``0.3`` really is 3/10.

from hgraphon import (
    concentration_vector,
    has_odd_cycle,
    incidence_matrix,
    skeleton_graph,
    step_membership,
    validate_step_graphon,
)
from hgraphon.montecarlo import classify_graphon

g = validate_step_graphon(
    ["0", "0.3", "0.6", "1"],
    [["1", "0.7", "0"], ["0.7", "0", "0.4"], ["0", "0.4", "1"]],
)
x = concentration_vector(g)
print("concentration vector:", [str(v) for v in x])

# %%
# Skeleton and incidence matrix
# -----------------------------
#
# Loops sit on the diagonal blocks with positive value.  A loop column is a
# unit vector and an edge column puts 1/2 on each endpoint.

s = skeleton_graph(g)
print("skeleton edges:", s.edges)
for row in incidence_matrix(s):
    print("  ", " ".join(f"{str(v):>4}" for v in row))
print("odd cycle present:", has_odd_cycle(s))

# %%
# Membership in the edge polytope
# -------------------------------
#
# The exact LP maximises the smallest convex coefficient.  A positive optimum
# puts the concentration vector in the relative interior.

v = step_membership(g)
print("status:", v.status.value)
print("lambda:", [str(c) for c in v.certificate], "margin:", v.margin)

# %%
# Shrinking the middle block to zero weight on one side changes the verdict.
# With blocks W11 = W12 = 1 and W22 = 0 the second block can only be reached
# through the first, so it can hold at most half the mass.

tight = validate_step_graphon(["0", "0.3", "1"], [[1, 1], [1, 0]])
out = step_membership(tight)
print("two-block status:", out.status.value)
print("separating vector:", [str(c) for c in out.separating_certificate])

# %%
# The combined verdict
# --------------------

for name, graphon in [("three blocks", g), ("two blocks", tight)]:
    verdict = classify_graphon(graphon)
    print(f"{name:>12}: {verdict.classification} ({verdict.basis})")
