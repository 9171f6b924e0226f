"""
Graphons without a step form
============================

For a general graphon the conditions are read off a discretised support
pattern: an N x N grid whose cells are marked where W is positive at any of
k x k interior sample points.  The uniform vector (1/N, ..., 1/N) then plays
the role of the concentration vector.
"""

# %%
# The product graphon
# -------------------
#
# W(x, y) = xy is positive almost everywhere, so every cell is marked and
# the margin shrinks only because the grid gets finer.

from hgraphon import FamilyGraphon, analyze_extended, validate_step_graphon
from hgraphon.graphon import aligned_resolution
from hgraphon.montecarlo import classify_graphon

prod = FamilyGraphon("product")
for row in analyze_extended(prod, (8, 16, 32)):
    print(row.resolution, row.a_ext, row.b_ext_status.value, row.b_ext_margin)

print(classify_graphon(prod, resolutions=(8, 16)).classification)

# %%
# Agreement with the step verdict
# -------------------------------
#
# When N is a multiple of every breakpoint denominator, the grid pattern is
# the block pattern refined, and the extended verdicts are exact.

g = validate_step_graphon(["0", "0.3", "1"], [[1, 1], [1, 0]])
N = aligned_resolution(g)
for row in analyze_extended(g, (N, 2 * N, 16)):
    tag = "exact" if row.exact else "approximate"
    print(f"N={row.resolution:>3}: A_ext={row.a_ext} B_ext={row.b_ext_status.value} ({tag})")
