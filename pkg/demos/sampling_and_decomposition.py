"""
Sampling a graph and finding a Hamiltonian decomposition
========================================================

An n-node sample draws one uniform coordinate per node and joins each pair
independently with probability W(x_i, x_j).  Replacing every edge by two
opposite arcs gives a digraph.  That digraph splits into vertex-disjoint
directed cycles exactly when its out/in bipartite graph has a perfect
matching.
"""

# %%
# Draw a sample
# -------------
#
# Samples are counter-addressed: the same seed always gives the same graph,
# whatever chunk size the sampler uses internally.

import numpy as np

from hgraphon import directify, has_hamiltonian_decomposition, sample_graph, verify_decomposition
from hgraphon import validate_step_graphon

g = validate_step_graphon(
    ["0", "0.3", "0.6", "1"],
    [["1", "0.7", "0"], ["0.7", "0", "0.4"], ["0", "0.4", "1"]],
)
sg = sample_graph(g, 40, seed=3)
print(f"{sg.n} nodes, {sg.m} edges")
print("block occupancy:", np.bincount(g.partition.cell_index(sg.coordinates), minlength=3))

# %%
# Decompose
# ---------
#
# The decider returns the cycles; an independent validator checks that they
# use only existing arcs and cover every vertex once.

d = directify(sg)
dec = has_hamiltonian_decomposition(d)
print("decomposable:", dec is not None)
print("cycle lengths:", sorted(len(c) for c in dec.cycles))
print("validator:", verify_decomposition(d, dec))

# %%
# A graph that fails
# ------------------
#
# A star has one centre and three leaves.  Every leaf needs the centre as
# its successor, so at most one leaf can be covered.

from hgraphon.sampler import SampledGraph

star = directify(SampledGraph(4, np.full(4, np.nan), [[0, 1], [0, 2], [0, 3]]))
print("star decomposable:", has_hamiltonian_decomposition(star) is not None)
