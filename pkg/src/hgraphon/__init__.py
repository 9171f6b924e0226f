"""Deciding, certifying and simulating the H-property of graphons."""
from .errors import HGraphonError
from .graphon import (
    FamilyGraphon,
    Graphon,
    GridGraphon,
    Partition,
    StepGraphon,
    aligned_resolution,
    concentration_vector,
    evaluate,
    graphon_from_dict,
    graphon_to_dict,
    load_graphon,
    refine_partition,
    saturate,
    validate_step_graphon,
)
from .sampler import DirectedGraph, SampledGraph, directify, sample_graph
from .skeleton import (
    SkeletonGraph,
    all_components_nonbipartite,
    has_odd_cycle,
    incidence_matrix,
    skeleton_graph,
)
from .lp import lp_max_min_coefficient
from .polytope import MembershipVerdict, Status, polytope_membership, step_membership
from .hamdec import (
    HamiltonianDecomposition,
    brute_force_hd,
    has_hamiltonian_decomposition,
    max_bipartite_matching,
    verify_decomposition,
)
from .extension import (
    ExtVerdict,
    SupportPattern,
    analyze_extended,
    check_A_ext,
    check_B_ext,
    discretize_support,
    mu_sigma,
    phi_discrete,
)
from .montecarlo import (
    Classification,
    ExperimentReport,
    TheoremVerdict,
    classify_graphon,
    run_experiment,
    wilson_interval,
)

__version__ = "0.1.0"
