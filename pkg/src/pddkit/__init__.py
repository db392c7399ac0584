"""Phylogenetic diversity maximisation under food-web viability constraints."""

from .errors import (
    FormatError,
    InvalidInstanceError,
    NotACliqueModulatorError,
    OracleTooLargeError,
    PDDError,
    UnknownTaxonError,
)
from .foodweb import (
    FoodWeb,
    is_directed_bipartite,
    reach_down,
    reach_up,
    topological_order_clique,
)
from .instance import EPSILON, GAMMA, ONE, Instance, Solution, ViabilityMode, validate_instance
from .kernel import KernelTrace, apply_rr1, apply_rr2, find_clique_modulator, kernelize
from .oracle import brute_force_oracle
from .reductions import (
    CliqueInput,
    ReductionReceipt,
    clique_gadget_d,
    clique_gadget_dbar,
    cross_compose,
    eps_to_alpha,
    one_to_alpha_variant_a,
    one_to_alpha_variant_b,
    verify_equivalent,
)
from .solver import SolveOutcome, greedy_max_pd, pd_upper_bound, solve_exact
from .tree import (
    PhyloTree,
    contract_all,
    contract_some,
    offspring,
    path_edges,
    pd,
    star,
    suppress_degree2,
)
from .viability import (
    ViabilityReport,
    is_alpha_viable,
    is_eps_viable,
    is_gamma_viable,
    is_one_viable_closure,
    is_viable,
    one_viable_closure,
)

__version__ = "0.1.0"
