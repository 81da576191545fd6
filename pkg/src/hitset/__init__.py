"""LP-guided weighted epsilon-net sampling for geometric minimum hitting set."""

from .baselines import SizeCapExceededError, exact_hitting_set, greedy_hitting_set, is_hitting_set
from .geometry import GeometryInstance, containment, gen_instance, scc_family
from .instance_io import read_instance, write_instance
from .lp import LPSolution, solve_lp
from .netfinder import (AlgoConfig, OracleCapError, RunReport, find_hitting_set,
                        initial_sample, is_epsilon_net, resample_set,
                        sample_epsilon_net, unhit_oracle)
from .packing import (Packing, UnitDistanceGraph, build_unit_distance_graph,
                      check_edge_bound, check_total_weight_bound,
                      greedy_maximal_packing, is_packing,
                      monte_carlo_packing_lemma, shallow_packing_bound)
from .setsystem import (EmptyRangeError, Projection, SetSystem, WeightVector,
                        count_shallow_cells, count_shallow_cells_exact, project,
                        sym_diff_weight, vc_dimension_exact, weight_of)

__version__ = "0.1.0"

__all__ = [
    "AlgoConfig", "EmptyRangeError", "GeometryInstance", "LPSolution",
    "OracleCapError", "Packing", "Projection", "RunReport", "SetSystem",
    "SizeCapExceededError", "UnitDistanceGraph", "WeightVector",
    "build_unit_distance_graph", "check_edge_bound", "check_total_weight_bound",
    "containment", "count_shallow_cells", "count_shallow_cells_exact",
    "exact_hitting_set", "find_hitting_set", "gen_instance",
    "greedy_hitting_set", "greedy_maximal_packing", "initial_sample",
    "is_epsilon_net", "is_hitting_set", "is_packing",
    "monte_carlo_packing_lemma", "project", "read_instance", "resample_set",
    "sample_epsilon_net", "scc_family", "shallow_packing_bound", "solve_lp",
    "sym_diff_weight", "unhit_oracle", "vc_dimension_exact", "weight_of",
    "write_instance",
]
