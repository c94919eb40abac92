from .matching import BipartiteBoard, hall_hypergraph, hall_set_count, MatchingMaker
from .hamcon import HamConMaker, hamcon_hypergraph, hamcon_bias_guard
from .hampath import HamPathMaker, derive_two_path_params, TwoPathParams

__all__ = [
    "BipartiteBoard",
    "hall_hypergraph",
    "hall_set_count",
    "MatchingMaker",
    "HamConMaker",
    "hamcon_hypergraph",
    "hamcon_bias_guard",
    "HamPathMaker",
    "derive_two_path_params",
    "TwoPathParams",
]
