"""Maker-Breaker positional-game engine.

Implements the biased spanning-tree embedding strategy end to end:
Beck-criterion potential play, the Box game with resets, parallel game
composition, the matching / Hamilton-connectivity / fixed-endpoint
Hamilton-path subgames, and the triangle-factor delaying Breaker,
together with brute-force oracles and a batch experiment CLI.
"""

from .core import GameState, Bias, complete_board, edge_index, edge_endpoints
from .hypergraph import Hypergraph, winner_check
from .runner import run_game, Strategy, Forfeit
from .transcript import Transcript, Outcome
from .potential import beck_sum, criterion_holds, PotentialLedger, PotentialBreaker, fake_moves_wrap
from .boxgame import BoxState, play_rbox, play_box, potential_phi, cbox_breaker_reset, rbox_bridge
from .parallel import inflated_bias, ParallelMaker, SubBoard
from .trees import TreeSpec, degree_census, classify_case, bare_decomposition
from .treeembed import TreeEmbedMaker, ThresholdConfig
from .oracles import minimax_solve, verify_tree_copy, perfect_matching_oracle, hamilton_connected_oracle, hamcon_condition_check

__version__ = "0.1.0"

__all__ = [
    "GameState",
    "Bias",
    "complete_board",
    "edge_index",
    "edge_endpoints",
    "Hypergraph",
    "winner_check",
    "run_game",
    "Strategy",
    "Forfeit",
    "Transcript",
    "Outcome",
    "beck_sum",
    "criterion_holds",
    "PotentialLedger",
    "PotentialBreaker",
    "fake_moves_wrap",
    "BoxState",
    "play_rbox",
    "play_box",
    "potential_phi",
    "cbox_breaker_reset",
    "rbox_bridge",
    "inflated_bias",
    "ParallelMaker",
    "SubBoard",
    "TreeSpec",
    "degree_census",
    "classify_case",
    "bare_decomposition",
    "TreeEmbedMaker",
    "ThresholdConfig",
    "minimax_solve",
    "verify_tree_copy",
    "perfect_matching_oracle",
    "hamilton_connected_oracle",
    "hamcon_condition_check",
    "__version__",
]
