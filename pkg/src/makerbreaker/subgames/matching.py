"""Perfect matching in a balanced bipartite region via the dual Hall game.

A Maker graph satisfies Hall's condition as soon as it hits every
"blocking pair": an A-set of size t against a B-set of size r-t+1 with
no Maker edge between them. The Hall game makes those bipartite edge
bundles the winning sets and hands the opponent the Maker role in it:
our Maker plays the potential Breaker there, killing every bundle, so
by exhaustion his graph satisfies Hall's condition and contains a
perfect matching.

Exact mode is gated on the enumeration cap and on Beck's criterion for
the dual game; everything larger runs the degree heuristic, whose
output is still checked by the matching oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from ..core import GameState, Bias, MAKER, BREAKER
from ..hypergraph import Hypergraph
from ..potential import PotentialLedger, criterion_holds, potential_breaker_move
from ..runner import Strategy, Forfeit
from ..oracles import perfect_matching_oracle

ENUMERATION_CAP = 1_000_000


class TooLargeError(ValueError):
    """Hall enumeration would exceed the cap; use heuristic mode."""


@dataclass
class BipartiteBoard:
    """A balanced bipartite sub-board inside a host edge board.

    ``a_vertices`` and ``b_vertices`` are host vertex ids; the playable
    elements are the host edges between them that are not Breaker's.
    """

    a_vertices: list
    b_vertices: list
    host: GameState

    def __post_init__(self):
        if len(self.a_vertices) != len(self.b_vertices):
            raise ValueError("bipartite board must be balanced")
        self.r = len(self.a_vertices)
        self.elements = []
        self.pair_to_element = {}
        for i, u in enumerate(self.a_vertices):
            for j, v in enumerate(self.b_vertices):
                e = self.host.edge(u, v)
                if self.host.ownership[e] != BREAKER:
                    self.elements.append(e)
                    self.pair_to_element[(i, j)] = e
        self.element_set = frozenset(self.elements)

    def min_degree(self) -> int:
        if self.r == 0:
            return 0
        deg_a = [0] * self.r
        deg_b = [0] * self.r
        for (i, j) in self.pair_to_element:
            deg_a[i] += 1
            deg_b[j] += 1
        return min(min(deg_a), min(deg_b))

    def degree_slack(self) -> int:
        """g such that every vertex has board degree >= r - g."""
        return self.r - self.min_degree()

    def maker_adjacency(self, state: GameState):
        """A-indexed adjacency over Maker-claimed board edges."""
        adj = [[] for _ in range(self.r)]
        for (i, j), e in self.pair_to_element.items():
            if state.ownership[e] == MAKER:
                adj[i].append(j)
        return adj

    def maker_matching(self, state: GameState):
        return perfect_matching_oracle(self.maker_adjacency(state), self.r)

    def has_perfect_matching(self, state: GameState) -> bool:
        return len(self.maker_matching(state)) == self.r


def hall_set_count(r: int) -> int:
    """Closed form for the number of Hall winning sets on K_{r,r}."""
    return sum(math.comb(r, t) * math.comb(r, r - t + 1) for t in range(1, r + 1))


def hall_hypergraph(board: BipartiteBoard, cap: int = ENUMERATION_CAP) -> Hypergraph:
    """Winning sets: board edges of every induced A-subset x B-subset
    pair with sizes (t, r-t+1), t = 1..r."""
    r = board.r
    if hall_set_count(r) > cap:
        raise TooLargeError(
            f"r={r} needs {hall_set_count(r)} Hall sets, over the cap {cap}"
        )
    sets = []
    a_idx = range(r)
    b_idx = range(r)
    for t in range(1, r + 1):
        for A in combinations(a_idx, t):
            for B in combinations(b_idx, r - t + 1):
                s = [
                    board.pair_to_element[(i, j)]
                    for i in A
                    for j in B
                    if (i, j) in board.pair_to_element
                ]
                sets.append(s)
    return Hypergraph(board.host.board_size, sets, allow_empty=True)


def matching_bias_guard(r: int, q: int) -> bool:
    """q <= r / (12 log2 r): the proposition's bias hypothesis."""
    if r < 2:
        return q <= 1
    return q <= r / (12 * math.log2(r))


class MatchingMaker(Strategy):
    """Claims the edges of a perfect matching of the bipartite board.

    exact mode: plays the potential Breaker of the dual (q:1) Hall game
    (the opponent's q claims are HallMaker's, ours are HallBreaker's).
    heuristic mode: the free edge at the unsaturated A-vertex of
    minimum Maker degree toward the B-vertex of least Breaker threat
    (threat = Breaker degree, then Maker degree, then id).
    """

    side = "maker"

    def __init__(self, board: BipartiteBoard, q: int, mode: str = "exact"):
        self.board = board
        self.q = q
        self.mode = mode
        self.name = f"matching-{mode}"
        self.guards = {
            "bias_guard": matching_bias_guard(board.r, q),
            "mode": mode,
        }
        if mode == "exact":
            hg = hall_hypergraph(board)  # raises TooLargeError over the cap
            dual_bias = Bias(p=q, q=1)
            self.guards["criterion_holds"] = criterion_holds(hg, dual_bias)
            if not self.guards["criterion_holds"]:
                raise ValueError(
                    "exact matching mode requires Beck's criterion on the dual Hall game"
                )
            self.ledger = PotentialLedger(hg, dual_bias)
        elif mode != "heuristic":
            raise ValueError(f"unknown matching mode {mode!r}")

    def done(self, state: GameState) -> bool:
        return self.board.has_perfect_matching(state)

    def moves(self, state: GameState, opponent_elements: list) -> list:
        if self.mode == "exact":
            return self._exact_move(state, opponent_elements)
        return self._heuristic_move(state)

    def _exact_move(self, state: GameState, opponent_elements: list) -> list:
        for e in opponent_elements:
            if e in self.board.element_set:
                self.ledger.apply_claim("maker", e)  # opponent is HallMaker
        picks = potential_breaker_move(self.ledger, state, 1, allowed=self.board.elements)
        if not picks:
            raise Forfeit("matching: no free board edge remains")
        return picks

    def _heuristic_move(self, state: GameState) -> list:
        board = self.board
        matching = board.maker_matching(state)
        unsat = [i for i in range(board.r) if i not in matching]
        if not unsat:
            return []
        deg_a = [0] * board.r
        maker_deg_b = [0] * board.r
        breaker_deg_b = [0] * board.r
        for (i, j), e in board.pair_to_element.items():
            o = state.ownership[e]
            if o == MAKER:
                deg_a[i] += 1
                maker_deg_b[j] += 1
            elif o == BREAKER:
                breaker_deg_b[j] += 1
        order = sorted(unsat, key=lambda i: (deg_a[i], i))
        for i in order:
            free_js = [
                j
                for j in range(board.r)
                if (i, j) in board.pair_to_element
                and state.is_free(board.pair_to_element[(i, j)])
            ]
            if free_js:
                j = min(free_js, key=lambda j: (breaker_deg_b[j], maker_deg_b[j], j))
                return [board.pair_to_element[(i, j)]]
        raise Forfeit(f"matching: unsaturated A-vertex {order[0]} has no free edge")

    def finish(self, state: GameState) -> dict:
        return {"guards": dict(self.guards)}
