"""Building a Hamilton-connected Maker subgraph of a dense region.

The sufficient condition (expansion for small sets, an edge between
all large disjoint sets, with D = log log k) turns into two hypergraph
families over the region's edges; our Maker plays the dual Breaker on
their union, so the opponent can never fully occupy the edge bundle of
any violating cut. Exact enumeration is gated on the usual cap; the
heuristic claims an edge between the two worst-expanding sampled sets.
"""

from __future__ import annotations

import math
from itertools import combinations

from ..core import GameState, Bias, MAKER, BREAKER
from ..hypergraph import Hypergraph
from ..potential import PotentialLedger, potential_breaker_move
from ..runner import Strategy, Forfeit
from ..rng import SeedStream
from .matching import ENUMERATION_CAP, TooLargeError

REGION_FLOOR = 8


def hamcon_bias_guard(k: int, q: int) -> bool:
    """q <= k / log^2 k: the proposition's bias hypothesis."""
    if k < 3:
        return q <= 1
    return q <= k / (math.log(k) ** 2)


def default_degree_slack(k: int) -> int:
    """g(k) = ceil(k / log^2 k), o(k/log k) at scale."""
    return math.ceil(k / (math.log(k) ** 2)) if k >= 3 else 0


def hamcon_set_count(k: int) -> int:
    if k < 3:
        return 0
    D = math.log(math.log(k))
    a_max = math.floor(k / math.log(k))
    total = 0
    for a in range(1, a_max + 1):
        b = k - math.ceil((D + 1) * a)
        if b >= 1 and a + b <= k:
            total += math.comb(k, a) * math.comb(k - a, b)
    big = math.ceil(k / math.log(k))
    if 2 * big <= k:
        total += math.comb(k, big) * math.comb(k - big, big)
    return total


def hamcon_hypergraph(region, board: GameState, cap: int = ENUMERATION_CAP) -> Hypergraph:
    """Edge bundles E(A, B) for the expansion family (|B| = k minus
    ceil((D+1)|A|), the integer realization of the continuous sizes)
    and the large-cut family (|A| = |B| = ceil(k/log k))."""
    region = sorted(region)
    k = len(region)
    if hamcon_set_count(k) > cap:
        raise TooLargeError(f"k={k} needs {hamcon_set_count(k)} sets, over cap {cap}")
    D = math.log(math.log(k))
    a_max = math.floor(k / math.log(k))
    sets = []

    def bundle(A, B):
        out = []
        for u in A:
            for v in B:
                e = board.edge(u, v)
                if board.ownership[e] != BREAKER:
                    out.append(e)
        return out

    for a in range(1, a_max + 1):
        b = k - math.ceil((D + 1) * a)
        if b < 1:
            continue
        for A in combinations(region, a):
            rest = [v for v in region if v not in A]
            for B in combinations(rest, b):
                sets.append(bundle(A, B))
    big = math.ceil(k / math.log(k))
    if 2 * big <= k:
        for A in combinations(region, big):
            rest = [v for v in region if v not in A]
            for B in combinations(rest, big):
                sets.append(bundle(A, B))
    return Hypergraph(board.board_size, sets, allow_empty=True)


class HamConMaker(Strategy):
    """Claims edges of the region until the Maker subgraph passes the
    expansion condition (its success predicate; Hamilton connectivity
    itself is certified by the brute-force oracle in tests)."""

    side = "maker"

    def __init__(self, region, board: GameState, q: int, mode: str = "heuristic", seed: int = 0):
        self.region = sorted(region)
        k = len(self.region)
        if k < REGION_FLOOR:
            raise ValueError(f"region of {k} vertices below the floor {REGION_FLOOR}")
        self.k = k
        self.q = q
        self.mode = mode
        self.name = f"hamcon-{mode}"
        self.rng = SeedStream(seed).stream("hamcon")
        self.elements = frozenset(
            board.edge(u, v) for u, v in combinations(self.region, 2)
        )
        self.moves_made = 0
        self.guards = {"bias_guard": hamcon_bias_guard(k, q), "mode": mode}
        if mode == "exact":
            hg = hamcon_hypergraph(self.region, board)
            self.ledger = PotentialLedger(hg, Bias(p=q, q=1))
        elif mode != "heuristic":
            raise ValueError(f"unknown hamcon mode {mode!r}")

    def move_cap(self, coeff: float = 10.0) -> float:
        """coeff * k log^2 k; realized counts are reported against it."""
        return coeff * self.k * (math.log(self.k) ** 2)

    def maker_adjacency(self, state: GameState):
        index = {v: i for i, v in enumerate(self.region)}
        adj = [[] for _ in self.region]
        for u, v in combinations(self.region, 2):
            if state.ownership[state.edge(u, v)] == MAKER:
                adj[index[u]].append(index[v])
                adj[index[v]].append(index[u])
        return adj

    def moves(self, state: GameState, opponent_elements: list) -> list:
        self.moves_made += 1
        if self.mode == "exact":
            for e in opponent_elements:
                if e in self.elements:
                    self.ledger.apply_claim("maker", e)
            picks = potential_breaker_move(self.ledger, state, 1, allowed=self.elements)
            if not picks:
                raise Forfeit("hamcon: no free region edge remains")
            return picks
        return self._heuristic_move(state)

    def _heuristic_move(self, state: GameState) -> list:
        """Claim a free edge joining the two worst-expanding sampled
        small sets of the current Maker graph."""
        adj = self.maker_adjacency(state)
        k = self.k
        small = max(1, math.floor(k / math.log(k))) if k > 2 else 1
        samples = []
        # singletons first: isolated vertices are the worst expanders
        for i in range(k):
            samples.append((i,))
        for _ in range(50):
            s = self.rng.randint(1, small)
            samples.append(tuple(sorted(self.rng.sample(range(k), s))))

        def expansion(S):
            nb = set()
            for v in S:
                nb.update(adj[v])
            return len(nb - set(S)) / len(S)

        ranked = sorted(samples, key=lambda S: (expansion(S), S))
        worst = ranked[0]
        second = next((S for S in ranked[1:] if not set(S) & set(worst)), None)
        pool_a = [self.region[i] for i in worst]
        pool_b = (
            [self.region[i] for i in second]
            if second
            else [v for v in self.region if v not in pool_a]
        )
        for u in pool_a:
            for v in pool_b:
                if u == v:
                    continue
                e = state.edge(u, v)
                if state.is_free(e):
                    return [e]
        # fall back to any free region edge
        for e in sorted(self.elements):
            if state.is_free(e):
                return [e]
        raise Forfeit("hamcon: no free region edge remains")

    def done(self, state: GameState) -> bool:
        """Success: the Maker subgraph passes the expansion condition,
        and for regions small enough to brute-force, genuinely is
        Hamilton connected. The extra oracle clause matters at desk
        scale, where the asymptotic condition fires far too early."""
        from ..oracles import hamcon_condition_check, hamilton_connected_oracle

        adj = self.maker_adjacency(state)
        ok, _ = hamcon_condition_check(adj, self.k)
        if not ok:
            return False
        if self.k <= 12:
            return hamilton_connected_oracle(adj)
        return True

    def finish(self, state: GameState) -> dict:
        cap = self.move_cap()
        return {
            "guards": dict(self.guards),
            "stats": {
                "hamcon_moves": self.moves_made,
                "hamcon_move_cap": cap,
                "hamcon_cap_exceeded": self.moves_made > cap,
            },
        }
