"""The adversary zoo plus assorted baseline Makers.

All tie-breaks are by lowest element or vertex id so identical seeds
give identical playouts.
"""

from __future__ import annotations

import itertools

from .core import GameState, MAKER, BREAKER
from .runner import Strategy
from .rng import SeedStream


class NullBreaker(Strategy):
    """Claims nothing, ever."""

    side = "breaker"
    name = "null"

    def moves(self, state, opponent_elements):
        return []


class RandomBreaker(Strategy):
    side = "breaker"
    name = "random"

    def __init__(self, q: int, seed: int = 0):
        self.q = q
        self.rng = SeedStream(seed).stream("random-breaker")

    def moves(self, state, opponent_elements):
        free = state.free_elements()
        take = min(self.q, len(free))
        return sorted(self.rng.sample(free, take))


class LowestFreeBreaker(Strategy):
    side = "breaker"
    name = "lowest"

    def __init__(self, q: int):
        self.q = q

    def moves(self, state, opponent_elements):
        picks = []
        for e in range(state.board_size):
            if state.is_free(e):
                picks.append(e)
                if len(picks) == self.q:
                    break
        return picks


class MaxFreeDegreeBreaker(Strategy):
    """Edge boards: claims at the vertex with most free incident edges,
    toward its own busiest free neighbor."""

    side = "breaker"
    name = "max-free-degree"

    def __init__(self, q: int):
        self.q = q

    def moves(self, state: GameState, opponent_elements):
        if not state.is_edge_board:
            return LowestFreeBreaker(self.q).moves(state, opponent_elements)
        picks = []
        claimed = set()
        n = state.vertex_count
        # free degree straight from the caches: n-1 minus owned degrees
        free_deg = [
            n - 1 - state.maker_degrees[v] - state.breaker_degrees[v]
            for v in range(n)
        ]
        for _ in range(self.q):
            order = sorted(range(n), key=lambda x: (-free_deg[x], x))
            e = None
            for v in order:
                if free_deg[v] <= 0:
                    break
                nbrs = [
                    w
                    for w in range(n)
                    if w != v
                    and state.is_free(state.edge(v, w))
                    and state.edge(v, w) not in claimed
                ]
                if nbrs:
                    w = max(nbrs, key=lambda x: (free_deg[x], -x))
                    e = state.edge(v, w)
                    free_deg[v] -= 1
                    free_deg[w] -= 1
                    break
            if e is None:
                break
            picks.append(e)
            claimed.add(e)
        return picks


class IsolatorBreaker(Strategy):
    """Attacks the vertex of lowest Maker degree, claiming its free
    edges; the classic isolation attack shape."""

    side = "breaker"
    name = "isolator"

    def __init__(self, q: int):
        self.q = q

    def moves(self, state: GameState, opponent_elements):
        if not state.is_edge_board:
            return LowestFreeBreaker(self.q).moves(state, opponent_elements)
        n = state.vertex_count
        picks = []
        claimed = set()
        order = sorted(range(n), key=lambda v: (state.degree("maker", v), v))
        for _ in range(self.q):
            e = None
            for target in order:
                nbrs = (
                    w
                    for w in range(n)
                    if w != target
                    and state.is_free(state.edge(target, w))
                    and state.edge(target, w) not in claimed
                )
                w = next(nbrs, None)
                if w is not None:
                    e = state.edge(target, w)
                    break
            if e is None:
                break
            picks.append(e)
            claimed.add(e)
        return picks


class TriangleDelayerBreaker(Strategy):
    """Responds to Maker's edge (x, y) by stealing a triangle closer:
    an edge (y, z) with (x, z) already Maker's, else (x, z) with (y, z)
    Maker's, else the lowest free edge. Forces a degree-3 vertex into
    every Maker triangle."""

    side = "breaker"
    name = "triangle-delayer"

    def moves(self, state: GameState, opponent_elements):
        pick = None
        if opponent_elements:
            x, y = state.endpoints(opponent_elements[-1])
            pick = self._closing_steal(state, x, y)
            if pick is None:
                pick = self._closing_steal(state, y, x)
        if pick is None:
            pick = next((e for e in range(state.board_size) if state.is_free(e)), None)
            self.annotate(rule="fallback")
        if pick is None:
            return []
        return [pick]

    def _closing_steal(self, state: GameState, x: int, y: int):
        # z with (x, z) Maker-owned and (y, z) free -> claim (y, z)
        n = state.vertex_count
        for z in range(n):
            if z in (x, y):
                continue
            if state.ownership[state.edge(x, z)] == MAKER and state.is_free(state.edge(y, z)):
                self.annotate(rule="steal")
                return state.edge(y, z)
        return None


def triangle_invariant_check(maker_degrees, maker_edge_set) -> bool:
    """True iff every Maker triangle has a vertex of Maker degree >= 3."""
    verts = sorted({v for e in maker_edge_set for v in e})
    for a, b, c in itertools.combinations(verts, 3):
        if (
            (a, b) in maker_edge_set
            and (b, c) in maker_edge_set
            and (a, c) in maker_edge_set
        ):
            if max(maker_degrees[a], maker_degrees[b], maker_degrees[c]) < 3:
                return False
    return True


def find_triangle_factor(n: int, maker_edge_set):
    """A partition of 0..n-1 into Maker triangles, or None. n <= ~18."""
    if n % 3 != 0:
        return None

    def solve(remaining):
        if not remaining:
            return []
        a = min(remaining)
        rest = sorted(remaining - {a})
        for i, b in enumerate(rest):
            if (a, b) not in maker_edge_set:
                continue
            for c in rest[i + 1 :]:
                if (b, c) in maker_edge_set and (a, c) in maker_edge_set:
                    sub = solve(remaining - {a, b, c})
                    if sub is not None:
                        return [(a, b, c)] + sub
        return None

    return solve(frozenset(range(n)))


# -- makers -------------------------------------------------------------------


class LowestFreeMaker(Strategy):
    side = "maker"
    name = "lowest"

    def __init__(self, p: int = 1):
        self.p = p

    def moves(self, state, opponent_elements):
        picks = []
        for e in range(state.board_size):
            if state.is_free(e):
                picks.append(e)
                if len(picks) == self.p:
                    break
        return picks


class RandomMaker(Strategy):
    side = "maker"
    name = "random"

    def __init__(self, seed: int = 0, p: int = 1):
        self.p = p
        self.rng = SeedStream(seed).stream("random-maker")

    def moves(self, state, opponent_elements):
        free = state.free_elements()
        take = min(self.p, len(free))
        return sorted(self.rng.sample(free, take))


class HubTriangleMaker(Strategy):
    """Seeks a triangle factor against closer-stealing Breakers.

    Closes a triangle outright whenever two of its edges are already
    owned and the third is free; otherwise pumps spokes from a high-id
    hub among uncovered vertices so that the opponent's lowest-id steal
    rule burns its blocks on decoys.
    """

    side = "maker"
    name = "hub-triangles"

    def __init__(self):
        self.covered = set()

    def moves(self, state: GameState, opponent_elements):
        n = state.vertex_count
        maker = {frozenset(state.endpoints(e)) for e in state.owned_elements("maker")}
        self._mark_covered(n, maker)
        uncovered = [v for v in range(n) if v not in self.covered]
        # 1. close a triangle on three uncovered vertices
        for a, b, c in itertools.combinations(sorted(uncovered, reverse=True), 3):
            edges = [frozenset((a, b)), frozenset((b, c)), frozenset((a, c))]
            owned = [e for e in edges if e in maker]
            missing = [e for e in edges if e not in maker]
            if len(owned) == 2 and len(missing) == 1:
                u, v = sorted(missing[0])
                e = state.edge(u, v)
                if state.is_free(e):
                    self.annotate(rule="close")
                    return [e]
        # 2. pump a spoke from the highest-id uncovered hub
        if uncovered:
            hub = max(uncovered, key=lambda v: (state.degree("maker", v), v))
            targets = [
                w
                for w in sorted(uncovered, reverse=True)
                if w != hub and state.is_free(state.edge(hub, w))
                and frozenset((hub, w)) not in maker
            ]
            if targets:
                self.annotate(rule="spoke")
                return [state.edge(hub, targets[0])]
        # 3. fallback: lowest free edge
        e = next((e for e in range(state.board_size) if state.is_free(e)), None)
        self.annotate(rule="fallback")
        return [e] if e is not None else []

    def _mark_covered(self, n, maker):
        factor = []
        uncovered = set(range(n)) - self.covered
        for a, b, c in itertools.combinations(sorted(uncovered), 3):
            if (
                frozenset((a, b)) in maker
                and frozenset((b, c)) in maker
                and frozenset((a, c)) in maker
                and not {a, b, c} & set(itertools.chain(*factor))
            ):
                factor.append((a, b, c))
        for tri in factor:
            self.covered.update(tri)


class RandomizedHubMaker(Strategy):
    """Triangle seeker with seeded random tie-breaks.

    Same shape as :class:`HubTriangleMaker` (close a completable
    uncovered triangle, else pump spokes weighted toward busy hubs) but
    samples among the candidates, so restarting over seeds explores
    many lines against a deterministic opponent.
    """

    side = "maker"
    name = "randomized-hub"

    def __init__(self, seed: int = 0):
        self.rng = SeedStream(seed).stream("randomized-hub")
        self.covered = set()

    def moves(self, state: GameState, opponent_elements):
        n = state.vertex_count
        maker = {frozenset(state.endpoints(e)) for e in state.owned_elements("maker")}
        uncovered = sorted(set(range(n)) - self.covered)
        for tri in itertools.combinations(uncovered, 3):
            a, b, c = tri
            if all(frozenset(p) in maker for p in ((a, b), (b, c), (a, c))):
                self.covered.update(tri)
        uncovered = [v for v in range(n) if v not in self.covered]
        closes = []
        for a, b, c in itertools.combinations(uncovered, 3):
            edges = [frozenset((a, b)), frozenset((b, c)), frozenset((a, c))]
            missing = [e for e in edges if e not in maker]
            if len(missing) == 1:
                u, v = sorted(missing[0])
                if state.is_free(state.edge(u, v)):
                    closes.append(state.edge(u, v))
        if closes:
            self.annotate(rule="close")
            return [self.rng.choice(closes)]
        cands = [
            (a, b)
            for a in uncovered
            for b in uncovered
            if a < b and state.is_free(state.edge(a, b))
        ]
        if cands:
            weights = [
                state.degree("maker", a) + state.degree("maker", b) + 1
                for a, b in cands
            ]
            a, b = self.rng.choices(cands, weights=weights)[0]
            self.annotate(rule="spoke")
            return [state.edge(a, b)]
        free = state.free_elements()
        self.annotate(rule="fallback")
        return [free[0]] if free else []


BREAKER_ZOO = {
    "null": lambda q, seed: NullBreaker(),
    "random": lambda q, seed: RandomBreaker(q, seed),
    "lowest": lambda q, seed: LowestFreeBreaker(q),
    "max-free-degree": lambda q, seed: MaxFreeDegreeBreaker(q),
    "isolator": lambda q, seed: IsolatorBreaker(q),
    "triangle-delayer": lambda q, seed: TriangleDelayerBreaker(),
}
