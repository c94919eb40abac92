"""Ground-truth brute-force solvers and graph checkers.

Everything here is pure given its inputs and deliberately independent
of the strategy modules it certifies: the minimax solver explores the
full game tree, the matching oracle runs augmenting paths, and the
Hamilton checkers do exhaustive search with pruning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import GameState, Bias, FREE, MAKER, BREAKER
from .hypergraph import Hypergraph


@dataclass
class SolveResult:
    winner: str | None  # None means inconclusive (node cap)
    maker_win_length: int | None
    nodes: int


class _NodeCap(Exception):
    pass


def minimax_solve(
    hg: Hypergraph,
    bias: Bias,
    first: str,
    node_cap: int = 5_000_000,
    max_elements: int = 16,
    state: GameState | None = None,
) -> SolveResult:
    """Exact game value under optimal play on a small explicit board.

    Maker minimizes the number of his claims until a win; Breaker
    maximizes the delay when losing. Positions are memoized on the
    ownership signature plus whose claim is next. Exceeding the node
    cap yields an inconclusive result, never a wrong one.
    """
    if hg.board_size > max_elements:
        raise ValueError(f"board of {hg.board_size} elements exceeds guard {max_elements}")
    if state is None:
        state = GameState.element_board(hg.board_size)
    sets = [frozenset(s) for s in hg.winning_sets]
    own = bytearray(state.ownership)
    memo: dict = {}
    counter = [0]
    INF = hg.board_size + 2

    def maker_done() -> bool:
        return any(all(own[e] == MAKER for e in s) for s in sets)

    def breaker_done() -> bool:
        # every set already contains a Breaker element: Maker can never win
        return all(any(own[e] == BREAKER for e in s) for s in sets)

    def free_list():
        return [e for e in range(len(own)) if own[e] == FREE]

    def solve(side: str, remaining: int, maker_claims: int):
        # returns optimal Maker win length from here, or None for Breaker win
        counter[0] += 1
        if counter[0] > node_cap:
            raise _NodeCap
        if maker_done():
            return maker_claims
        if not sets or breaker_done():
            return None
        free = free_list()
        if not free:
            return None
        key = (bytes(own), side, remaining)
        if key in memo:
            base = memo[key]
            return None if base is None else base + maker_claims
        if side == "maker":
            best = None
            for e in free:
                own[e] = MAKER
                nxt_rem = remaining - 1
                if nxt_rem > 0:
                    sub = solve("maker", nxt_rem, maker_claims + 1)
                else:
                    sub = solve("breaker", bias.q, maker_claims + 1)
                own[e] = FREE
                if sub is not None and (best is None or sub < best):
                    best = sub
                    if best == maker_claims + 1:
                        break
            memo[key] = None if best is None else best - maker_claims
            return best
        else:
            worst = -1  # breaker prefers None (win); else maximize length
            breaker_escapes = False
            for e in free:
                own[e] = BREAKER
                nxt_rem = remaining - 1
                if nxt_rem > 0 and len(free) > 1:
                    sub = solve("breaker", nxt_rem, maker_claims)
                else:
                    sub = solve("maker", bias.p, maker_claims)
                own[e] = FREE
                if sub is None:
                    breaker_escapes = True
                    break
                worst = max(worst, sub)
            if breaker_escapes:
                memo[key] = None
                return None
            memo[key] = worst - maker_claims
            return worst

    try:
        length = solve(first, bias.of(first), 0)
    except _NodeCap:
        return SolveResult(None, None, counter[0])
    if length is None:
        return SolveResult("breaker", None, counter[0])
    return SolveResult("maker", length, counter[0])


def minimax_best_maker_claim(
    hg: Hypergraph, bias: Bias, state: GameState, remaining: int
) -> int:
    """The Maker claim a minimax-optimal Maker makes from this position.

    Picks a claim that preserves a Maker win with minimal win length if
    one exists, otherwise the lowest free element.
    """
    free = [e for e in range(state.board_size) if state.ownership[e] == FREE]
    best_e, best_len = None, None
    for e in free:
        probe = state.copy()
        probe.apply_claim("maker", e)
        if any(all(probe.ownership[x] == MAKER for x in s) for s in hg.winning_sets):
            return e
        nxt = remaining - 1
        if nxt > 0:
            res = minimax_solve(hg, bias, "maker", state=probe)
        else:
            res = minimax_solve(hg, bias, "breaker", state=probe)
        if res.winner == "maker" and (best_len is None or res.maker_win_length < best_len):
            best_e, best_len = e, res.maker_win_length
    return best_e if best_e is not None else free[0]


# -- graph checkers ------------------------------------------------------------


def verify_tree_copy(tree_adj, maker_edges, f) -> bool:
    """True iff f embeds the tree: injective, every tree edge a Maker edge.

    ``tree_adj`` is an adjacency list, ``maker_edges`` a set of
    canonical (u, v) pairs with u < v, ``f`` a mapping defined on every
    tree vertex.
    """
    n = len(tree_adj)
    if len(f) != n:
        raise ValueError("partial embedding: f must be total on the tree")
    images = set(f[x] for x in range(n))
    if len(images) != n:
        return False
    for x in range(n):
        for y in tree_adj[x]:
            if x < y:
                u, v = f[x], f[y]
                if u > v:
                    u, v = v, u
                if (u, v) not in maker_edges:
                    return False
    return True


def perfect_matching_oracle(adj_a, size_b: int):
    """Maximum bipartite matching via augmenting paths.

    ``adj_a[i]`` lists the B-vertices adjacent to A-vertex i. Returns
    the matching as a dict A-index -> B-index (maximum, not necessarily
    perfect; callers compare its size to r).
    """
    match_b = [-1] * size_b

    def try_assign(a, seen):
        for b in adj_a[a]:
            if not seen[b]:
                seen[b] = True
                if match_b[b] == -1 or try_assign(match_b[b], seen):
                    match_b[b] = a
                    return True
        return False

    for a in range(len(adj_a)):
        try_assign(a, [False] * size_b)
    return {match_b[b]: b for b in range(size_b) if match_b[b] != -1}


def hamilton_path_between(adj, a: int, b: int, node_cap: int = 2_000_000):
    """A Hamilton path from a to b in the graph, or None.

    Backtracking with a most-constrained-next heuristic plus a
    connectivity prune; intended for the dense Maker graphs the
    strategies produce. Raises RuntimeError at the node cap rather
    than answering wrongly.
    """
    n = len(adj)
    if n == 1:
        return [a] if a == b else None
    if a == b:
        return None
    nodes = [0]

    adj_sets = [set(nb) for nb in adj]
    path = [a]
    used = [False] * n
    used[a] = True

    def feasible():
        # every unused vertex must stay reachable from the head through
        # unused vertices, else the partial path is a dead end
        head = path[-1]
        targets = [v for v in range(n) if not used[v]]
        if not targets:
            return True
        seen = set(w for w in adj_sets[head] if not used[w])
        stack = list(seen)
        while stack:
            v = stack.pop()
            for w in adj_sets[v]:
                if not used[w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return all(v in seen for v in targets)

    def extend():
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise RuntimeError("hamilton_path_between: node cap exceeded")
        head = path[-1]
        if len(path) == n:
            return head == b
        cands = [w for w in adj_sets[head] if not used[w] and (w != b or len(path) == n - 1)]
        # most-constrained first: fewest unused neighbors
        cands.sort(key=lambda w: (sum(1 for x in adj_sets[w] if not used[x]), w))
        for w in cands:
            path.append(w)
            used[w] = True
            if feasible() and extend():
                return True
            path.pop()
            used[w] = False
        return False

    if extend():
        return list(path)
    return None


def hamilton_connected_oracle(adj, vertex_cap: int = 12) -> bool:
    """True iff every vertex pair is joined by a Hamilton path."""
    n = len(adj)
    if n > vertex_cap:
        raise ValueError(f"graph of {n} vertices exceeds oracle cap {vertex_cap}")
    if n == 1:
        return True
    for u in range(n):
        for w in range(u + 1, n):
            if hamilton_path_between(adj, u, w) is None:
                return False
    return True


def hamcon_condition_check(adj, k: int | None = None, sample_cap: int = 200_000, rng=None):
    """The two-part expansion condition sufficient for Hamilton connectivity.

    With D = log log k: (1) every vertex set S with |S| <= k/log k has
    |N(S)| >= D|S|; (2) there is an edge between any two disjoint sets
    of size >= k/log k. Exact for small k; falls back to seeded random
    sampling above the cap, with the sample count reported.

    Returns (ok, info) where info records the regime.
    """
    from itertools import combinations
    import random as _random

    n = len(adj)
    if k is None:
        k = n
    if n == 0:
        return False, {"regime": "empty"}
    D = math.log(math.log(k)) if k > 1 and math.log(k) > 1 else 0.0
    small = max(1, math.floor(k / math.log(k))) if k > 1 else 1
    adj_sets = [set(nb) for nb in adj]
    info = {"D": D, "small_set_bound": small, "regime": "exact", "samples": 0}

    def nbhd(S):
        out = set()
        for v in S:
            out |= adj_sets[v]
        return out - set(S)

    # condition 1
    total = sum(math.comb(n, s) for s in range(1, small + 1))
    if total <= sample_cap:
        for s in range(1, small + 1):
            for S in combinations(range(n), s):
                if len(nbhd(S)) < D * s:
                    return False, info
    else:
        info["regime"] = "sampled"
        rnd = rng or _random.Random(0)
        samples = sample_cap
        info["samples"] = samples
        verts = list(range(n))
        for _ in range(samples):
            s = rnd.randint(1, small)
            S = rnd.sample(verts, s)
            if len(nbhd(S)) < D * s:
                return False, info
    # condition 2: edge between all disjoint A, B of size >= k/log k
    size = small
    if 2 * size > n:
        return True, info  # vacuous: no two disjoint sets that large
    pairs = math.comb(n, size) * math.comb(n - size, size)
    if pairs <= sample_cap:
        for A in combinations(range(n), size):
            rest = [v for v in range(n) if v not in A]
            a_nb = nbhd(A)
            for B in combinations(rest, size):
                if not a_nb.intersection(B):
                    return False, info
    else:
        info["regime"] = "sampled"
        rnd = rng or _random.Random(1)
        info["samples"] += sample_cap
        verts = list(range(n))
        for _ in range(sample_cap):
            S = rnd.sample(verts, 2 * size)
            A, B = S[:size], S[size:]
            if not nbhd(A).intersection(B):
                return False, info
    return True, info
