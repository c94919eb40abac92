"""The spanning-tree embedding strategy.

Case I (leaf-rich trees, at least n^(2/3) distinct leaf-neighbors)
embeds everything except a reserved independent leaf set in Stage 1,
prioritizing dangerous vertices (opponent degree at least sqrt(n)):
a taken-and-open dangerous vertex is closed by embedding all its new
tree-neighbors; an available dangerous vertex is attached through a
free edge to an open vertex, or failing that through a three-edge
connector built inside an opponent-independent set. Stage 2 embeds the
reserved leaves by winning a perfect-matching game between the free
board vertices and the leaf-support images.

Case II (leaf-poor trees) removes the interiors of all long bare
paths, embeds the remaining forest greedily while ignoring the
opponent entirely, then splits the leftover board into randomly
partitioned parts and fills each bare path with a fixed-endpoint
Hamilton path subgame, all paths played in parallel under the
box-with-resets scheduler.

Theorem-scale hypotheses (max degree, bias, "n large") are recorded as
guard flags, never enforced: desk-scale runs proceed and acceptance
binds on validity-on-success and bookkeeping, not on win rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import GameState, MAKER, BREAKER
from .runner import Strategy, Forfeit
from .rng import SeedStream
from .trees import TreeSpec, degree_census, classify_case, select_independent_leaves, bare_decomposition
from .partition import random_partition, PartitionFailure
from .parallel import ParallelMaker, SubBoard, inflated_bias
from .subgames.matching import BipartiteBoard, MatchingMaker, TooLargeError, hall_set_count
from .subgames.hampath import HamPathMaker, TwoPathParams


@dataclass
class ThresholdConfig:
    """Every exponent and coefficient the strategy uses, echoed into
    transcripts so no run is ambiguous."""

    alpha: float = 0.004
    epsilon: float = 0.04
    leaf_exp: float = 2.0 / 3.0
    bare_exp: float = 0.2
    danger_exp: float = 0.5
    partition_coeff: float = 10.0
    partition_exp: float = -0.05
    hampath_gamma: float = 0.1
    hampath_beta: float = 0.5
    hampath_stage2: str = "direct"
    matching_mode: str = "auto"  # auto | exact | heuristic
    matching_exact_cap: int = 12_000  # auto mode: max Hall sets before heuristic
    claim_cap_factor: int = 2

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "epsilon": self.epsilon,
            "leaf_exp": self.leaf_exp,
            "bare_exp": self.bare_exp,
            "danger_exp": self.danger_exp,
            "partition_coeff": self.partition_coeff,
            "partition_exp": self.partition_exp,
            "hampath_gamma": self.hampath_gamma,
            "hampath_beta": self.hampath_beta,
            "hampath_stage2": self.hampath_stage2,
            "matching_mode": self.matching_mode,
            "matching_exact_cap": self.matching_exact_cap,
            "claim_cap_factor": self.claim_cap_factor,
        }


class PartialEmbedding:
    """Injective map from embedded tree vertices to board vertices."""

    def __init__(self, tree: TreeSpec):
        self.tree = tree
        self.f: dict = {}
        self.finv: dict = {}

    def embed(self, tree_v: int, board_v: int) -> None:
        if tree_v in self.f:
            raise ValueError(f"tree vertex {tree_v} already embedded")
        if board_v in self.finv:
            raise ValueError(f"board vertex {board_v} already taken")
        self.f[tree_v] = board_v
        self.finv[board_v] = tree_v

    def embedded(self, tree_v: int) -> bool:
        return tree_v in self.f

    def taken(self, board_v: int) -> bool:
        return board_v in self.finv

    def new_neighbors(self, tree_v: int, adjacency=None) -> list:
        adj = adjacency if adjacency is not None else self.tree.adj
        return [w for w in adj[tree_v] if w not in self.f]

    def is_open(self, tree_v: int, adjacency=None) -> bool:
        return tree_v in self.f and bool(self.new_neighbors(tree_v, adjacency))

    def open_vertices(self, adjacency=None) -> list:
        return sorted(v for v in self.f if self.is_open(v, adjacency))

    def size(self) -> int:
        return len(self.f)

    def validate(self, state: GameState) -> bool:
        """Soundness: injectivity plus Maker ownership of every
        embedded tree edge."""
        if len(set(self.f.values())) != len(self.f):
            return False
        for x, u in self.f.items():
            for y in self.tree.adj[x]:
                if y in self.f and x < y:
                    e = state.edge(u, self.f[y])
                    if state.ownership[e] != MAKER:
                        return False
        return True


class _Connector:
    """Multi-turn three-edge attachment, shared by Case I."""

    def __init__(self, v_board, anchor_board, chain, independent, spokes, budget):
        self.v = v_board
        self.anchor = anchor_board
        self.chain = chain  # (x', y', v') tree vertices to embed
        self.independent = independent
        self.spokes = spokes
        self.budget = budget
        self.phase = "v-spokes"
        self.n_v: list = []

    def spent(self, n=1):
        self.budget -= n
        if self.budget < 0:
            raise Forfeit("connector exceeded its 11 n^alpha move budget")


class TreeEmbedMaker(Strategy):
    """Maker for the (1:q) tree embedding game on K_n."""

    side = "maker"
    name = "tree-embed"

    def __init__(self, tree: TreeSpec, q: int, config: ThresholdConfig | None = None, seed: int = 0):
        self.tree = tree
        self.n = tree.n
        self.q = q
        self.config = config or ThresholdConfig()
        self.seeds = SeedStream(seed)
        self.census = degree_census(tree)
        self.case = classify_case(tree, self.census)
        self.emb = PartialEmbedding(tree)
        self.claims_made = 0
        self.claim_cap = self.config.claim_cap_factor * self.n
        self.stage = 1
        self.complete = False
        self.connector: _Connector | None = None
        # trackers for the bookkeeping invariants
        self.max_danger_count = 0
        self.min_available_stage1 = self.n
        self.stage1_claims = 0

        cfg = self.config
        if self.case == "I":
            self.leaf_reserve = select_independent_leaves(tree, self.census)
            self.reserve_set = set(self.leaf_reserve)
            # T' adjacency: T restricted to V(T) minus the reserved leaves
            self.tprime_adj = [
                [w for w in tree.adj[v] if w not in self.reserve_set]
                if v not in self.reserve_set
                else []
                for v in range(self.n)
            ]
            self.tprime_vertices = [v for v in range(self.n) if v not in self.reserve_set]
            self.matching: MatchingMaker | None = None
            self.matching_board: BipartiteBoard | None = None
            self.support_of = {
                leaf: tree.adj[leaf][0] for leaf in self.leaf_reserve
            }
        else:
            fv, fe, paths = bare_decomposition(tree, self.n ** cfg.bare_exp)
            self.forest_vertices = sorted(fv)
            self.forest_edges = fe
            self.bare_paths = paths
            self.forest_adj = [[] for _ in range(self.n)]
            for u, v in fe:
                self.forest_adj[u].append(v)
                self.forest_adj[v].append(u)
            self.parallel: ParallelMaker | None = None
            self.hampaths: list = []
            self._assigned_isolated = False
            self.partition_checks = None

        self.danger_threshold = math.sqrt(self.n)
        self.guards = {
            "case": self.case,
            "max_degree_guard": tree.max_degree() <= self.n ** cfg.epsilon,
            "bias_guard": q <= self.n ** cfg.alpha,
            "alpha": cfg.alpha,
            "epsilon": cfg.epsilon,
        }

    # -- shared helpers ------------------------------------------------------

    def _claim(self, state: GameState, u: int, v: int) -> list:
        self.claims_made += 1
        if self.claims_made > self.claim_cap:
            raise Forfeit(f"claimed {self.claim_cap} edges without winning")
        if self.stage == 1:
            self.stage1_claims += 1
        return [state.edge(u, v)]

    def _available(self, state: GameState):
        return [v for v in range(self.n) if not self.emb.taken(v)]

    def _free_edge(self, state: GameState, u: int, v: int) -> bool:
        return state.is_free(state.edge(u, v))

    def moves(self, state: GameState, opponent_elements: list) -> list:
        if self.case == "I":
            return self._case1_move(state)
        return self._case2_move(state, opponent_elements)

    def done(self, state: GameState) -> bool:
        if self.complete:
            return True
        if self.case == "I":
            self._case1_extract(state)
        else:
            self._case2_extract(state)
        if self.emb.size() == self.n and self.emb.validate(state):
            self.complete = True
            return True
        return False

    # =====================================================================
    # Case I
    # =====================================================================

    def _danger_set(self, state: GameState) -> list:
        """Board vertices with opponent degree >= sqrt(n) that are
        available or open with respect to T."""
        out = []
        for v in range(self.n):
            if state.breaker_degrees[v] < self.danger_threshold:
                continue
            if not self.emb.taken(v):
                out.append(v)
            else:
                if self.emb.is_open(self.finv_safe(v)):
                    out.append(v)
        return out

    def finv_safe(self, board_v: int) -> int:
        return self.emb.finv[board_v]

    def _case1_move(self, state: GameState) -> list:
        if self.emb.size() == 0:
            # initialize: w' is the lowest vertex of T', its image board 0
            w_prime = self.tprime_vertices[0]
            self.emb.embed(w_prime, 0)
            self.annotate(assign=[[w_prime, 0]])
        if self.stage == 1:
            if self.connector is not None:
                return self._connector_step(state)
            danger = self._danger_set(state)
            self.max_danger_count = max(self.max_danger_count, len(danger))
            self.min_available_stage1 = min(
                self.min_available_stage1, self.n - self.emb.size()
            )
            if danger:
                # holds until every dangerous vertex is closed, even
                # with T' fully embedded; stage 2 then runs undisturbed
                return self._handle_danger(state, min(danger))
            if any(not self.emb.embedded(v) for v in self.tprime_vertices):
                return self._tprime_extension(state)
            self.stage = 2
        return self._matching_move(state)

    def _handle_danger(self, state: GameState, v: int) -> list:
        if self.emb.taken(v):
            # (1.1) close v: embed its next new T-neighbor
            v_tree = self.finv_safe(v)
            new = self.emb.new_neighbors(v_tree)
            x_tree = new[0]
            for u in self._available(state):
                if self._free_edge(state, v, u):
                    self.emb.embed(x_tree, u)
                    self.annotate(stage=self.stage, rule="close-dangerous", embed=[[x_tree, u]])
                    return self._claim(state, v, u)
            raise Forfeit(f"closing dangerous vertex {v}: no free edge to an available vertex")
        # (1.2) v available: attach via a free edge to an open vertex...
        for u_tree in self.emb.open_vertices():
            u = self.emb.f[u_tree]
            if self._free_edge(state, u, v):
                x_tree = self.emb.new_neighbors(u_tree)[0]
                self.emb.embed(x_tree, v)
                self.annotate(stage=self.stage, rule="attach-dangerous", embed=[[x_tree, v]])
                return self._claim(state, u, v)
        # ...or through a path of length three
        return self._start_connector(state, v)

    def _tprime_extension(self, state: GameState) -> list:
        """(2): a free edge from a vertex open w.r.t. T' to an
        available vertex, embedding one new T'-neighbor."""
        for v_tree in self.emb.open_vertices(self.tprime_adj):
            v = self.emb.f[v_tree]
            for u in self._available(state):
                if self._free_edge(state, v, u):
                    x_tree = self.emb.new_neighbors(v_tree, self.tprime_adj)[0]
                    self.emb.embed(x_tree, u)
                    self.annotate(stage=1, rule="extend", embed=[[x_tree, u]])
                    return self._claim(state, v, u)
        raise Forfeit("stage 1: no free extension edge for any open vertex")

    def _find_connector_chain(self):
        """An open tree vertex with a path of three new vertices
        hanging off it, lowest ids first."""
        for u_tree in self.emb.open_vertices():
            for x in self.emb.new_neighbors(u_tree):
                for y in self.tree.adj[x]:
                    if y == u_tree or self.emb.embedded(y):
                        continue
                    for z in self.tree.adj[y]:
                        if z == x or self.emb.embedded(z):
                            continue
                        return u_tree, (x, y, z)
        return None, None

    def _start_connector(self, state: GameState, v: int) -> list:
        u_tree, chain = self._find_connector_chain()
        if u_tree is None:
            raise Forfeit(
                f"dangerous available vertex {v}: no open vertex with a "
                "three-step chain of new tree vertices"
            )
        u = self.emb.f[u_tree]
        spokes = max(1, math.floor(5 * self.n ** self.config.alpha))
        budget = math.ceil(11 * self.n ** self.config.alpha)
        banned = {v, u}
        banned |= {w for w in range(self.n) if self.emb.taken(w)}
        banned |= {
            w
            for w in range(self.n)
            if w != u and state.ownership[state.edge(min(u, w), max(u, w))] == BREAKER
        }
        banned |= {
            w
            for w in range(self.n)
            if w != v and state.ownership[state.edge(min(v, w), max(v, w))] == BREAKER
        }
        pool = [w for w in range(self.n) if w not in banned]
        independent = []
        for w in pool:
            if all(
                state.ownership[state.edge(min(w, x), max(w, x))] != BREAKER
                for x in independent
            ):
                independent.append(w)
        self.connector = _Connector(v, u, chain, independent, spokes, budget)
        self.annotate(stage=1, rule="connector-start", dangerous=v, independent=len(independent))
        return self._connector_step(state)

    def _connector_step(self, state: GameState) -> list:
        con = self.connector
        v, u = con.v, con.anchor

        def maker_spokes(center):
            return [
                w
                for w in con.independent
                if not self.emb.taken(w)
                and state.ownership[state.edge(min(center, w), max(center, w))] == MAKER
            ]

        if con.phase == "v-spokes":
            have = maker_spokes(v)
            if len(have) < con.spokes:
                cands = [
                    w
                    for w in con.independent
                    if not self.emb.taken(w) and self._free_edge(state, v, w)
                ]
                if not cands:
                    raise Forfeit("connector: no free spoke from the dangerous vertex")
                con.spent()
                self.annotate(stage=1, rule="connector-v-spoke")
                return self._claim(state, v, cands[0])
            con.n_v = sorted(have)[: con.spokes]
            con.phase = "u-spokes"
        if con.phase == "u-spokes":
            pool = [w for w in con.independent if w not in con.n_v]
            have = [w for w in maker_spokes(u) if w in pool]
            if len(have) < con.spokes:
                cands = [
                    w
                    for w in pool
                    if not self.emb.taken(w) and self._free_edge(state, u, w)
                ]
                if not cands:
                    raise Forfeit("connector: no free spoke from the open vertex")
                con.spent()
                self.annotate(stage=1, rule="connector-u-spoke")
                return self._claim(state, u, cands[0])
            con.phase = "bridge"
        u_side = [w for w in maker_spokes(u) if w not in con.n_v]
        for x_board in sorted(u_side):
            for y_board in con.n_v:
                if self.emb.taken(x_board) or self.emb.taken(y_board):
                    continue
                if self._free_edge(state, x_board, y_board):
                    con.spent()
                    x_t, y_t, z_t = con.chain
                    self.emb.embed(x_t, x_board)
                    self.emb.embed(y_t, y_board)
                    self.emb.embed(z_t, v)
                    self.connector = None
                    self.annotate(
                        stage=1,
                        rule="connector-bridge",
                        embed=[[x_t, x_board], [y_t, y_board], [z_t, v]],
                    )
                    return self._claim(state, x_board, y_board)
        raise Forfeit("connector: no free bridge edge between the spoke ends")

    def _matching_move(self, state: GameState) -> list:
        if self.matching is None:
            leftovers = [leaf for leaf in self.leaf_reserve if not self.emb.embedded(leaf)]
            if not leftovers:
                # every reserved leaf was embedded by dangerous-vertex
                # closures; the win check completes without extra claims
                return self._mop_up(state)
            x_side = self._available(state)
            y_side = [self.emb.f[self.support_of[leaf]] for leaf in leftovers]
            assert len(x_side) == len(y_side), (
                f"stage 2 expects |X| = |Y|, got {len(x_side)} vs {len(y_side)}"
            )
            self.matching_leaves = leftovers
            self.matching_board = BipartiteBoard(x_side, y_side, state)
            mode = self.config.matching_mode
            if mode == "auto":
                mode = self._pick_matching_mode(len(x_side))
            self.matching = MatchingMaker(self.matching_board, self.q, mode=mode)
            self.guards["matching_mode"] = mode
        picks = self.matching.moves(state, [])
        self.claims_made += len(picks)
        if self.claims_made > self.claim_cap:
            raise Forfeit(f"claimed {self.claim_cap} edges without winning")
        note = self.matching.pop_note()
        note.setdefault("stage", 2)
        note.setdefault("rule", "matching")
        self.annotate(**note)
        return picks

    def _pick_matching_mode(self, r: int) -> str:
        from .potential import criterion_holds
        from .core import Bias
        from .subgames.matching import hall_hypergraph

        if hall_set_count(r) > self.config.matching_exact_cap:
            return "heuristic"
        hg = hall_hypergraph(self.matching_board)
        return "exact" if criterion_holds(hg, Bias(p=self.q, q=1)) else "heuristic"

    def _case1_extract(self, state: GameState) -> None:
        """Pull leaf assignments out of a completed matching subgame."""
        if self.matching is None or not self.matching.done(state):
            return
        matching = self.matching_board.maker_matching(state)
        if len(matching) != self.matching_board.r:
            return
        for i, j in matching.items():
            leaf = self.matching_leaves[j]
            board_x = self.matching_board.a_vertices[i]
            if not self.emb.embedded(leaf):
                self.emb.embed(leaf, board_x)

    def _mop_up(self, state: GameState) -> list:
        for e in range(state.board_size):
            if state.is_free(e):
                self.annotate(rule="mop-up")
                self.claims_made += 1
                return [e]
        return []

    # =====================================================================
    # Case II
    # =====================================================================

    def _case2_move(self, state: GameState, opponent_elements: list) -> list:
        if not self._assigned_isolated:
            self._assign_isolated(state)
        if self.stage == 1:
            mv = self._forest_extension(state)
            if mv is not None:
                return mv
            self.stage = 2
            self._setup_parallel(state)
        if not self.bare_paths:
            # F = T: nothing left to play; the win check already fired
            # unless an edge is genuinely missing
            return self._mop_up(state)
        picks = self.parallel.moves(state, opponent_elements)
        note = self.parallel.pop_note()
        note.setdefault("stage", 2)
        self.annotate(**note)
        self.claims_made += len(picks)
        if self.claims_made > self.claim_cap:
            raise Forfeit(f"claimed {self.claim_cap} edges without winning")
        return picks

    def _assign_isolated(self, state: GameState) -> None:
        """Forest vertices with no forest edges get board images without
        any claims; recorded in the next move's note."""
        self._assigned_isolated = True
        assigns = []
        for v in self.forest_vertices:
            if not self.forest_adj[v] and not self.emb.embedded(v):
                u = next(w for w in range(self.n) if not self.emb.taken(w))
                self.emb.embed(v, u)
                assigns.append([v, u])
        if assigns:
            self.annotate(assign=assigns)

    def _forest_extension(self, state: GameState):
        """Embed the next forest edge: lowest embedded vertex with a new
        forest neighbor, toward the lowest available board vertex with a
        free edge. Breaker structure is deliberately ignored beyond
        free-edge availability."""
        for v in self.forest_vertices:
            if self.emb.embedded(v) and self.emb.new_neighbors(v, self.forest_adj):
                x_tree = self.emb.new_neighbors(v, self.forest_adj)[0]
                board_v = self.emb.f[v]
                for u in self._available(state):
                    if self._free_edge(state, board_v, u):
                        self.emb.embed(x_tree, u)
                        self.annotate(stage=1, rule="forest-extend", embed=[[x_tree, u]])
                        return self._claim(state, board_v, u)
                raise Forfeit(f"forest embedding: no free edge at image of {v}")
        # a new component to root?
        for v in self.forest_vertices:
            if not self.emb.embedded(v):
                u = next(w for w in range(self.n) if not self.emb.taken(w))
                self.emb.embed(v, u)
                self.annotate(assign=[[v, u]])
                # rooting consumes no claim; embed its first edge right away
                return self._forest_extension(state)
        return None

    def _setup_parallel(self, state: GameState) -> None:
        if not self.bare_paths:
            return
        available = self._available(state)
        sizes = [len(p.interior) for p in self.bare_paths]
        pairs = [(self.emb.f[p.a], self.emb.f[p.b]) for p in self.bare_paths]
        claimed_adj = [set() for _ in range(self.n)]
        for e in range(state.board_size):
            if state.ownership[e] != 0:
                u, v = state.endpoints(e)
                claimed_adj[u].add(v)
                claimed_adj[v].add(u)

        def host_degree(u, group):
            nb = claimed_adj[u]
            return sum(1 for w in group if w != u and w in nb)

        rng = self.seeds.stream("partition")
        try:
            parts, checks = random_partition(
                available,
                pairs,
                sizes,
                host_degree,
                k=self.n,
                rng=rng,
                coeff=self.config.partition_coeff,
                exp=self.config.partition_exp,
            )
        except PartitionFailure as exc:
            raise Forfeit(f"partition-failure: {exc}")
        self.partition_checks = [(c.part_index, c.max_degree, c.cap) for c in checks]
        # the paper's stage-2 degree assertion, recorded per part
        self.partition_min_degree_ok = []
        for i, p in enumerate(self.bare_paths):
            region = parts[i] + [pairs[i][0], pairs[i][1]]
            n_i = p.length
            floor_deg = n_i - self.config.partition_coeff * n_i * self.n ** self.config.partition_exp
            free_deg_min = min(
                sum(
                    1
                    for w in region
                    if w != u and state.is_free(state.edge(min(u, w), max(u, w)))
                )
                for u in region
            )
            self.partition_min_degree_ok.append(free_deg_min >= floor_deg)
        boards = []
        params = TwoPathParams(self.config.hampath_gamma, self.config.hampath_beta)
        total_elements = 0
        region_list = []
        for i, p in enumerate(self.bare_paths):
            region = sorted(parts[i] + [pairs[i][0], pairs[i][1]])
            region_list.append(region)
            total_elements += len(region) * (len(region) - 1) // 2
        self.inflated = inflated_bias(len(self.bare_paths), self.q, max(1, total_elements))
        for i, p in enumerate(self.bare_paths):
            region = region_list[i]
            hp = HamPathMaker(
                region,
                pairs[i][0],
                pairs[i][1],
                q=self.q,
                params=params,
                stage2=self.config.hampath_stage2,
                seed=self.seeds.child(f"hampath-{i}").root,
            )
            elements = frozenset(
                state.edge(u, v)
                for ui, u in enumerate(region)
                for v in region[ui + 1 :]
            )
            boards.append(
                SubBoard(
                    elements=elements,
                    strategy=hp,
                    win_predicate=hp.done,
                    budget=2 * len(region),
                )
            )
            self.hampaths.append(hp)
        self.parallel = ParallelMaker(boards, self.q)

    def _case2_extract(self, state: GameState) -> None:
        """Splice completed sub-game paths into the embedding."""
        if self.parallel is None or not all(hp.complete for hp in self.hampaths):
            return
        for i, p in enumerate(self.bare_paths):
            path = self.hampaths[i].final_path
            interior_boards = path[1:-1]
            for tree_v, board_v in zip(p.interior, interior_boards):
                if not self.emb.embedded(tree_v):
                    self.emb.embed(tree_v, board_v)

    # -- reporting ----------------------------------------------------------------

    def finish(self, state: GameState) -> dict:
        stats = {
            "case": self.case,
            "maker_claims_total": self.claims_made,
            "stage1_claims": self.stage1_claims,
            "embedded": self.emb.size(),
            "complete": self.complete,
            "thresholds": self.config.as_dict(),
        }
        if self.case == "I":
            stats["max_danger_count"] = self.max_danger_count
            stats["danger_bound"] = 4 * self.n ** (1 + self.config.alpha) / math.sqrt(self.n)
            stats["min_available_stage1"] = self.min_available_stage1
            stats["available_floor"] = 0.5 * self.n ** self.config.leaf_exp
        else:
            stats["forest_size"] = len(self.forest_vertices)
            stats["stage1_work_bound"] = (
                3 * len(self.census.d1) * self.n ** self.config.bare_exp
            )
            stats["bare_path_count"] = len(self.bare_paths)
            if self.partition_checks is not None:
                stats["partition_checks"] = self.partition_checks
                stats["partition_min_degree_ok"] = self.partition_min_degree_ok
                stats["inflated_bias"] = self.inflated
        if self.complete:
            stats["embedding"] = {str(k): v for k, v in sorted(self.emb.f.items())}
        guards = dict(self.guards)
        return {"stats": stats, "guards": guards}
