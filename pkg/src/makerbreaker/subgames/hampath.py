"""Fixed-endpoint Hamilton path on a dense region.

Stage 1 grows two vertex-disjoint paths anchored at a and b, watching
for dangerous vertices (opponent degree at least k^delta'). A safe
round extends the shorter path; a dangerous path-end is pushed into
the interior; a dangerous outside vertex is attached to the a-path
through a three-edge connector built inside an opponent-independent
set, within 11 k^gamma claims. Extension stops once fewer than
2 k^delta region vertices remain outside the paths.

Stage 2 completes the a-b path through the leftover region. The
default mode extends the a-side path sequentially, repairing dead ends
with rotations over Maker-owned chords, so an unobstructed playout
costs exactly one claim per remaining vertex. The "hamcon" mode
instead delegates the leftover to the Hamilton-connected builder and
splices an extracted Hamilton path, at the price of extra claims.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..core import GameState, MAKER, BREAKER
from ..runner import Strategy, Forfeit
from ..oracles import hamilton_path_between
from .hamcon import HamConMaker


@dataclass
class TwoPathParams:
    """gamma, beta from the caller; delta' and delta derived unless
    overridden: delta' = max(1/2 + 2 gamma, beta) + 0.01 and
    delta = delta' + 2 gamma + 0.01."""

    gamma: float = 0.1
    beta: float = 0.5
    delta_prime: float | None = None
    delta: float | None = None

    def resolve(self) -> "TwoPathParams":
        dp = self.delta_prime
        if dp is None:
            dp = max(0.5 + 2 * self.gamma, self.beta) + 0.01
        d = self.delta
        if d is None:
            d = dp + 2 * self.gamma + 0.01
        return TwoPathParams(self.gamma, self.beta, dp, d)

    def constraint_guards(self, k: int, q: int) -> dict:
        p = self.resolve()
        return {
            "gamma_range": 0 < p.gamma < 1 / 8,
            "beta_gamma": p.beta + 2 * p.gamma < 1,
            "delta_prime_floor": p.delta_prime > max(0.5 + 2 * p.gamma, p.beta),
            "delta_window": p.delta_prime + 2 * p.gamma < p.delta < 1,
            "bias_guard": q <= k ** p.gamma,
        }


def derive_two_path_params(gamma: float, beta: float) -> TwoPathParams:
    return TwoPathParams(gamma, beta).resolve()


class _Connector:
    """Three-edge attachment of a dangerous outside vertex to the
    a-path head, built across several turns."""

    def __init__(self, v: int, anchor: int, independent: list, spokes: int, budget: int):
        self.v = v
        self.anchor = anchor
        self.independent = independent
        self.spokes = spokes
        self.budget = budget
        self.phase = "v-spokes"
        self.n_v: list = []  # fixed once the v side is done

    def spent(self, claims: int) -> None:
        self.budget -= claims
        if self.budget < 0:
            raise Forfeit("connector exceeded its 11 k^gamma move budget")


class HamPathMaker(Strategy):
    """Builds a Hamilton path of the region between the two anchors."""

    side = "maker"

    def __init__(
        self,
        region,
        a: int,
        b: int,
        q: int,
        params: TwoPathParams | None = None,
        stage2: str = "direct",
        seed: int = 0,
    ):
        self.region = sorted(region)
        if a not in self.region or b not in self.region or a == b:
            raise ValueError("anchors must be two distinct region vertices")
        self.region_set = frozenset(self.region)
        self.a, self.b = a, b
        self.k = len(self.region)
        self.q = q
        self.params = (params or TwoPathParams()).resolve()
        self.stage2_mode = stage2
        self.seed = seed
        self.name = f"hampath-{stage2}"

        self.pa = [a]
        self.pb = [b]
        self.in_pa = {a}
        self.in_pb = {b}
        self.db = {v: 0 for v in self.region}  # region-internal opponent degree
        self.danger_threshold = self.k ** self.params.delta_prime
        self.stop_threshold = 2 * self.k ** self.params.delta
        self.claims_made = 0
        self.claim_cap = 2 * self.k
        self.stage = 1
        self.connector: _Connector | None = None
        self.post_connector_extend = False
        self.complete = False
        self.final_path: list | None = None
        self._hamcon: HamConMaker | None = None
        # invariant trackers for the transcript audit
        self.min_remaining_stage1: float = math.inf
        self.max_eligible_db = 0
        self.max_danger_count = 0
        self.stage1_moves = 0

    # -- bookkeeping -------------------------------------------------------

    def _region_edge(self, state: GameState, e: int):
        u, v = state.endpoints(e)
        if u in self.region_set and v in self.region_set:
            return u, v
        return None

    def _absorb_opponent(self, state: GameState, elements: list) -> None:
        for e in elements:
            ends = self._region_edge(state, e)
            if ends:
                self.db[ends[0]] += 1
                self.db[ends[1]] += 1

    def _eligible(self):
        out = [v for v in self.region if v not in self.in_pa and v not in self.in_pb]
        if len(self.pa) > 1:
            out.append(self.pa[-1])
        if len(self.pb) > 1:
            out.append(self.pb[-1])
        return out

    def _danger_set(self):
        return sorted(v for v in self._eligible() if self.db[v] >= self.danger_threshold)

    def _remaining(self) -> int:
        return self.k - len(self.pa) - len(self.pb)

    def _free_outside(self, state: GameState, x: int):
        """Outside-path vertices w with the edge (x, w) free, ascending."""
        pa, pb = self.in_pa, self.in_pb
        return [
            w
            for w in self.region
            if w != x
            and w not in pa
            and w not in pb
            and state.is_free(state.edge(x, w))
        ]

    def _claim(self, state: GameState, u: int, v: int) -> list:
        self.claims_made += 1
        if self.claims_made > self.claim_cap:
            raise Forfeit(f"claimed {self.claim_cap} edges without winning")
        return [state.edge(u, v)]

    # -- the turn dispatcher -------------------------------------------------

    def moves(self, state: GameState, opponent_elements: list) -> list:
        self._absorb_opponent(state, opponent_elements)
        if self.stage == 1:
            danger = self._danger_set()
            self.max_danger_count = max(self.max_danger_count, len(danger))
            for v in self._eligible():
                self.max_eligible_db = max(self.max_eligible_db, self.db[v])
            if self.connector is not None:
                return self._connector_step(state)
            if self.post_connector_extend:
                self.post_connector_extend = False
                return self._extend(state, self.pa, self.in_pa, rule="post-connector")
            if self._remaining() < self.stop_threshold:
                self.stage = 2
            else:
                self.min_remaining_stage1 = min(self.min_remaining_stage1, self._remaining())
                self.stage1_moves += 1
                return self._stage1_move(state, danger)
        return self._stage2_move(state)

    # -- stage 1 ---------------------------------------------------------------

    def _stage1_move(self, state: GameState, danger: list) -> list:
        if not danger:
            shorter, inset = (
                (self.pa, self.in_pa)
                if len(self.pa) <= len(self.pb)
                else (self.pb, self.in_pb)
            )
            return self._extend(state, shorter, inset, rule="extend-shorter")
        v = danger[0]
        if v == self.pa[-1] and len(self.pa) > 1:
            return self._extend(state, self.pa, self.in_pa, rule="danger-endpoint")
        if v == self.pb[-1] and len(self.pb) > 1:
            return self._extend(state, self.pb, self.in_pb, rule="danger-endpoint")
        return self._start_connector(state, v)

    def _extend(self, state: GameState, path: list, inset: set, rule: str) -> list:
        x = path[-1]
        cands = self._free_outside(state, x)
        if not cands:
            raise Forfeit(f"stage 1: no free extension edge at path end {x}")
        w = cands[0]
        path.append(w)
        inset.add(w)
        self.annotate(stage=1, rule=rule, path_end=w)
        return self._claim(state, x, w)

    def _start_connector(self, state: GameState, v: int) -> list:
        x = self.pa[-1]
        spokes = max(1, math.floor(5 * self.k ** self.params.gamma))
        budget = math.ceil(11 * self.k ** self.params.gamma)
        banned = set(self.in_pa) | set(self.in_pb) | {v}
        banned |= {
            w
            for w in self.region
            if w != x and state.ownership[state.edge(min(w, x), max(w, x))] == BREAKER
        }
        banned |= {
            w
            for w in self.region
            if w != v and state.ownership[state.edge(min(w, v), max(w, v))] == BREAKER
        }
        pool = [w for w in self.region if w not in banned and w not in (x, v)]
        independent = []
        for w in pool:  # greedy independent set in the opponent's graph
            if all(
                state.ownership[state.edge(min(w, u), max(w, u))] != BREAKER
                for u in independent
            ):
                independent.append(w)
        self.connector = _Connector(v, x, independent, spokes, budget)
        self.annotate(stage=1, rule="connector-start", dangerous=v, independent=len(independent))
        return self._connector_step(state)

    def _connector_step(self, state: GameState) -> list:
        con = self.connector
        v, x = con.v, con.anchor

        def maker_spokes(center):
            return [
                w
                for w in con.independent
                if state.ownership[state.edge(min(center, w), max(center, w))] == MAKER
            ]

        if con.phase == "v-spokes":
            have = maker_spokes(v)
            if len(have) < con.spokes:
                cands = [w for w in con.independent if state.is_free(state.edge(min(v, w), max(v, w)))]
                if not cands:
                    raise Forfeit("connector: no free spoke from the dangerous vertex")
                con.spent(1)
                self.annotate(stage=1, rule="connector-v-spoke")
                return self._claim(state, v, cands[0])
            con.n_v = sorted(have)[: con.spokes]
            con.phase = "x-spokes"
        if con.phase == "x-spokes":
            pool = [w for w in con.independent if w not in con.n_v]
            have = [w for w in maker_spokes(x) if w in pool]
            if len(have) < con.spokes:
                cands = [w for w in pool if state.is_free(state.edge(min(x, w), max(x, w)))]
                if not cands:
                    raise Forfeit("connector: no free spoke from the path end")
                con.spent(1)
                self.annotate(stage=1, rule="connector-x-spoke")
                return self._claim(state, x, cands[0])
            con.phase = "bridge"
        # bridge: free edge from an x-spoke end to a v-spoke end
        x_side = [w for w in maker_spokes(x) if w not in con.n_v]
        for u in sorted(x_side):
            for w in con.n_v:
                if state.is_free(state.edge(min(u, w), max(u, w))):
                    con.spent(1)
                    self.pa.extend([u, w, v])
                    self.in_pa.update((u, w, v))
                    self.connector = None
                    self.post_connector_extend = True
                    self.annotate(stage=1, rule="connector-bridge", attached=v)
                    return self._claim(state, u, w)
        raise Forfeit("connector: no free bridge edge between the spoke ends")

    # -- stage 2 -----------------------------------------------------------------

    def _maker_adjacency(self, state: GameState):
        adj = {v: set() for v in self.region}
        for i, u in enumerate(self.region):
            for v in self.region[i + 1 :]:
                if state.ownership[state.edge(u, v)] == MAKER:
                    adj[u].add(v)
                    adj[v].add(u)
        return adj

    def _posa_paths(self, path: list, adj: dict) -> dict:
        """Heads reachable by rotations that keep path[0] an endpoint,
        mapped to the rotated vertex order realizing them."""
        reach = {path[-1]: list(path)}
        queue = [list(path)]
        while queue:
            p = queue.pop(0)
            h = p[-1]
            pos = {v: i for i, v in enumerate(p)}
            for v in sorted(adj[h]):
                i = pos.get(v)
                if i is None or i >= len(p) - 2:
                    continue
                new_head = p[i + 1]
                if new_head in reach:
                    continue
                rotated = p[: i + 1] + p[i + 1 :][::-1]
                reach[new_head] = rotated
                queue.append(rotated)
        return reach

    def _stage2_move(self, state: GameState) -> list:
        if self.stage2_mode == "hamcon":
            return self._stage2_hamcon_move(state)
        return self._stage2_direct_move(state)

    def _stage2_direct_move(self, state: GameState) -> list:
        target = self.pb[-1]
        unused = [
            v for v in self.region if v not in self.in_pa and v not in self.in_pb
        ]
        h = self.pa[-1]
        if unused:
            cands = self._free_outside(state, h)
            if cands:
                w = cands[0]
                self.pa.append(w)
                self.in_pa.add(w)
                self.annotate(stage=2, rule="extend")
                return self._claim(state, h, w)
            adj = self._maker_adjacency(state)
            reach = self._posa_paths(self.pa, adj)
            for head in sorted(reach):
                if head == h:
                    continue
                cands = self._free_outside(state, head)
                if cands:
                    self.pa = reach[head]
                    w = cands[0]
                    self.pa.append(w)
                    self.in_pa.add(w)
                    self.annotate(stage=2, rule="rotate-extend", rotations=True)
                    return self._claim(state, head, w)
            return self._booster(state, reach)
        # all region vertices are on the two paths: connect head to the b-path
        if state.ownership[state.edge(min(h, target), max(h, target))] == MAKER:
            self._finish_path()
            return self._mop_up(state)
        if state.is_free(state.edge(min(h, target), max(h, target))):
            self.annotate(stage=2, rule="connect")
            out = self._claim(state, h, target)
            self._finish_path()
            return out
        adj = self._maker_adjacency(state)
        reach = self._posa_paths(self.pa, adj)
        for head in sorted(reach):
            e = state.edge(min(head, target), max(head, target))
            if state.ownership[e] == MAKER:
                self.pa = reach[head]
                self._finish_path()
                return self._mop_up(state)
            if state.is_free(e):
                self.pa = reach[head]
                self.annotate(stage=2, rule="rotate-connect")
                out = self._claim(state, head, target)
                self._finish_path()
                return out
        return self._booster(state, reach)

    def _booster(self, state: GameState, reach: dict) -> list:
        """No extension or connection exists: claim a chord between a
        reachable head and a path vertex to widen future rotations."""
        for head in sorted(reach):
            p = reach[head]
            for v in p[:-2]:
                e = state.edge(min(head, v), max(head, v))
                if state.is_free(e):
                    self.annotate(stage=2, rule="booster")
                    return self._claim(state, head, v)
        raise Forfeit("stage 2: no extension, rotation, or booster chord available")

    def _mop_up(self, state: GameState) -> list:
        """Completion existed without a fresh claim; spend the turn on
        the lowest free region edge so the turn stays legal."""
        for i, u in enumerate(self.region):
            for v in self.region[i + 1 :]:
                e = state.edge(u, v)
                if state.is_free(e):
                    self.annotate(stage=2, rule="mop-up")
                    return self._claim(state, u, v)
        return []

    def _finish_path(self) -> None:
        self.complete = True
        self.final_path = list(self.pa) + list(reversed(self.pb))

    # -- stage 2, paper-faithful delegation mode ------------------------------------

    def _leftover_region(self):
        out = [v for v in self.region if v not in self.in_pa and v not in self.in_pb]
        if len(self.pa) > 1:
            out.append(self.pa[-1])
        if len(self.pb) > 1:
            out.append(self.pb[-1])
        else:
            out.append(self.b)
        if len(self.pa) == 1:
            out.append(self.a)
        return sorted(set(out))

    def _stage2_hamcon_move(self, state: GameState) -> list:
        from .hamcon import REGION_FLOOR

        if len(self._leftover_region()) < REGION_FLOOR:
            return self._stage2_direct_move(state)
        if self._hamcon is None:
            self._hamcon = HamConMaker(
                self._leftover_region(), state, self.q, mode="heuristic", seed=self.seed
            )
        if self._try_extract(state):
            return self._mop_up(state)
        picks = self._hamcon.moves(state, [])
        self.claims_made += len(picks)
        if self.claims_made > self.claim_cap:
            raise Forfeit(f"claimed {self.claim_cap} edges without winning")
        self.annotate(stage=2, rule="hamcon-delegate")
        self._try_extract(state)
        return picks

    def _try_extract(self, state: GameState) -> bool:
        if self.complete:
            return True
        region = self._leftover_region()
        index = {v: i for i, v in enumerate(region)}
        adj = [[] for _ in region]
        for i, u in enumerate(region):
            for v in region[i + 1 :]:
                if state.ownership[state.edge(u, v)] == MAKER:
                    adj[index[u]].append(index[v])
                    adj[index[v]].append(index[u])
        src = self.pa[-1]
        dst = self.pb[-1]
        if src not in index or dst not in index:
            return False
        try:
            path = hamilton_path_between(adj, index[src], index[dst], node_cap=200_000)
        except RuntimeError:
            return False
        if path is None:
            return False
        middle = [region[i] for i in path]
        self.final_path = self.pa[:-1] + middle + list(reversed(self.pb))[1:]
        self.complete = True
        return True

    # -- predicates and reporting ----------------------------------------------------

    def done(self, state: GameState) -> bool:
        return self.complete

    def path_is_valid(self, state: GameState) -> bool:
        """Independent validity check of the finished path."""
        p = self.final_path
        if not p or p[0] != self.a or p[-1] != self.b:
            return False
        if sorted(p) != self.region:
            return False
        return all(
            state.ownership[state.edge(min(u, v), max(u, v))] == MAKER
            for u, v in zip(p, p[1:])
        )

    def finish(self, state: GameState) -> dict:
        guards = self.params.constraint_guards(self.k, self.q)
        return {
            "guards": guards,
            "stats": {
                "hampath_stage1_moves": self.stage1_moves,
                "hampath_claims": self.claims_made,
                "hampath_min_remaining_stage1": (
                    None
                    if self.min_remaining_stage1 is math.inf
                    else self.min_remaining_stage1
                ),
                "hampath_max_eligible_db": self.max_eligible_db,
                "hampath_max_danger_count": self.max_danger_count,
                "hampath_complete": self.complete,
                "hampath_params": {
                    "gamma": self.params.gamma,
                    "beta": self.params.beta,
                    "delta_prime": self.params.delta_prime,
                    "delta": self.params.delta,
                },
            },
        }
