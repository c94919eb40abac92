"""Beck's criterion as an evaluator and as a playable Breaker.

The criterion sum uses lambda = (1+q)^(1/p): a winning set B that Maker
still needs u(B) elements of carries weight lambda^(-u(B)), so the
initial sum is sum((1+q)^(-|B|/p)). The constructive side claims, one
element at a time, the free element carrying the largest total weight
over the alive sets containing it -- standard Erdos-Selfridge-style
play, certified against the minimax oracle rather than assumed correct.

Large sets are handled in log space to dodge underflow.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import sparse

from .core import GameState, Bias, FREE, MAKER, BREAKER
from .hypergraph import Hypergraph
from .runner import Strategy

LOG_SPACE_THRESHOLD = 500.0  # |B|/p beyond this: weights via logarithms


def _log_terms(hg: Hypergraph, bias: Bias):
    log_lam = math.log(1 + bias.q) / bias.p
    return [-len(s) * log_lam for s in hg.winning_sets]


def beck_sum(hg: Hypergraph, bias: Bias) -> float:
    """sum over winning sets of (1+q)^(-|B|/p), underflow-safe."""
    if not hg.winning_sets:
        return 0.0
    if max(len(s) for s in hg.winning_sets) / bias.p <= LOG_SPACE_THRESHOLD:
        lam = (1 + bias.q) ** (1.0 / bias.p)
        return math.fsum(lam ** (-len(s)) for s in hg.winning_sets)
    return math.exp(log_beck_sum(hg, bias))


def log_beck_sum(hg: Hypergraph, bias: Bias) -> float:
    """log of beck_sum, exact even when the sum itself underflows."""
    terms = _log_terms(hg, bias)
    if not terms:
        return -math.inf
    m = max(terms)
    return m + math.log(math.fsum(math.exp(t - m) for t in terms))


def criterion_holds(hg: Hypergraph, bias: Bias) -> bool:
    """True iff the sum is strictly below 1/(1+q); equality fails."""
    return log_beck_sum(hg, bias) < -math.log(1 + bias.q)


class PotentialLedger:
    """Alive/dead status and weights for every winning set.

    Kept consistent with a GameState by feeding it every claim. Set
    weights live in a numpy array so the per-element weight sums are a
    single sparse mat-vec even for six-figure Hall hypergraphs.
    The ledger's "maker"/"breaker" are the roles *within its own
    hypergraph game*; dual constructions map real players onto them.
    """

    def __init__(self, hg: Hypergraph, bias: Bias):
        self.hg = hg
        self.bias = bias
        self.lam = (1 + bias.q) ** (1.0 / bias.p)
        self.log_lam = math.log(1 + bias.q) / bias.p
        nsets = len(hg.winning_sets)
        self.unclaimed = np.array([len(s) for s in hg.winning_sets], dtype=np.int64)
        self.alive = np.ones(nsets, dtype=bool)
        # incidence: rows = sets, cols = elements
        rows, cols = [], []
        for i, s in enumerate(hg.winning_sets):
            for e in s:
                rows.append(i)
                cols.append(e)
        data = np.ones(len(rows), dtype=np.float64)
        self.incidence = sparse.csr_matrix(
            (data, (rows, cols)), shape=(nsets, hg.board_size)
        )
        self.incidence_t = self.incidence.T.tocsr()
        self._sets_of = self.incidence.T.tocsc()  # fast column slicing by element

    def sets_containing(self, element: int):
        col = self.incidence_t[element]
        return col.indices

    def _weights(self):
        w = np.zeros(len(self.alive))
        mask = self.alive
        if mask.any():
            expo = -self.unclaimed[mask] * self.log_lam
            w[mask] = np.exp(expo)
        return w

    def element_weights(self) -> np.ndarray:
        """For each element, the total weight of alive sets containing it."""
        return self.incidence_t.dot(self._weights())

    def running_sum(self) -> float:
        return float(self._weights().sum())

    def recompute_sum(self) -> float:
        """Independent recomputation for the consistency invariant."""
        total = 0.0
        for i, s in enumerate(self.hg.winning_sets):
            if self.alive[i]:
                total += self.lam ** (-int(self.unclaimed[i]))
        return total

    def apply_claim(self, side: str, element: int) -> None:
        idx = self.sets_containing(element)
        if side == "maker":
            self.unclaimed[idx] -= 1
        else:
            self.alive[idx] = False

    def maker_won(self) -> bool:
        return bool(np.any(self.alive & (self.unclaimed == 0)))


class PotentialBreaker(Strategy):
    """Greedy potential play: q claims per turn, each the max-weight free
    element of the ledger's game; ties go to the lowest element id."""

    side = "breaker"
    name = "potential"

    def __init__(self, hg: Hypergraph, bias: Bias):
        self.ledger = PotentialLedger(hg, bias)
        self.bias = bias

    def moves(self, state: GameState, opponent_elements: list) -> list:
        for e in opponent_elements:
            self.ledger.apply_claim("maker", e)
        return potential_breaker_move(self.ledger, state, self.bias.q)


def potential_breaker_move(
    ledger: PotentialLedger, state: GameState, q: int, allowed=None
) -> list:
    """One turn of greedy potential play against the given state.

    The ledger must already reflect every claim in `state`. Returns up
    to q free elements (restricted to `allowed` when given, an iterable
    of element ids) and updates the ledger with them. Each pick is the
    free element maximizing the alive-set weight sum; ties break to the
    lowest element id (numpy argmax returns the first maximum).
    """
    picks = []
    free = np.frombuffer(bytes(state.ownership), dtype=np.uint8) == FREE
    free = free.copy()
    if allowed is not None:
        mask = np.zeros(state.board_size, dtype=bool)
        mask[list(allowed)] = True
        free &= mask
    for _ in range(min(q, int(free.sum()))):
        weights = ledger.element_weights()
        weights[~free] = -1.0
        e = int(np.argmax(weights))
        if weights[e] < 0:
            break
        picks.append(e)
        free[e] = False
        ledger.apply_claim("breaker", e)
    return picks


class FakeMovesMaker(Strategy):
    """Bias-reduction wrapper: converts a (1:q) Maker win into fast
    (1:q') play by simulating q - q' extra Breaker claims per round.

    The shadow claims are pessimistic fictions drawn deterministically
    from the lowest shadow-free elements before the inner strategy is
    consulted each turn. If the inner strategy ever demands an element
    that is shadow-claimed but really free, the claim is permitted and
    the event logged in the move note.
    """

    side = "maker"

    def __init__(self, inner: Strategy, q: int, q_prime: int):
        if q_prime >= q:
            raise ValueError(f"fake moves need q' < q, got q'={q_prime}, q={q}")
        if inner.side != "maker":
            raise ValueError("fake moves wrap a Maker strategy")
        self.inner = inner
        self.q = q
        self.q_prime = q_prime
        self.name = f"fake-moves({inner.name},q={q},q'={q_prime})"
        self.shadow: GameState | None = None

    def moves(self, state: GameState, opponent_elements: list) -> list:
        if self.shadow is None:
            self.shadow = GameState(state.board_size, state.vertex_count)
        shadow = self.shadow
        for e in opponent_elements:
            if shadow.is_free(e):
                shadow.apply_claim("breaker", e)
        fakes = []
        for e in range(shadow.board_size):
            if len(fakes) == self.q - self.q_prime:
                break
            if shadow.is_free(e):
                shadow.apply_claim("breaker", e)
                fakes.append(e)
        picks = self.inner.moves(shadow, opponent_elements)
        real = []
        overridden = []
        for e in picks:
            if state.is_free(e):
                real.append(e)
                if shadow.is_free(e):
                    shadow.apply_claim("maker", e)
                else:
                    overridden.append(e)
        note = self.inner.pop_note()
        if fakes:
            note["fake_claims"] = fakes
        if overridden:
            note["shadow_override"] = overridden
        self.annotate(**note)
        return real


def fake_moves_wrap(inner: Strategy, q: int, q_prime: int) -> FakeMovesMaker:
    return FakeMovesMaker(inner, q, q_prime)


def fake_moves_bound(board_size: int, q: int) -> float:
    """Winning wrapped playouts finish within this many Maker moves."""
    return 1 + board_size / (q + 1)
