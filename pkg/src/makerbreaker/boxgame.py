"""The Box game with resets and its continuous relaxation.

BoxMaker spreads weight over m boxes each round (a total of 1 in the
continuous game; q elements in the integral game); BoxBreaker then
zeroes one box. The max-weight reset keeps every box below
1 + log(m+k) during the first k rounds (q times that in the integral
game), which is what the parallel-game scheduler relies on.

Integral play is represented through the bridge: claiming q_i elements
of box i adds weight q_i/q, so stored weights are multiples of 1/q and
the real element count of box i is q * weights[i].
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

from .rng import SeedStream


class IllegalBoxMove(ValueError):
    """BoxMaker claimed more than its bias allows."""


@dataclass
class BoxState:
    """Weights of the m boxes plus round bookkeeping.

    mode is "continuous" or "integral"; integral states carry q and
    keep weights as multiples of 1/q.
    """

    m: int
    q: int | None = None  # None in continuous mode
    weights: list = field(default_factory=list)
    round: int = 0
    last_reset: list = field(default_factory=list)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one box")
        if not self.weights:
            self.weights = [0.0] * self.m
        if not self.last_reset:
            self.last_reset = [-1] * self.m

    @property
    def mode(self) -> str:
        return "continuous" if self.q is None else "integral"

    def element_counts(self) -> list:
        """Real BoxMaker element counts (integral mode only)."""
        if self.q is None:
            raise ValueError("element counts only exist in integral mode")
        return [round(w * self.q) for w in self.weights]


def cbox_breaker_reset(state: BoxState) -> int:
    """Index of a maximum-weight box; ties go to the lowest index."""
    best = 0
    for i in range(1, state.m):
        if state.weights[i] > state.weights[best]:
            best = i
    return best


def rbox_bridge(claims, q: int) -> list:
    """Integral claims q_i, summing to at most q, as weight deltas q_i/q."""
    claims = [int(c) for c in claims]
    if any(c < 0 for c in claims):
        raise IllegalBoxMove(f"negative claim in {claims}")
    if sum(claims) > q:
        raise IllegalBoxMove(f"claims {claims} exceed bias {q}")
    return [c / q for c in claims]


def potential_phi(state: BoxState) -> float:
    """Phi = sum of exp(w_i)."""
    return math.fsum(math.exp(w) for w in state.weights)


def weight_bound(m: int, rounds: int, q: int = 1) -> float:
    """q(1 + ln(m + k)): the reset strategy's guarantee after k rounds."""
    return q * (1 + math.log(m + rounds))


@dataclass
class BoxRound:
    """One (BoxMaker, BoxBreaker) exchange, for traces and audits."""

    round: int
    claims: list  # integral claims, or deltas in continuous mode
    weights_after_claim: list
    reset_index: int
    weights_after_reset: list
    phi_before: float
    phi_after_claim: float
    phi_after_reset: float


@dataclass
class BoxTrace:
    m: int
    q: int | None
    mode: str
    adversary: str
    seed: int
    rounds: list = field(default_factory=list)
    forfeit: str | None = None

    def max_weight_observed(self) -> float:
        best = 0.0
        for r in self.rounds:
            best = max(best, max(r.weights_after_claim), max(r.weights_after_reset))
        return best

    def write_csv(self, path) -> None:
        """Per-round trace: round, box weights, phi, and the bound value."""
        q = self.q or 1
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["round"]
                + [f"w{i}" for i in range(self.m)]
                + ["phi", "bound", "max_weight"]
            )
            for r in self.rounds:
                bound = weight_bound(self.m, r.round + 1, q) / q
                writer.writerow(
                    [r.round]
                    + [f"{w:.9g}" for w in r.weights_after_claim]
                    + [
                        f"{r.phi_after_claim:.9g}",
                        f"{bound:.9g}",
                        f"{max(r.weights_after_claim):.9g}",
                    ]
                )


def play_box(
    m: int,
    rounds: int,
    adversary,
    q: int | None = None,
    seed: int = 0,
    adversary_name: str = "",
) -> BoxTrace:
    """Run the reset game for the given number of rounds.

    ``adversary(state, rng)`` returns this round's claims: a vector of
    integers summing to at most q (integral) or nonnegative reals
    summing to 1 (continuous). Illegal claims end the game with a
    forfeit record rather than an exception.
    """
    state = BoxState(m=m, q=q)
    rng = SeedStream(seed).stream("boxmaker")
    trace = BoxTrace(
        m=m, q=q, mode=state.mode, adversary=adversary_name or getattr(adversary, "__name__", "adversary"),
        seed=seed,
    )
    for k in range(rounds):
        phi_before = potential_phi(state)
        claims = list(adversary(state, rng))
        if len(claims) != m:
            trace.forfeit = f"round {k}: claim vector of length {len(claims)} != m"
            break
        try:
            if state.mode == "integral":
                deltas = rbox_bridge(claims, state.q)
            else:
                if any(c < 0 for c in claims):
                    raise IllegalBoxMove(f"negative delta in {claims}")
                if abs(sum(claims) - 1.0) > 1e-12:
                    raise IllegalBoxMove(f"deltas sum to {sum(claims)}, not 1")
                deltas = [float(c) for c in claims]
        except IllegalBoxMove as exc:
            trace.forfeit = f"round {k}: {exc}"
            break
        for i in range(m):
            state.weights[i] += deltas[i]
        after_claim = list(state.weights)
        phi_claim = potential_phi(state)
        reset = cbox_breaker_reset(state)
        state.weights[reset] = 0.0
        state.last_reset[reset] = k
        state.round = k + 1
        trace.rounds.append(
            BoxRound(
                round=k,
                claims=claims,
                weights_after_claim=after_claim,
                reset_index=reset,
                weights_after_reset=list(state.weights),
                phi_before=phi_before,
                phi_after_claim=phi_claim,
                phi_after_reset=potential_phi(state),
            )
        )
    return trace


def play_rbox(m: int, q: int, k_rounds: int, boxmaker, seed: int = 0, name: str = "") -> BoxTrace:
    """Integral game wrapper around :func:`play_box`."""
    return play_box(m, k_rounds, boxmaker, q=q, seed=seed, adversary_name=name)


# -- the adversary zoo -----------------------------------------------------------
#
# The weight-bound theorem quantifies over all adversaries; these cover
# the obvious attack shapes. Integral adversaries return claim vectors
# summing to exactly q; continuous ones return deltas summing to 1.


def _spread_integer(q: int, m: int) -> list:
    base, extra = divmod(q, m)
    return [base + (1 if i < extra else 0) for i in range(m)]


def uniform_spreader(state: BoxState, rng) -> list:
    if state.mode == "integral":
        return _spread_integer(state.q, state.m)
    return [1.0 / state.m] * state.m


def single_box_piler(state: BoxState, rng) -> list:
    claims = [0] * state.m if state.mode == "integral" else [0.0] * state.m
    claims[0] = state.q if state.mode == "integral" else 1.0
    return claims


def least_recently_reset_piler(state: BoxState, rng) -> list:
    target = min(range(state.m), key=lambda i: (state.last_reset[i], i))
    claims = [0] * state.m if state.mode == "integral" else [0.0] * state.m
    claims[target] = state.q if state.mode == "integral" else 1.0
    return claims


def random_spreader(state: BoxState, rng) -> list:
    if state.mode == "integral":
        claims = [0] * state.m
        for _ in range(state.q):
            claims[rng.randrange(state.m)] += 1
        return claims
    cuts = sorted(rng.random() for _ in range(state.m - 1))
    pts = [0.0] + cuts + [1.0]
    return [pts[i + 1] - pts[i] for i in range(state.m)]


def potential_greedy_piler(state: BoxState, rng) -> list:
    """Piles everything on the current heaviest box (maximal Phi growth)."""
    target = max(range(state.m), key=lambda i: (state.weights[i], -i))
    claims = [0] * state.m if state.mode == "integral" else [0.0] * state.m
    claims[target] = state.q if state.mode == "integral" else 1.0
    return claims


BOX_ADVERSARIES = {
    "uniform": uniform_spreader,
    "piler": single_box_piler,
    "lru": least_recently_reset_piler,
    "random": random_spreader,
    "greedy": potential_greedy_piler,
}
