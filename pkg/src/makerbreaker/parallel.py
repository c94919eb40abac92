"""Playing several disjoint sub-games under one global (1:q) bias.

Maker assumes the BoxBreaker role over one box per board: opponent
claims on a board add weight (scaled by 1/q), and Maker's visit resets
the box. The max-weight rule guarantees no board is neglected for more
than q(1 + log(m + k_cap)) opponent claims between visits, so each
sub-strategy only ever needs to beat that inflated bias.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import GameState
from .runner import Strategy, Forfeit
from .boxgame import BoxState, cbox_breaker_reset


def inflated_bias(m: int, q: int, total_elements: int) -> int:
    """ceil(q(1 + log(m + ceil(total/(q+1))))): the bias every
    sub-strategy must be declared to beat. The ceiling is safe (a
    stronger Breaker)."""
    if m < 1 or q < 1 or total_elements < 1:
        raise ValueError("inflated_bias needs positive arguments")
    k_cap = math.ceil(total_elements / (q + 1))
    return math.ceil(q * (1 + math.log(m + k_cap)))


def round_cap(total_elements: int, q: int) -> int:
    """ceil(total/(q+1)): the game cannot last more rounds than this."""
    return math.ceil(total_elements / (q + 1))


@dataclass
class SubBoard:
    """One sub-game: its elements, win predicate, strategy, and budget."""

    elements: frozenset
    strategy: Strategy
    win_predicate: object  # callable(state) -> bool
    budget: int | None = None
    finished: bool = False
    maker_moves: int = 0


class SchedulerState:
    """Box weights per board plus finished flags."""

    def __init__(self, m: int, q: int, total_elements: int):
        self.box = BoxState(m=m)
        self.q = q
        self.finished = [False] * m
        self.k_cap = round_cap(total_elements, q)

    def feed_claims(self, per_board_counts) -> None:
        if sum(per_board_counts) > self.q:
            raise ValueError("opponent claims exceed bias q since last visit")
        for i, c in enumerate(per_board_counts):
            self.box.weights[i] += c / self.q

    def schedule(self) -> int:
        """Max-weight board; if that board is already won, the
        lowest-index unfinished one. Resets the chosen box."""
        if all(self.finished):
            raise Forfeit("scheduler-complete: all boards already won")
        pick = cbox_breaker_reset(self.box)
        if self.finished[pick]:
            pick = next(i for i, f in enumerate(self.finished) if not f)
        self.box.weights[pick] = 0.0
        self.box.round += 1
        return pick


class ParallelMaker(Strategy):
    """Composite Maker: schedules one sub-strategy per turn.

    Sub-strategies see the shared GameState but must claim only inside
    their own element range; their budgets t_i are enforced, and a
    board whose win predicate fires is never scheduled again.
    """

    side = "maker"
    name = "parallel"

    def __init__(self, boards: list, q: int):
        self.boards = boards
        self.q = q
        total = sum(len(b.elements) for b in boards)
        self.sched = SchedulerState(len(boards), q, total)
        self.element_to_board = {}
        for i, b in enumerate(boards):
            for e in b.elements:
                dup = self.element_to_board.setdefault(e, i)
                if dup != i:
                    raise ValueError(f"element {e} in two sub-boards")
        self.unattributed = []
        # opponent claims on each board since that board's last Maker visit
        self._pending = [[] for _ in boards]
        self.max_gap = [0] * len(boards)
        self.visit_log = []  # (board index, opponent claims on it since last visit)

    def moves(self, state: GameState, opponent_elements: list) -> list:
        counts = [0] * len(self.boards)
        for e in opponent_elements:
            i = self.element_to_board.get(e)
            if i is None:
                self.unattributed.append(e)
            else:
                counts[i] += 1
                self._pending[i].append(e)
        self.sched.feed_claims(counts)
        for i in range(len(self.boards)):
            self.max_gap[i] = max(self.max_gap[i], len(self._pending[i]))
        # refresh finished flags before scheduling
        for i, b in enumerate(self.boards):
            if not b.finished and b.win_predicate(state):
                b.finished = True
                self.sched.finished[i] = True
        if all(b.finished for b in self.boards):
            self.annotate(all_boards_won=True)
            return []
        i = self.sched.schedule()
        board = self.boards[i]
        self.visit_log.append((i, len(self._pending[i])))
        pending = self._pending[i]
        self._pending[i] = []
        board.maker_moves += 1
        if board.budget is not None and board.maker_moves > board.budget:
            raise Forfeit(f"board {i} exceeded its move budget {board.budget}")
        picks = board.strategy.moves(state, pending)
        bad = [e for e in picks if e not in board.elements]
        if bad:
            raise Forfeit(f"board {i} strategy claimed foreign element {bad[0]}")
        note = board.strategy.pop_note()
        note["board"] = i
        self.annotate(**note)
        return picks

    def finish(self, state: GameState) -> dict:
        return {
            "stats": {
                "per_board_maker_moves": [b.maker_moves for b in self.boards],
                "boards_finished": [b.finished for b in self.boards],
                "unattributed_opponent_claims": len(self.unattributed),
                "k_cap": self.sched.k_cap,
                "max_between_visit_claims": list(self.max_gap),
                "board_count": len(self.boards),
                "q": self.q,
            }
        }
