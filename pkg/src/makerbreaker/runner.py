"""The (p:q) turn loop and the strategy contract.

A strategy is any object with ``side`` ("maker"/"breaker"), a ``name``,
and ``moves(state, opponent_elements) -> list[int]`` returning the free
elements it claims this turn (at most its bias; fewer is a pass or a
short final turn). A strategy signals that it cannot follow its own
rules by raising :class:`Forfeit`.

Win detection is a per-game callback: full winning-set scans are
infeasible for implicit families, so games that know their goal supply
a predicate.
"""

from __future__ import annotations

from .core import GameState, Bias, other_side
from .transcript import Transcript, Move, Outcome


class Forfeit(Exception):
    """A strategy could not follow its prescribed rules."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class Strategy:
    """Base class; subclasses implement :meth:`moves`."""

    name = "strategy"
    side = "maker"

    def moves(self, state: GameState, opponent_elements: list) -> list:
        raise NotImplementedError

    def pop_note(self) -> dict:
        """Per-move annotation merged into the transcript; cleared on read."""
        note = getattr(self, "_note", None)
        if note:
            self._note = {}
            return note
        return {}

    def annotate(self, **kw) -> None:
        note = getattr(self, "_note", None)
        if note is None:
            note = self._note = {}
        note.update(kw)

    def finish(self, state: GameState) -> dict:
        """Stats/guards contributed to the transcript footer."""
        return {}


def run_game(
    board: GameState,
    bias: Bias,
    maker: Strategy,
    breaker: Strategy,
    first: str = "breaker",
    move_cap: int | None = None,
    seed: int = 0,
    win_check=None,
    board_desc: dict | None = None,
    params: dict | None = None,
) -> Transcript:
    """Play one game to completion and return its transcript.

    ``win_check(state) -> bool`` is consulted after every Maker claim;
    when it fires the outcome is a Maker win at that move index. When
    the board is exhausted without a win the outcome is a Breaker win
    if a win_check was supplied (there was a goal and it was not met),
    otherwise plain exhaustion. ``move_cap`` bounds the total number of
    turns as a safety valve.
    """
    strategies = {"maker": maker, "breaker": breaker}
    if maker.side != "maker" or breaker.side != "breaker":
        raise ValueError("strategies registered for the wrong sides")
    if board_desc is None:
        if board.is_edge_board:
            board_desc = {"kind": "complete", "n": board.vertex_count}
        else:
            board_desc = {"kind": "elements", "size": board.board_size}
    t = Transcript(
        seed=seed,
        bias=(bias.p, bias.q),
        first=first,
        board=board_desc,
        maker=maker.name,
        breaker=breaker.name,
        params=params or {},
    )
    state = board
    side = first
    last_elements = {"maker": [], "breaker": []}
    outcome = None
    turn = 0
    consecutive_passes = 0
    while outcome is None:
        if move_cap is not None and turn >= move_cap:
            outcome = Outcome("exhausted", reason="move-cap")
            break
        if state.free_count == 0:
            outcome = Outcome("breaker_win" if win_check else "exhausted")
            break
        if consecutive_passes >= 2:
            # both sides passed with elements still free: nothing can change
            outcome = Outcome("exhausted", reason="stalemate")
            break
        strat = strategies[side]
        limit = min(bias.of(side), state.free_count)
        try:
            elements = strat.moves(state, last_elements[other_side(side)])
        except Forfeit as f:
            outcome = Outcome("forfeit", reason=f.reason, by=side)
            break
        if len(elements) > limit:
            outcome = Outcome("forfeit", reason="over-bias move", by=side)
            break
        if len(set(elements)) != len(elements):
            outcome = Outcome("forfeit", reason="duplicate elements in move", by=side)
            break
        bad = [e for e in elements if not state.is_free(e)]
        if bad:
            outcome = Outcome("forfeit", reason=f"illegal-move: element {bad[0]} not free", by=side)
            break
        won_at = None
        for e in elements:
            state.apply_claim(side, e)
        # checked after the whole move, and on empty Maker moves too: a
        # strategy may discover completion without a fresh claim (e.g.
        # by reordering already-owned path edges)
        if side == "maker" and win_check is not None and win_check(state):
            won_at = len(t.moves)
        note = strat.pop_note()
        if not elements:
            note.setdefault("pass", True)
            consecutive_passes += 1
        else:
            consecutive_passes = 0
        t.moves.append(Move(side, list(elements), note))
        last_elements[side] = list(elements)
        if won_at is not None:
            outcome = Outcome("maker_win", move_index=won_at)
            break
        side = other_side(side)
        turn += 1
    t.outcome = outcome
    for s in (maker, breaker):
        extra = s.finish(state)
        if extra:
            t.stats.update(extra.get("stats", {}))
            t.guards.update(extra.get("guards", {}))
    t.stats.setdefault("maker_claims", state.move_count["maker"])
    t.stats.setdefault("breaker_claims", state.move_count["breaker"])
    return t


class ScriptedStrategy(Strategy):
    """Plays a fixed list of moves; useful for tests and replays."""

    def __init__(self, side: str, script, name: str = "scripted"):
        self.side = side
        self.name = name
        self.script = [list(mv) for mv in script]
        self._cursor = 0

    def moves(self, state, opponent_elements):
        if self._cursor >= len(self.script):
            return []
        mv = self.script[self._cursor]
        self._cursor += 1
        return [e for e in mv if state.is_free(e)]
