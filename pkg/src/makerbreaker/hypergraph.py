"""Finite boards with explicit winning-set families.

Text format: first line is the board size, each following non-blank
line is one winning set as space-separated element ids.
"""

from __future__ import annotations

from pathlib import Path

from .core import BoardError, GameState, MAKER


class Hypergraph:
    """A board size together with a family of winning sets."""

    def __init__(self, board_size: int, winning_sets, allow_empty: bool = False):
        self.board_size = int(board_size)
        self.winning_sets = [frozenset(int(e) for e in s) for s in winning_sets]
        for s in self.winning_sets:
            if not s and not allow_empty:
                raise ValueError("empty winning set (instant Maker win) not permitted")
            for e in s:
                if not 0 <= e < self.board_size:
                    raise ValueError(f"element {e} outside board of size {self.board_size}")

    def __len__(self):
        return len(self.winning_sets)

    def __repr__(self):
        return f"Hypergraph(board_size={self.board_size}, sets={len(self.winning_sets)})"

    # -- text format ---------------------------------------------------------

    @classmethod
    def load(cls, path) -> "Hypergraph":
        lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise ValueError(f"{path}: empty hypergraph file")
        board_size = int(lines[0])
        sets = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
        return cls(board_size, sets)

    def dump(self, path) -> None:
        out = [str(self.board_size)]
        out += [" ".join(str(e) for e in sorted(s)) for s in self.winning_sets]
        Path(path).write_text("\n".join(out) + "\n")


def winner_check(state: GameState, hg: Hypergraph) -> str:
    """'maker_win', 'breaker_win_exhaustion', or 'undecided'."""
    if state.board_size != hg.board_size:
        raise BoardError(
            f"board size {state.board_size} != hypergraph board {hg.board_size}"
        )
    own = state.ownership
    for s in hg.winning_sets:
        if all(own[e] == MAKER for e in s):
            return "maker_win"
    if state.free_count == 0:
        return "breaker_win_exhaustion"
    return "undecided"
