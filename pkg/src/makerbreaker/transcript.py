"""Replayable game transcripts, serialized as JSON lines.

One record per line: a header (seed, bias, board, strategies), one
record per move, and a footer with the outcome. The format carries a
``format_version`` so audits can reject records they do not understand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .core import GameState, BoardError

FORMAT_VERSION = 1


class TranscriptError(ValueError):
    """Malformed transcript input."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass
class Move:
    player: str
    elements: list
    note: dict = field(default_factory=dict)


@dataclass
class Outcome:
    kind: str  # maker_win | breaker_win | forfeit | exhausted
    move_index: int | None = None
    reason: str | None = None
    by: str | None = None

    def to_json(self):
        d = {"kind": self.kind}
        if self.move_index is not None:
            d["move_index"] = self.move_index
        if self.reason is not None:
            d["reason"] = self.reason
        if self.by is not None:
            d["by"] = self.by
        return d

    @classmethod
    def from_json(cls, d):
        return cls(d["kind"], d.get("move_index"), d.get("reason"), d.get("by"))


@dataclass
class Transcript:
    seed: int
    bias: tuple
    first: str
    board: dict  # {"kind": "complete", "n": ...} or {"kind": "elements", "size": ...}
    maker: str
    breaker: str
    kind: str = "game"
    params: dict = field(default_factory=dict)
    moves: list = field(default_factory=list)
    outcome: Outcome | None = None
    stats: dict = field(default_factory=dict)
    guards: dict = field(default_factory=dict)

    # -- serialization -------------------------------------------------------

    def to_lines(self):
        header = {
            "record": "header",
            "format_version": FORMAT_VERSION,
            "kind": self.kind,
            "seed": self.seed,
            "bias": list(self.bias),
            "first": self.first,
            "board": self.board,
            "maker": self.maker,
            "breaker": self.breaker,
            "params": self.params,
        }
        yield json.dumps(header, sort_keys=True)
        for i, mv in enumerate(self.moves):
            yield json.dumps(
                {
                    "record": "move",
                    "index": i,
                    "player": mv.player,
                    "elements": list(mv.elements),
                    "note": mv.note,
                },
                sort_keys=True,
            )
        footer = {
            "record": "footer",
            "outcome": self.outcome.to_json() if self.outcome else None,
            "stats": self.stats,
            "guards": self.guards,
        }
        yield json.dumps(footer, sort_keys=True)

    def save(self, path) -> None:
        Path(path).write_text("\n".join(self.to_lines()) + "\n")

    @classmethod
    def from_lines(cls, lines) -> "Transcript":
        header = None
        moves = []
        footer = None
        for lineno, raw in enumerate(lines, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise TranscriptError(f"bad JSON ({exc.msg})", lineno) from exc
            kind = rec.get("record")
            if kind == "header":
                if header is not None:
                    raise TranscriptError("duplicate header", lineno)
                if rec.get("format_version") != FORMAT_VERSION:
                    raise TranscriptError(
                        f"unsupported format_version {rec.get('format_version')}", lineno
                    )
                header = rec
            elif kind == "move":
                if header is None:
                    raise TranscriptError("move before header", lineno)
                if rec.get("index") != len(moves):
                    raise TranscriptError(
                        f"move index {rec.get('index')} out of order", lineno
                    )
                moves.append(Move(rec["player"], rec["elements"], rec.get("note", {})))
            elif kind == "footer":
                footer = rec
            else:
                raise TranscriptError(f"unknown record type {kind!r}", lineno)
        if header is None:
            raise TranscriptError("missing header")
        if footer is None:
            raise TranscriptError("missing footer")
        t = cls(
            seed=header["seed"],
            bias=tuple(header["bias"]),
            first=header["first"],
            board=header["board"],
            maker=header["maker"],
            breaker=header["breaker"],
            kind=header.get("kind", "game"),
            params=header.get("params", {}),
            moves=moves,
            outcome=Outcome.from_json(footer["outcome"]) if footer["outcome"] else None,
            stats=footer.get("stats", {}),
            guards=footer.get("guards", {}),
        )
        return t

    @classmethod
    def load(cls, path) -> "Transcript":
        return cls.from_lines(Path(path).read_text().splitlines())

    # -- replay ----------------------------------------------------------------

    def build_board(self) -> GameState:
        board = self.board
        if board["kind"] == "complete":
            return GameState.complete_board(board["n"])
        if board["kind"] == "elements":
            return GameState.element_board(board["size"])
        raise TranscriptError(f"unknown board kind {board['kind']!r}")

    def replay(self) -> GameState:
        """Re-apply every recorded claim from the empty board."""
        state = self.build_board()
        for mv in self.moves:
            for e in mv.elements:
                state.apply_claim(mv.player, e)
        return state
