"""Boards and game state for Maker-Breaker play.

A board is a flat array of elements owned by Free / Maker / Breaker.
Edge boards (the edge set of K_n) additionally carry the vertex count
and per-vertex degree caches for both players' graphs.

Edge encoding: the edges of K_n are indexed lexicographically over
pairs (u, v) with u < v, i.e. (0,1), (0,2), ..., (0,n-1), (1,2), ...
This bijection is fixed so transcripts are portable.
"""

from __future__ import annotations

from dataclasses import dataclass

FREE = 0
MAKER = 1
BREAKER = 2

SIDES = ("maker", "breaker")


class BoardError(ValueError):
    """Invalid board construction or mismatched board sizes."""


class DoubleClaimError(ValueError):
    """An element was claimed twice; always a bug in the caller."""


@dataclass(frozen=True)
class Bias:
    """Claims per turn: Maker takes p elements, Breaker takes q."""

    p: int = 1
    q: int = 1

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"bias must be positive, got ({self.p}:{self.q})")

    def of(self, side: str) -> int:
        return self.p if side == "maker" else self.q


def edge_index(u: int, v: int, n: int) -> int:
    """Index of edge (u, v) in the lexicographic edge order of K_n."""
    if u > v:
        u, v = v, u
    if u == v or v >= n or u < 0:
        raise BoardError(f"not an edge of K_{n}: ({u}, {v})")
    return u * (n - 1) - u * (u - 1) // 2 + (v - u - 1)


def edge_endpoints(index: int, n: int) -> tuple[int, int]:
    """Inverse of :func:`edge_index`."""
    if not 0 <= index < n * (n - 1) // 2:
        raise BoardError(f"edge index {index} out of range for K_{n}")
    u = 0
    row = n - 1
    while index >= row:
        index -= row
        u += 1
        row -= 1
    return u, u + 1 + index


class GameState:
    """Ownership of every board element plus move bookkeeping.

    Confined to a single playout; never shared across games.
    """

    def __init__(self, board_size: int, vertex_count: int | None = None):
        if board_size < 0:
            raise BoardError("negative board size")
        self.board_size = board_size
        self.ownership = bytearray(board_size)
        self.free_count = board_size
        self.vertex_count = vertex_count
        self.move_count = {"maker": 0, "breaker": 0}
        if vertex_count is not None:
            self.maker_degrees = [0] * vertex_count
            self.breaker_degrees = [0] * vertex_count
        else:
            self.maker_degrees = None
            self.breaker_degrees = None

    # -- board constructors ------------------------------------------------

    @classmethod
    def complete_board(cls, n: int) -> "GameState":
        """The edge set of K_n, all elements free."""
        if n < 2:
            raise BoardError(f"complete board needs n >= 2, got {n}")
        return cls(n * (n - 1) // 2, vertex_count=n)

    @classmethod
    def element_board(cls, size: int) -> "GameState":
        """A structureless board of `size` elements."""
        return cls(size)

    # -- edge helpers ------------------------------------------------------

    @property
    def is_edge_board(self) -> bool:
        return self.vertex_count is not None

    def edge(self, u: int, v: int) -> int:
        assert self.vertex_count is not None
        return edge_index(u, v, self.vertex_count)

    def endpoints(self, e: int) -> tuple[int, int]:
        assert self.vertex_count is not None
        return edge_endpoints(e, self.vertex_count)

    # -- claims ------------------------------------------------------------

    def apply_claim(self, side: str, element: int) -> None:
        if not 0 <= element < self.board_size:
            raise BoardError(f"element {element} out of range")
        if self.ownership[element] != FREE:
            raise DoubleClaimError(f"element {element} already claimed")
        self.ownership[element] = MAKER if side == "maker" else BREAKER
        self.free_count -= 1
        self.move_count[side] += 1
        if self.vertex_count is not None:
            u, v = self.endpoints(element)
            degs = self.maker_degrees if side == "maker" else self.breaker_degrees
            degs[u] += 1
            degs[v] += 1

    def is_free(self, element: int) -> bool:
        return self.ownership[element] == FREE

    def owner(self, element: int) -> int:
        return self.ownership[element]

    def free_elements(self):
        own = self.ownership
        return [e for e in range(self.board_size) if own[e] == FREE]

    def owned_elements(self, side: str):
        want = MAKER if side == "maker" else BREAKER
        own = self.ownership
        return [e for e in range(self.board_size) if own[e] == want]

    # -- edge-board views ----------------------------------------------------

    def owned_edges(self, side: str):
        return [self.endpoints(e) for e in self.owned_elements(side)]

    def degree(self, side: str, v: int) -> int:
        degs = self.maker_degrees if side == "maker" else self.breaker_degrees
        return degs[v]

    def free_neighbors(self, v: int):
        """Vertices w such that the edge (v, w) is still free."""
        n = self.vertex_count
        return [w for w in range(n) if w != v and self.is_free(self.edge(v, w))]

    def recompute_degrees(self, side: str):
        """Degrees recomputed from ownership; used by consistency checks."""
        n = self.vertex_count
        degs = [0] * n
        want = MAKER if side == "maker" else BREAKER
        for e in range(self.board_size):
            if self.ownership[e] == want:
                u, v = self.endpoints(e)
                degs[u] += 1
                degs[v] += 1
        return degs

    def copy(self) -> "GameState":
        dup = GameState(self.board_size, self.vertex_count)
        dup.ownership = bytearray(self.ownership)
        dup.free_count = self.free_count
        dup.move_count = dict(self.move_count)
        if self.vertex_count is not None:
            dup.maker_degrees = list(self.maker_degrees)
            dup.breaker_degrees = list(self.breaker_degrees)
        return dup


def complete_board(n: int) -> GameState:
    """Module-level alias for :meth:`GameState.complete_board`."""
    return GameState.complete_board(n)


def other_side(side: str) -> str:
    return "breaker" if side == "maker" else "maker"
