"""Deterministic seed derivation for replayable playouts.

Every playout owns one 64-bit root seed. Any component that needs
randomness asks for a named child stream; the child seed is a hash of
(root, label), so adding a new consumer never perturbs existing ones.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(root: int, label: str) -> int:
    digest = hashlib.sha256(f"{root}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class SeedStream:
    """Factory for named, independent ``random.Random`` child streams."""

    def __init__(self, root: int):
        self.root = int(root)

    def stream(self, label: str) -> random.Random:
        return random.Random(derive_seed(self.root, label))

    def child(self, label: str) -> "SeedStream":
        return SeedStream(derive_seed(self.root, label))
