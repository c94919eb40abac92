"""Tree inputs for the embedding game: analysis and generation.

Trees load from a plain edge-list format (first line n, then n-1 lines
"u v") or from Prufer sequences for seeded random generation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path


class NotATreeError(ValueError):
    pass


@dataclass
class TreeSpec:
    """A tree on vertices 0..n-1 given by its adjacency lists."""

    n: int
    adj: list = field(default_factory=list)

    @classmethod
    def from_edges(cls, n: int, edges) -> "TreeSpec":
        adj = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise NotATreeError(f"bad edge ({u}, {v}) for n={n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise NotATreeError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        t = cls(n, [sorted(nb) for nb in adj])
        t.validate()
        return t

    def validate(self) -> None:
        edge_count = sum(len(nb) for nb in self.adj) // 2
        if self.n == 0 or edge_count != self.n - 1:
            raise NotATreeError(f"{edge_count} edges on {self.n} vertices")
        # connectivity
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            v = stack.pop()
            for w in self.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        if count != self.n:
            raise NotATreeError("not connected")

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def max_degree(self) -> int:
        return max(len(nb) for nb in self.adj)

    # -- io ----------------------------------------------------------------

    @classmethod
    def load(cls, path) -> "TreeSpec":
        lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
        n = int(lines[0])
        edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
        return cls.from_edges(n, edges)

    def dump(self, path) -> None:
        out = [str(self.n)] + [f"{u} {v}" for u, v in self.edges()]
        Path(path).write_text("\n".join(out) + "\n")

    # -- prufer ------------------------------------------------------------

    @classmethod
    def from_prufer(cls, seq) -> "TreeSpec":
        n = len(seq) + 2
        degree = [1] * n
        for v in seq:
            degree[v] += 1
        edges = []
        import heapq

        leaves = [v for v in range(n) if degree[v] == 1]
        heapq.heapify(leaves)
        for v in seq:
            leaf = heapq.heappop(leaves)
            edges.append((leaf, v))
            degree[v] -= 1
            if degree[v] == 1:
                heapq.heappush(leaves, v)
        u, v = heapq.heappop(leaves), heapq.heappop(leaves)
        edges.append((u, v))
        return cls.from_edges(n, edges)

    @classmethod
    def random(cls, n: int, rng, max_degree: int | None = None) -> "TreeSpec":
        """Uniform random tree via Prufer, optionally rejection-sampled
        down to a maximum degree."""
        if n == 1:
            return cls(1, [[]])
        if n == 2:
            return cls.from_edges(2, [(0, 1)])
        while True:
            seq = [rng.randrange(n) for _ in range(n - 2)]
            t = cls.from_prufer(seq)
            if max_degree is None or t.max_degree() <= max_degree:
                return t


# -- named families used throughout the tests -----------------------------------


def path_tree(n: int) -> TreeSpec:
    return TreeSpec.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> TreeSpec:
    return TreeSpec.from_edges(n, [(0, i) for i in range(1, n)])


def spider_tree(legs: int, leg_length: int) -> TreeSpec:
    """A center with `legs` paths of `leg_length` edges each."""
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(leg_length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return TreeSpec.from_edges(nxt, edges)


def caterpillar_tree(spine: int) -> TreeSpec:
    """A spine path with one leaf hanging off every spine vertex."""
    edges = [(i, i + 1) for i in range(spine - 1)]
    edges += [(i, spine + i) for i in range(spine)]
    return TreeSpec.from_edges(2 * spine, edges)


def double_broom_tree(handle: int, leaves_each: int) -> TreeSpec:
    """A bare handle with a tuft of leaves at each end (an "H" shape
    degenerates to this with two tufts)."""
    n = handle + 2 * leaves_each
    edges = [(i, i + 1) for i in range(handle - 1)]
    nxt = handle
    for _ in range(leaves_each):
        edges.append((0, nxt))
        nxt += 1
    for _ in range(leaves_each):
        edges.append((handle - 1, nxt))
        nxt += 1
    return TreeSpec.from_edges(n, edges)


def h_tree(bar: int, bridge: int) -> TreeSpec:
    """Two bars of length `bar` joined mid-to-mid by a bridge: two long
    bare paths plus a connecting bare path."""
    # first bar: 0..bar, second bar: bar+1..2bar+1, bridge between midpoints
    edges = [(i, i + 1) for i in range(bar)]
    off = bar + 1
    edges += [(off + i, off + i + 1) for i in range(bar)]
    mid1, mid2 = bar // 2, off + bar // 2
    prev = mid1
    nxt = 2 * bar + 2
    for _ in range(bridge - 1):
        edges.append((prev, nxt))
        prev = nxt
        nxt += 1
    edges.append((prev, mid2))
    return TreeSpec.from_edges(nxt, edges)


# -- analysis -------------------------------------------------------------------


@dataclass
class DegreeCensus:
    d1: set
    d2: set
    d_gt2: set
    leaf_neighbors: set

    @property
    def leaves(self) -> set:
        return self.d1


def degree_census(tree: TreeSpec) -> DegreeCensus:
    """Degree partition plus the leaf-neighbor set; asserts the leaves
    lemma |D_>2| <= |D_1| - 2 for n >= 2."""
    d1, d2, gt2 = set(), set(), set()
    for v in range(tree.n):
        d = tree.degree(v)
        if d == 1:
            d1.add(v)
        elif d == 2:
            d2.add(v)
        else:
            gt2.add(v)
    nbrs = set()
    for leaf in d1:
        nbrs.update(tree.adj[leaf])
    census = DegreeCensus(d1, d2, gt2, nbrs)
    if tree.n >= 2:
        assert len(gt2) <= len(d1) - 2 or tree.n == 2, (
            f"leaves lemma violated: |D_>2|={len(gt2)}, |D_1|={len(d1)}"
        )
    return census


def leaf_split_threshold(n: int) -> float:
    return n ** (2.0 / 3.0)


def classify_case(tree: TreeSpec, census: DegreeCensus | None = None) -> str:
    """"I" when the leaves have at least n^(2/3) distinct neighbors."""
    census = census or degree_census(tree)
    return "I" if len(census.leaf_neighbors) >= leaf_split_threshold(tree.n) else "II"


def select_independent_leaves(tree: TreeSpec, census: DegreeCensus | None = None) -> list:
    """ceil(n^(2/3)) leaves, no two sharing a neighbor.

    One leaf (the lowest-id one) per distinct leaf-neighbor, taking
    neighbors in increasing id order. Rejects Case II trees.
    """
    census = census or degree_census(tree)
    want = math.ceil(leaf_split_threshold(tree.n))
    if classify_case(tree, census) != "I":
        raise ValueError("independent leaf selection requires a Case I tree")
    chosen = []
    for support in sorted(census.leaf_neighbors):
        leaf = min(v for v in tree.adj[support] if v in census.d1)
        chosen.append(leaf)
        if len(chosen) == want:
            break
    return chosen


@dataclass
class BarePath:
    """An inclusion-maximal bare path: endpoints plus interior order."""

    a: int
    b: int
    interior: list

    @property
    def length(self) -> int:  # edge count
        return len(self.interior) + 1


def bare_decomposition(tree: TreeSpec, len_threshold: float):
    """Split T into the forest F and its long bare paths.

    Removes the interiors of all inclusion-maximal bare paths of edge
    length >= len_threshold. Returns (forest_vertices, forest_edges,
    paths) with the guarantee that re-inserting every path's interior
    reproduces T exactly.
    """
    if tree.n == 1:
        return {0}, [], []
    # terminals: vertices of degree != 2; a path tree has none except its ends
    terminals = {v for v in range(tree.n) if tree.degree(v) != 2}
    paths = []
    seen_edges = set()
    for t in sorted(terminals):
        for start in tree.adj[t]:
            edge = (min(t, start), max(t, start))
            if edge in seen_edges:
                continue
            # walk through degree-2 vertices until the next terminal
            interior = []
            prev, cur = t, start
            seen_edges.add(edge)
            while cur not in terminals:
                interior.append(cur)
                nxt = next(w for w in tree.adj[cur] if w != prev)
                seen_edges.add((min(cur, nxt), max(cur, nxt)))
                prev, cur = cur, nxt
            paths.append(BarePath(t, cur, interior))
    long_paths = [p for p in paths if p.length >= len_threshold and p.interior]
    removed = set()
    for p in long_paths:
        removed.update(p.interior)
    forest_vertices = set(range(tree.n)) - removed
    forest_edges = [
        (u, v) for u, v in tree.edges() if u in forest_vertices and v in forest_vertices
    ]
    return forest_vertices, forest_edges, long_paths
