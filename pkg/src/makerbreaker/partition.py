"""Randomized board partition for the parallel endgame.

Splits the unembedded board vertices into parts of prescribed sizes,
resampling until every part, together with its two anchor vertices,
induces a low-degree subgraph of the host (claimed-edge) graph. The
degree cap is coeff * k_i * k^exp with the standard coefficients
(10, -0.05); both are injectable so the retry path is testable.
"""

from __future__ import annotations

from dataclasses import dataclass


class PartitionFailure(RuntimeError):
    """Retry cap exhausted; distinguishes infeasibility from bugs."""


@dataclass
class PartitionCheck:
    part_index: int
    max_degree: int
    cap: float


def random_partition(
    vertices,
    endpoint_pairs,
    sizes,
    host_degree,
    k: int | None = None,
    rng=None,
    retry_cap: int = 100,
    coeff: float = 10.0,
    exp: float = -0.05,
):
    """Partition `vertices` into parts of the given sizes.

    ``host_degree(u, part)`` counts u's host-graph neighbors inside the
    vertex collection `part`. ``endpoint_pairs[i]`` are the anchors
    (a_i, b_i) joined to part i when checking the induced degree cap.
    Returns (parts, checks). Raises :class:`PartitionFailure` when no
    sampled partition satisfies every cap within the retry budget.
    """
    import random as _random

    vertices = list(vertices)
    sizes = list(sizes)
    if sum(sizes) != len(vertices):
        raise ValueError(f"sizes sum to {sum(sizes)}, have {len(vertices)} vertices")
    if len(endpoint_pairs) != len(sizes):
        raise ValueError("one endpoint pair per part required")
    if k is None:
        k = len(vertices) + 2 * len(sizes)
    rng = rng or _random.Random(0)
    last_checks = []
    for _ in range(retry_cap):
        shuffled = list(vertices)
        rng.shuffle(shuffled)
        parts = []
        pos = 0
        for s in sizes:
            parts.append(shuffled[pos : pos + s])
            pos += s
        checks = []
        ok = True
        for i, part in enumerate(parts):
            a, b = endpoint_pairs[i]
            group = frozenset(part) | {a, b}
            cap = coeff * sizes[i] * (k ** exp)
            maxdeg = max((host_degree(u, group) for u in group), default=0)
            checks.append(PartitionCheck(i, maxdeg, cap))
            if maxdeg > cap:
                ok = False
                break
        last_checks = checks
        if ok:
            return parts, checks
    raise PartitionFailure(
        f"no partition met the degree caps in {retry_cap} samples; "
        f"last checks: {[(c.part_index, c.max_degree, round(c.cap, 2)) for c in last_checks]}"
    )


def adjacency_host_degree(adj_sets):
    """host_degree over explicit adjacency sets (board or claimed graph)."""

    def host_degree(u, part):
        nb = adj_sets[u]
        return sum(1 for v in part if v != u and v in nb)

    return host_degree
