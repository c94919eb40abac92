"""Batch experiment runner: one transcript per seed plus a summary CSV.

Losses and forfeits are first-class results; the exit status of a run
reflects internal errors only.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .config import ExperimentConfig, ConfigError
from .core import GameState, Bias
from .hypergraph import Hypergraph, winner_check
from .runner import run_game, Strategy
from .rng import SeedStream, derive_seed
from .transcript import Transcript, Move, Outcome
from .trees import (
    TreeSpec,
    path_tree,
    star_tree,
    spider_tree,
    caterpillar_tree,
    h_tree,
    double_broom_tree,
)
from .treeembed import TreeEmbedMaker, ThresholdConfig
from .subgames import BipartiteBoard, MatchingMaker, HamConMaker, HamPathMaker, TwoPathParams
from .zoo import (
    BREAKER_ZOO,
    LowestFreeMaker,
    RandomMaker,
    HubTriangleMaker,
    RandomizedHubMaker,
    TriangleDelayerBreaker,
)
from .boxgame import play_box, BOX_ADVERSARIES, weight_bound


def build_tree(spec: dict, seed: int) -> TreeSpec:
    family = spec.get("family")
    if "edge_list" in spec:
        return TreeSpec.load(spec["edge_list"])
    if "prufer" in spec:
        return TreeSpec.from_prufer(spec["prufer"])
    n = spec.get("n")
    if family == "path":
        return path_tree(n)
    if family == "star":
        return star_tree(n)
    if family == "spider":
        return spider_tree(spec.get("legs", 20), spec.get("leg_length", 3))
    if family == "caterpillar":
        return caterpillar_tree(spec.get("spine", n // 2 if n else 20))
    if family == "h":
        return h_tree(spec.get("bar", 20), spec.get("bridge", 10))
    if family == "double-broom":
        return double_broom_tree(spec.get("handle", 30), spec.get("leaves_each", 10))
    if family == "random":
        rng = SeedStream(derive_seed(seed, "tree")).stream("prufer")
        return TreeSpec.random(n, rng, max_degree=spec.get("max_degree"))
    raise ConfigError(f"unknown tree family {family!r}")


def build_breaker(spec, q: int, seed: int) -> Strategy:
    if spec is None:
        spec = "random"
    if isinstance(spec, str):
        spec = {"name": spec}
    name = spec["name"]
    if name not in BREAKER_ZOO:
        raise ConfigError(f"unknown breaker {name!r}; have {sorted(BREAKER_ZOO)}")
    return BREAKER_ZOO[name](q, seed)


def build_triangle_maker(spec, seed: int) -> Strategy:
    if spec is None:
        spec = "hub-triangles"
    if isinstance(spec, str):
        spec = {"name": spec}
    name = spec["name"]
    if name == "hub-triangles":
        return HubTriangleMaker()
    if name == "randomized-hub":
        return RandomizedHubMaker(seed)
    if name == "random":
        return RandomMaker(seed)
    if name == "lowest":
        return LowestFreeMaker()
    raise ConfigError(f"unknown triangle maker {name!r}")


def _one_game(cfg: ExperimentConfig, seed: int) -> Transcript:
    kind = cfg.kind
    bias = cfg.bias
    opts = cfg.options
    if kind == "tree-embed":
        tree = build_tree(opts["tree"], seed)
        board = GameState.complete_board(tree.n)
        thresholds = ThresholdConfig(**opts.get("thresholds", {}))
        maker = TreeEmbedMaker(tree, bias.q, thresholds, seed=seed)
        breaker = build_breaker(opts.get("breaker"), bias.q, seed)
        t = run_game(
            board, bias, maker, breaker, first=cfg.first,
            move_cap=cfg.move_cap or 10 * tree.n, seed=seed,
            win_check=maker.done,
            params={"tree_edges": tree.edges(), "n": tree.n,
                    "thresholds": thresholds.as_dict()},
        )
        t.kind = kind
        if maker.case == "II" and maker.parallel is not None:
            t.stats["regions"] = [sorted(b.elements) for b in maker.parallel.boards]
        return t
    if kind == "matching":
        r = opts["r"]
        board = GameState.complete_board(2 * r)
        bb = BipartiteBoard(list(range(r)), list(range(r, 2 * r)), board)
        maker = MatchingMaker(bb, bias.q, mode=opts.get("mode", "exact"))
        breaker = build_breaker(opts.get("breaker"), bias.q, seed)
        t = run_game(
            board, bias, maker, breaker, first=cfg.first,
            move_cap=cfg.move_cap, seed=seed, win_check=maker.done,
            params={"r": r, "a_vertices": bb.a_vertices, "b_vertices": bb.b_vertices},
        )
        t.kind = kind
        return t
    if kind == "hamcon":
        k = opts["k"]
        board = GameState.complete_board(k)
        maker = HamConMaker(list(range(k)), board, bias.q, mode=opts.get("mode", "heuristic"), seed=seed)
        breaker = build_breaker(opts.get("breaker"), bias.q, seed)
        t = run_game(
            board, bias, maker, breaker, first=cfg.first,
            move_cap=cfg.move_cap, seed=seed, win_check=maker.done,
            params={"k": k},
        )
        t.kind = kind
        return t
    if kind == "hampath":
        k = opts["k"]
        board = GameState.complete_board(k)
        params = TwoPathParams(opts.get("gamma", 0.1), opts.get("beta", 0.5))
        a = opts.get("a", 0)
        b = opts.get("b", k - 1)
        maker = HamPathMaker(
            list(range(k)), a, b, bias.q, params=params,
            stage2=opts.get("stage2", "direct"), seed=seed,
        )
        breaker = build_breaker(opts.get("breaker"), bias.q, seed)
        t = run_game(
            board, bias, maker, breaker, first=cfg.first,
            move_cap=cfg.move_cap, seed=seed, win_check=maker.done,
            params={"k": k, "a": a, "b": b,
                    "two_path": maker.params.__dict__},
        )
        t.kind = kind
        if maker.final_path:
            t.stats["final_path"] = maker.final_path
        return t
    if kind == "triangle":
        n = opts["n"]
        board = GameState.complete_board(n)
        maker = build_triangle_maker(opts.get("maker"), seed)
        breaker = TriangleDelayerBreaker()
        t = run_game(
            board, bias, maker, breaker, first="maker",
            move_cap=cfg.move_cap or n * (n - 1), seed=seed,
            params={"n": n},
        )
        t.kind = kind
        return t
    if kind == "custom-hypergraph":
        hg = Hypergraph.load(opts["hypergraph"])
        board = GameState.element_board(hg.board_size)
        maker_spec = opts.get("maker")
        if maker_spec in (None, "lowest"):
            maker = LowestFreeMaker(bias.p)
        elif maker_spec == "random":
            maker = RandomMaker(seed, bias.p)
        else:
            raise ConfigError(f"unknown hypergraph maker {maker_spec!r}")
        breaker = build_breaker(opts.get("breaker"), bias.q, seed)
        t = run_game(
            board, bias, maker, breaker, first=cfg.first,
            move_cap=cfg.move_cap, seed=seed,
            win_check=lambda st: winner_check(st, hg) == "maker_win",
            params={"hypergraph": str(opts["hypergraph"])},
        )
        t.kind = kind
        return t
    raise ConfigError(f"run does not handle kind {kind!r}")


def _box_transcript(cfg: ExperimentConfig, seed: int, out_dir: Path) -> Transcript:
    opts = cfg.options
    m, rounds = opts["m"], opts["rounds"]
    q = opts.get("q")
    adversary = opts.get("adversary", "random")
    trace = play_box(m, rounds, BOX_ADVERSARIES[adversary], q=q, seed=seed, adversary_name=adversary)
    t = Transcript(
        seed=seed,
        bias=(1, q or 1),
        first="maker",
        board={"kind": "boxes", "m": m},
        maker=adversary,
        breaker="max-weight-reset",
        kind="box",
        params={"m": m, "q": q, "rounds": rounds, "mode": trace.mode},
    )
    for r in trace.rounds:
        t.moves.append(Move("boxmaker", [], {"claims": r.claims}))
        t.moves.append(Move("boxbreaker", [], {"reset": r.reset_index}))
    if trace.forfeit:
        t.outcome = Outcome("forfeit", reason=trace.forfeit, by="boxmaker")
    else:
        t.outcome = Outcome("exhausted", reason="round-limit")
    t.stats = {
        "max_weight_scaled": trace.max_weight_observed(),
        "bound_scaled": weight_bound(m, rounds, 1),
        "rounds_played": len(trace.rounds),
    }
    trace.write_csv(out_dir / f"box-trace-{seed}.csv")
    return t


SUMMARY_FIELDS = [
    "seed",
    "kind",
    "outcome",
    "maker_claims",
    "breaker_claims",
    "forfeit_reason",
    "guards",
    "realized",
]


def summary_row(t: Transcript) -> dict:
    guards = ";".join(f"{k}={v}" for k, v in sorted(t.guards.items()))
    interesting = {}
    for key in (
        "case", "maker_claims_total", "max_danger_count", "danger_bound",
        "min_available_stage1", "available_floor", "stage1_claims",
        "stage1_work_bound", "max_between_visit_claims", "k_cap",
        "hampath_claims", "hamcon_moves", "hamcon_move_cap",
        "max_weight_scaled", "bound_scaled", "inflated_bias",
    ):
        if key in t.stats:
            interesting[key] = t.stats[key]
    realized = ";".join(f"{k}={v}" for k, v in sorted(interesting.items()))
    return {
        "seed": t.seed,
        "kind": t.kind,
        "outcome": t.outcome.kind if t.outcome else "",
        "maker_claims": t.stats.get("maker_claims", ""),
        "breaker_claims": t.stats.get("breaker_claims", ""),
        "forfeit_reason": (t.outcome.reason or "") if t.outcome else "",
        "guards": guards,
        "realized": realized,
    }


def run_experiment(cfg: ExperimentConfig):
    """Execute every seed; returns (transcript paths, summary path)."""
    out_dir = cfg.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    paths = []
    transcripts = []
    for seed in cfg.seeds:
        if cfg.kind == "box":
            t = _box_transcript(cfg, seed, out_dir)
        else:
            t = _one_game(cfg, seed)
        path = out_dir / f"{cfg.kind}-{seed}.jsonl"
        t.save(path)
        paths.append(path)
        transcripts.append(t)
        rows.append(summary_row(t))
    summary_path = out_dir / "summary.csv"
    with open(summary_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SUMMARY_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    if cfg.figures:
        from .report import render_run_figures

        render_run_figures(cfg, transcripts, out_dir)
    return paths, summary_path
