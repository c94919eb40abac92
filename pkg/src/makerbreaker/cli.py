"""Command line interface.

Subcommands:
  run <config>                      batch experiment -> transcripts, CSV, figures
  audit <transcript...>             replay and re-check invariants
  play <config>                     interactive: you are Breaker
  solve <hypergraph> --bias p:q --first side    exact minimax value
  beck <hypergraph> --bias p:q      Beck sum and criterion

Exit codes: 0 success, 2 config error, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_config, ConfigError, OUT_DIR_ENV


def _parse_bias(text: str):
    from .core import Bias

    try:
        p, q = text.split(":")
        return Bias(int(p), int(q))
    except Exception:
        raise ConfigError(f"bias must look like 'p:q', got {text!r}")


def cmd_run(args) -> int:
    from .experiments import run_experiment

    cfg = load_config(args.config)
    paths, summary = run_experiment(cfg)
    print(f"wrote {len(paths)} transcripts and {summary}")
    return 0


def cmd_audit(args) -> int:
    from .audit import audit_path
    from .transcript import TranscriptError

    worst = 0
    for path in args.transcripts:
        try:
            report = audit_path(path)
        except TranscriptError as exc:
            print(f"{path}: corrupt transcript: {exc}")
            worst = 3
            continue
        print(report.render())
        if not report.ok:
            worst = 3
    return worst


def cmd_solve(args) -> int:
    from .hypergraph import Hypergraph
    from .oracles import minimax_solve

    hg = Hypergraph.load(args.hypergraph)
    bias = _parse_bias(args.bias)
    result = minimax_solve(hg, bias, args.first, node_cap=args.node_cap)
    if result.winner is None:
        print(f"inconclusive after {result.nodes} nodes (cap reached)")
        return 0
    extra = (
        f" in {result.maker_win_length} Maker moves"
        if result.winner == "maker"
        else ""
    )
    print(f"{result.winner} wins{extra} ({result.nodes} nodes explored)")
    return 0


def cmd_beck(args) -> int:
    from .hypergraph import Hypergraph
    from .potential import beck_sum, criterion_holds

    hg = Hypergraph.load(args.hypergraph)
    bias = _parse_bias(args.bias)
    total = beck_sum(hg, bias)
    holds = criterion_holds(hg, bias)
    threshold = 1.0 / (1 + bias.q)
    verdict = "holds: Breaker wins" if holds else "does not hold"
    print(f"beck sum = {total:.6g}, threshold 1/(1+q) = {threshold:.6g}; criterion {verdict}")
    return 0


def cmd_play(args) -> int:
    from .play import play_session

    cfg = load_config(args.config)
    return play_session(cfg)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="makerbreaker",
        description="Maker-Breaker positional game engine: tree embedding, box games, potential play",
        epilog=f"default output directory comes from ${OUT_DIR_ENV} when set",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a batch experiment from a config file")
    p_run.add_argument("config", type=Path)
    p_run.set_defaults(func=cmd_run)

    p_audit = sub.add_parser("audit", help="replay transcripts and re-check invariants")
    p_audit.add_argument("transcripts", nargs="+", type=Path)
    p_audit.set_defaults(func=cmd_audit)

    p_play = sub.add_parser("play", help="interactive session: you claim Breaker's edges")
    p_play.add_argument("config", type=Path)
    p_play.set_defaults(func=cmd_play)

    p_solve = sub.add_parser("solve", help="exact minimax value of a small hypergraph game")
    p_solve.add_argument("hypergraph", type=Path)
    p_solve.add_argument("--bias", default="1:1")
    p_solve.add_argument("--first", choices=("maker", "breaker"), default="breaker")
    p_solve.add_argument("--node-cap", type=int, default=5_000_000)
    p_solve.set_defaults(func=cmd_solve)

    p_beck = sub.add_parser("beck", help="Beck sum and criterion for a hypergraph")
    p_beck.add_argument("hypergraph", type=Path)
    p_beck.add_argument("--bias", default="1:1")
    p_beck.set_defaults(func=cmd_beck)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal invariant violations
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
