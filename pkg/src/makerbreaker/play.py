"""Interactive terminal mode: a human plays Breaker.

Each turn the human enters edge claims as vertex pairs ("u v"; empty
input passes); the engine plays the configured Maker strategy. The
session is recorded as an ordinary transcript and audits clean.
"""

from __future__ import annotations

from .config import ExperimentConfig, ConfigError
from .core import GameState, Bias
from .runner import Strategy, run_game


class HumanBreaker(Strategy):
    side = "breaker"
    name = "human"

    def __init__(self, q: int, stdin=None, echo=print):
        self.q = q
        self.stdin = stdin
        self.echo = echo

    def _readline(self) -> str:
        if self.stdin is not None:
            line = self.stdin.readline()
            if not line:
                return ""
            return line.strip()
        try:
            return input("breaker> ").strip()
        except EOFError:
            return ""

    def moves(self, state: GameState, opponent_elements: list) -> list:
        self._print_summary(state, opponent_elements)
        picks = []
        while len(picks) < self.q:
            line = self._readline()
            if not line:
                self.annotate(human_pass=True)
                break
            try:
                parts = line.split()
                if len(parts) == 1:
                    e = int(parts[0])
                else:
                    u, v = int(parts[0]), int(parts[1])
                    e = state.edge(u, v)
                if not state.is_free(e) or e in picks:
                    self.echo("  that edge is not free; try again")
                    continue
                picks.append(e)
            except Exception:
                self.echo("  enter an edge as 'u v' (or a raw element id); empty line passes")
        return picks

    def _print_summary(self, state: GameState, opponent_elements: list) -> None:
        if opponent_elements:
            edges = ", ".join(str(state.endpoints(e)) for e in opponent_elements)
            self.echo(f"maker claimed: {edges}")
        self.echo(
            f"free elements: {state.free_count} / {state.board_size}; "
            f"your claims this turn: up to {self.q}"
        )


def play_session(cfg: ExperimentConfig, stdin=None, echo=print) -> int:
    from .experiments import build_tree
    from .treeembed import TreeEmbedMaker, ThresholdConfig

    if cfg.kind != "tree-embed":
        raise ConfigError("interactive play currently supports the tree-embed kind")
    seed = cfg.seeds[0]
    tree = build_tree(cfg.options["tree"], seed)
    board = GameState.complete_board(tree.n)
    thresholds = ThresholdConfig(**cfg.options.get("thresholds", {}))
    maker = TreeEmbedMaker(tree, cfg.bias.q, thresholds, seed=seed)
    human = HumanBreaker(cfg.bias.q, stdin=stdin, echo=echo)
    t = run_game(
        board,
        cfg.bias,
        maker,
        human,
        first=cfg.first,
        move_cap=cfg.move_cap or 10 * tree.n,
        seed=seed,
        win_check=maker.done,
        params={"tree_edges": tree.edges(), "n": tree.n, "thresholds": thresholds.as_dict()},
    )
    t.kind = "tree-embed"
    if maker.case == "II" and maker.parallel is not None:
        t.stats["regions"] = [sorted(b.elements) for b in maker.parallel.boards]
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.out_dir / f"play-{seed}.jsonl"
    t.save(path)
    echo(f"game over: {t.outcome.kind}; transcript saved to {path}")
    return 0
