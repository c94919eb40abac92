import json

import pytest

from makerbreaker.audit import audit_path, audit_transcript
from makerbreaker.core import GameState, Bias
from makerbreaker.runner import run_game
from makerbreaker.transcript import Transcript, TranscriptError
from makerbreaker.trees import path_tree, spider_tree, h_tree
from makerbreaker.treeembed import TreeEmbedMaker
from makerbreaker.zoo import (
    RandomBreaker,
    NullBreaker,
    TriangleDelayerBreaker,
    HubTriangleMaker,
    LowestFreeMaker,
    LowestFreeBreaker,
)


def _tree_transcript(tree, breaker, seed=0):
    board = GameState.complete_board(tree.n)
    maker = TreeEmbedMaker(tree, 1, seed=seed)
    t = run_game(
        board, Bias(1, 1), maker, breaker, first="breaker",
        win_check=maker.done, seed=seed, move_cap=12 * tree.n,
        params={"tree_edges": tree.edges(), "n": tree.n,
                "thresholds": maker.config.as_dict()},
    )
    t.kind = "tree-embed"
    if maker.case == "II" and maker.parallel is not None:
        t.stats["regions"] = [sorted(b.elements) for b in maker.parallel.boards]
    return t


@pytest.mark.parametrize("tree_builder,breaker_factory", [
    (lambda: path_tree(30), lambda: RandomBreaker(1, 3)),
    (lambda: spider_tree(15, 3), lambda: RandomBreaker(1, 4)),
    (lambda: h_tree(16, 8), lambda: RandomBreaker(1, 5)),
    (lambda: path_tree(24), lambda: NullBreaker()),
])
def test_tree_embed_run_audit_closure(tree_builder, breaker_factory, tmp_path):
    t = _tree_transcript(tree_builder(), breaker_factory())
    path = tmp_path / "t.jsonl"
    t.save(path)
    report = audit_path(path)
    assert report.ok, report.render()


def test_corrupted_transcript_flags_exact_move(tmp_path):
    t = _tree_transcript(path_tree(20), RandomBreaker(1, 1))
    lines = list(t.to_lines())
    # duplicate an inner claim: inject a second copy of move 4's element
    records = [json.loads(ln) for ln in lines]
    moves = [r for r in records if r["record"] == "move"]
    victim = moves[6]
    stolen = moves[4]["elements"][0]
    victim["elements"] = [stolen]
    path = tmp_path / "bad.jsonl"
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n")
    report = audit_path(path)
    assert not report.ok
    failing = [f for f in report.findings if not f.passed]
    assert failing[0].invariant == "replay"
    assert failing[0].move_index == victim["index"]


def test_forfeit_audit_reports_reason_and_guards(tmp_path):
    from makerbreaker.treeembed import ThresholdConfig

    tree = path_tree(30)
    board = GameState.complete_board(30)
    maker = TreeEmbedMaker(tree, 1, ThresholdConfig(partition_coeff=0.0), seed=2)
    t = run_game(
        board, Bias(1, 1), maker, RandomBreaker(1, 2), first="breaker",
        win_check=maker.done, seed=2,
        params={"tree_edges": tree.edges(), "n": 30,
                "thresholds": maker.config.as_dict()},
    )
    t.kind = "tree-embed"
    assert t.outcome.kind == "forfeit"
    path = tmp_path / "forfeit.jsonl"
    t.save(path)
    report = audit_path(path)
    # a forfeited game still replays and keeps its bookkeeping clean
    assert report.ok, report.render()
    back = Transcript.load(path)
    assert "partition-failure" in back.outcome.reason
    assert "case" in back.guards


def test_triangle_audit():
    board = GameState.complete_board(9)
    maker = HubTriangleMaker()
    t = run_game(board, Bias(1, 1), maker, TriangleDelayerBreaker(), first="maker",
                 seed=0, move_cap=81, params={"n": 9})
    t.kind = "triangle"
    findings = audit_transcript(t)
    assert all(f.passed for f in findings)
    assert any(f.invariant == "triangle-degree-claim" for f in findings)


def test_box_audit_catches_wrong_reset(tmp_path):
    from makerbreaker.experiments import _box_transcript
    from makerbreaker.config import ExperimentConfig

    cfg = ExperimentConfig(
        kind="box", seeds=[3], options={"m": 4, "q": 2, "rounds": 20, "adversary": "lru"},
        out_dir=tmp_path,
    )
    t = _box_transcript(cfg, 3, tmp_path)
    findings = audit_transcript(t)
    assert all(f.passed for f in findings)
    # corrupt one reset decision
    for mv in t.moves:
        if mv.player == "boxbreaker":
            mv.note["reset"] = (mv.note["reset"] + 1) % 4
            break
    findings = audit_transcript(t)
    bad = [f for f in findings if not f.passed]
    assert bad and bad[0].invariant == "box-max-reset"


def test_audit_flags_turn_order_violation():
    board = GameState.element_board(4)
    t = run_game(board, Bias(1, 1), LowestFreeMaker(), LowestFreeBreaker(1), first="maker")
    t.moves[1], t.moves[0] = t.moves[0], t.moves[1]
    findings = audit_transcript(t)
    bad = [f for f in findings if not f.passed]
    assert bad and bad[0].invariant == "turn-order"
    assert bad[0].move_index == 0


def test_audit_flags_over_bias():
    board = GameState.element_board(6)
    t = run_game(board, Bias(1, 2), LowestFreeMaker(), LowestFreeBreaker(2), first="breaker")
    # give the maker an illegal two-element move
    for mv in t.moves:
        if mv.player == "maker":
            mv.elements = [mv.elements[0], 5]
            break
    findings = audit_transcript(t)
    bad = [f for f in findings if not f.passed]
    assert bad
    assert bad[0].invariant in ("bias-respected", "replay")
