import pytest

from makerbreaker.core import GameState, Bias
from makerbreaker.hypergraph import Hypergraph, winner_check
from makerbreaker.oracles import minimax_solve
from makerbreaker.runner import run_game, ScriptedStrategy, Strategy, Forfeit
from makerbreaker.transcript import Transcript, TranscriptError
from makerbreaker.zoo import LowestFreeMaker, LowestFreeBreaker, NullBreaker


def test_one_element_board_breaker_first_exhausts():
    board = GameState.element_board(1)
    t = run_game(
        board, Bias(1, 1),
        ScriptedStrategy("maker", []),
        ScriptedStrategy("breaker", [[0]]),
        first="breaker",
    )
    assert t.outcome.kind == "exhausted"
    assert board.ownership[0] == 2


def test_pair_set_is_breaker_win_both_orders():
    # the minimax oracle confirms {a, b} on two elements is a Breaker
    # win whoever starts; the potential-free playout agrees
    hg = Hypergraph(2, [[0, 1]])
    for first in ("breaker", "maker"):
        assert minimax_solve(hg, Bias(1, 1), first).winner == "breaker"
        board = GameState.element_board(2)
        t = run_game(
            board, Bias(1, 1),
            LowestFreeMaker(), LowestFreeBreaker(1),
            first=first,
            win_check=lambda st: winner_check(st, hg) == "maker_win",
        )
        assert t.outcome.kind == "breaker_win"


def test_illegal_move_forfeits_the_mover():
    # breaker tries to claim the element maker just took
    class Thief(Strategy):
        side = "breaker"
        name = "thief"

        def moves(self, state, opponent_elements):
            return [opponent_elements[0]]

    board = GameState.element_board(3)
    t = run_game(board, Bias(1, 1), ScriptedStrategy("maker", [[0]]), Thief(), first="maker")
    assert t.outcome.kind == "forfeit"
    assert t.outcome.by == "breaker"
    assert "illegal-move" in t.outcome.reason


def test_mutual_passing_ends_as_stalemate():
    board = GameState.element_board(3)
    t = run_game(
        board, Bias(1, 1),
        ScriptedStrategy("maker", []),
        ScriptedStrategy("breaker", []),
        first="maker",
    )
    assert t.outcome.kind == "exhausted"
    assert t.outcome.reason == "stalemate"


def test_over_bias_move_forfeits():
    class Greedy(Strategy):
        side = "maker"
        name = "greedy"

        def moves(self, state, opponent_elements):
            return [0, 1]

    board = GameState.element_board(4)
    t = run_game(board, Bias(1, 1), Greedy(), NullBreaker(), first="maker")
    assert t.outcome.kind == "forfeit"
    assert "over-bias" in t.outcome.reason


def test_forfeit_exception_is_recorded():
    class GiverUp(Strategy):
        side = "maker"
        name = "giver-up"

        def moves(self, state, opponent_elements):
            raise Forfeit("testing surrender")

    board = GameState.element_board(2)
    t = run_game(board, Bias(1, 1), GiverUp(), NullBreaker(), first="maker")
    assert t.outcome.kind == "forfeit"
    assert t.outcome.reason == "testing surrender"


def test_short_final_turn_takes_whats_left():
    # bias 3 breaker on a 4-element board: second breaker turn has one
    # element left and claims just that
    board = GameState.element_board(4)
    t = run_game(
        board, Bias(1, 3),
        LowestFreeMaker(),
        LowestFreeBreaker(3),
        first="breaker",
    )
    assert t.outcome.kind == "exhausted"
    sizes = [len(m.elements) for m in t.moves if m.player == "breaker"]
    assert sizes == [3]  # breaker's only turn; maker then took the last one


def test_move_cap_stops_the_game():
    board = GameState.element_board(100)
    t = run_game(
        board, Bias(1, 1),
        LowestFreeMaker(), LowestFreeBreaker(1),
        first="maker", move_cap=6,
    )
    assert t.outcome.kind == "exhausted"
    assert t.outcome.reason == "move-cap"
    assert len(t.moves) == 6


def test_transcript_roundtrip(tmp_path):
    board = GameState.element_board(5)
    t = run_game(
        board, Bias(1, 1),
        LowestFreeMaker(), LowestFreeBreaker(1),
        first="breaker", seed=42,
    )
    path = tmp_path / "game.jsonl"
    t.save(path)
    back = Transcript.load(path)
    assert back.seed == 42
    assert back.bias == (1, 1)
    assert [m.elements for m in back.moves] == [m.elements for m in t.moves]
    assert back.outcome.kind == t.outcome.kind
    final = back.replay()
    assert bytes(final.ownership) == bytes(board.ownership)


def test_replay_determinism_byte_identical(tmp_path):
    def play():
        board = GameState.complete_board(6)
        return run_game(
            board, Bias(1, 1),
            LowestFreeMaker(), LowestFreeBreaker(1),
            first="breaker", seed=7,
        )

    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    play().save(a)
    play().save(b)
    assert a.read_bytes() == b.read_bytes()


def test_transcript_errors_carry_line_numbers(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"record": "header", "format_version": 99}\n')
    with pytest.raises(TranscriptError) as err:
        Transcript.load(path)
    assert "line 1" in str(err.value)

    path.write_text("not json at all\n")
    with pytest.raises(TranscriptError) as err:
        Transcript.load(path)
    assert "line 1" in str(err.value)


def test_winner_check_examples():
    hg = Hypergraph(2, [[0, 1]])
    state = GameState.element_board(2)
    state.apply_claim("maker", 0)
    state.apply_claim("maker", 1)
    assert winner_check(state, hg) == "maker_win"

    state = GameState.element_board(2)
    state.apply_claim("breaker", 0)
    state.apply_claim("maker", 1)
    assert winner_check(state, hg) == "breaker_win_exhaustion"

    empty = Hypergraph(2, [])
    state = GameState.element_board(2)
    assert winner_check(state, empty) == "undecided"
    state.apply_claim("maker", 0)
    state.apply_claim("maker", 1)
    assert winner_check(state, empty) == "breaker_win_exhaustion"


def test_winner_check_rejects_mismatched_boards():
    from makerbreaker.core import BoardError

    hg = Hypergraph(3, [[0]])
    with pytest.raises(BoardError):
        winner_check(GameState.element_board(2), hg)


def test_hypergraph_text_roundtrip(tmp_path):
    hg = Hypergraph(5, [[0, 1], [2, 3, 4]])
    path = tmp_path / "hg.txt"
    hg.dump(path)
    back = Hypergraph.load(path)
    assert back.board_size == 5
    assert set(back.winning_sets) == set(hg.winning_sets)


def test_hypergraph_rejects_bad_sets():
    with pytest.raises(ValueError):
        Hypergraph(2, [[0, 5]])
    with pytest.raises(ValueError):
        Hypergraph(2, [[]])
    # explicitly permitted empty set means an instant Maker win
    hg = Hypergraph(2, [[]], allow_empty=True)
    assert len(hg.winning_sets) == 1
