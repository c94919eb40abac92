import pytest
from hypothesis import given, strategies as st

from makerbreaker.core import (
    GameState,
    Bias,
    BoardError,
    DoubleClaimError,
    edge_index,
    edge_endpoints,
    complete_board,
    FREE,
    MAKER,
    BREAKER,
)


def test_complete_board_sizes():
    assert complete_board(3).board_size == 3
    assert complete_board(4).board_size == 6
    assert all(complete_board(3).ownership[e] == FREE for e in range(3))


def test_complete_board_rejects_tiny():
    with pytest.raises(BoardError):
        complete_board(1)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 13])
def test_edge_encoding_is_lexicographic_bijection(n):
    idx = 0
    for u in range(n):
        for v in range(u + 1, n):
            assert edge_index(u, v, n) == idx
            assert edge_index(v, u, n) == idx  # unordered
            assert edge_endpoints(idx, n) == (u, v)
            idx += 1
    assert idx == n * (n - 1) // 2


def test_edge_encoding_rejects_bad_pairs():
    with pytest.raises(BoardError):
        edge_index(2, 2, 5)
    with pytest.raises(BoardError):
        edge_index(0, 5, 5)
    with pytest.raises(BoardError):
        edge_endpoints(10, 5)


def test_apply_claim_sets_ownership_and_degrees():
    state = complete_board(3)
    e = state.edge(0, 1)
    state.apply_claim("maker", e)
    assert state.ownership[e] == MAKER
    assert state.degree("maker", 0) == 1
    assert state.degree("maker", 1) == 1
    assert state.degree("maker", 2) == 0
    assert state.move_count["maker"] == 1


def test_double_claim_is_an_error():
    state = complete_board(3)
    state.apply_claim("maker", 0)
    with pytest.raises(DoubleClaimError):
        state.apply_claim("breaker", 0)
    with pytest.raises(DoubleClaimError):
        state.apply_claim("maker", 0)


def test_bias_validation():
    with pytest.raises(ValueError):
        Bias(0, 1)
    with pytest.raises(ValueError):
        Bias(1, -2)
    assert Bias(1, 3).of("breaker") == 3
    assert Bias(2, 3).of("maker") == 2


@given(st.data())
def test_claims_conserve_and_degree_caches_match(data):
    n = data.draw(st.integers(min_value=2, max_value=8))
    state = complete_board(n)
    elements = list(range(state.board_size))
    order = data.draw(st.permutations(elements))
    take = data.draw(st.integers(min_value=0, max_value=len(order)))
    sides = data.draw(
        st.lists(st.sampled_from(["maker", "breaker"]), min_size=take, max_size=take)
    )
    counts = {"maker": 0, "breaker": 0}
    for e, side in zip(order[:take], sides):
        state.apply_claim(side, e)
        counts[side] += 1
    assert state.free_count == state.board_size - take
    owned = {
        "maker": sum(1 for b in state.ownership if b == MAKER),
        "breaker": sum(1 for b in state.ownership if b == BREAKER),
    }
    assert owned == counts == state.move_count
    assert state.maker_degrees == state.recompute_degrees("maker")
    assert state.breaker_degrees == state.recompute_degrees("breaker")


def test_copy_is_independent():
    state = complete_board(4)
    state.apply_claim("maker", 0)
    dup = state.copy()
    dup.apply_claim("breaker", 1)
    assert state.ownership[1] == FREE
    assert dup.ownership[0] == MAKER
