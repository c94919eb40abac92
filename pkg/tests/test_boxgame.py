import csv
import math

import pytest

from makerbreaker.boxgame import (
    BoxState,
    cbox_breaker_reset,
    rbox_bridge,
    potential_phi,
    play_box,
    play_rbox,
    weight_bound,
    IllegalBoxMove,
    BOX_ADVERSARIES,
    uniform_spreader,
    single_box_piler,
    least_recently_reset_piler,
    random_spreader,
    potential_greedy_piler,
)


def test_reset_picks_max_weight_lowest_tie():
    s = BoxState(m=3, weights=[0.2, 0.9, 0.9])
    assert cbox_breaker_reset(s) == 1
    s = BoxState(m=3, weights=[0.0, 0.0, 0.0])
    assert cbox_breaker_reset(s) == 0
    s = BoxState(m=1, weights=[5.0])
    assert cbox_breaker_reset(s) == 0


def test_bridge_examples():
    assert rbox_bridge([2, 2, 0], 4) == [0.5, 0.5, 0.0]
    assert rbox_bridge([5, 0], 5) == [1.0, 0.0]
    with pytest.raises(IllegalBoxMove):
        rbox_bridge([2, 2], 3)
    with pytest.raises(IllegalBoxMove):
        rbox_bridge([-1, 2], 3)


def test_phi_examples():
    assert potential_phi(BoxState(m=3, weights=[0, 0, 0])) == pytest.approx(3.0)
    assert potential_phi(BoxState(m=1, weights=[1.0])) == pytest.approx(math.e)
    assert potential_phi(BoxState(m=2, weights=[math.log(2), math.log(3)])) == pytest.approx(5.0)


def test_single_box_never_exceeds_q_after_rounds():
    # m=1: the reset wipes the only box every round
    trace = play_rbox(1, 4, 50, single_box_piler)
    for r in trace.rounds:
        assert max(r.weights_after_claim) <= 1.0 + 1e-12  # scaled by 1/q
        assert r.weights_after_reset == [0.0]


def test_two_box_alternating_hand_simulation():
    # m=2, q=1, adversary alternates boxes: weight never exceeds 1
    state_holder = {"turn": 0}

    def alternator(state, rng):
        i = state_holder["turn"] % 2
        state_holder["turn"] += 1
        claims = [0, 0]
        claims[i] = 1
        return claims

    trace = play_rbox(2, 1, 2, alternator)
    # round 0: box0 = 1, reset box0; round 1: box1 = 1, reset box1
    assert trace.rounds[0].weights_after_claim == [1.0, 0.0]
    assert trace.rounds[0].reset_index == 0
    assert trace.rounds[1].weights_after_claim == [0.0, 1.0]
    assert trace.rounds[1].reset_index == 1
    assert trace.max_weight_observed() * 1 <= weight_bound(2, 2, 1)


def test_lru_adversary_long_run_within_bound():
    q = 3
    trace = play_rbox(10, q, 1000, least_recently_reset_piler, seed=5)
    assert trace.forfeit is None
    # real weight = q * scaled weight
    assert trace.max_weight_observed() * q <= weight_bound(10, 1000, q)


def test_phi_round_increment_bounded_continuous():
    for name, adv in BOX_ADVERSARIES.items():
        trace = play_box(7, 300, adv, q=None, seed=11, adversary_name=name)
        assert trace.forfeit is None, name
        for r in trace.rounds:
            assert r.phi_after_reset - r.phi_before <= 1 + 1e-9, (name, r.round)


def test_weight_bound_across_zoo_small_grid():
    for name, adv in BOX_ADVERSARIES.items():
        for m in (1, 3, 10):
            for q in (1, 4):
                trace = play_rbox(m, q, 250, adv, seed=3)
                assert trace.forfeit is None
                for r in trace.rounds:
                    bound = 1 + math.log(m + r.round + 1)
                    assert max(r.weights_after_claim) <= bound + 1e-9, (name, m, q)
                    assert max(r.weights_after_reset) <= bound + 1e-9


def test_mean_value_inequality_on_grid():
    # exp(x + d) - exp(x) <= d * exp(x + d) on x in [-5, 5], d in (0, 1]
    xs = [x / 10 for x in range(-50, 51)]
    ds = [d / 100 for d in range(1, 101)]
    for x in xs:
        for d in ds:
            assert math.exp(x + d) - math.exp(x) <= d * math.exp(x + d) + 1e-12


def test_illegal_adversary_forfeits():
    def cheater(state, rng):
        return [state.q + 1] + [0] * (state.m - 1)

    trace = play_rbox(3, 2, 10, cheater)
    assert trace.forfeit is not None
    assert "exceed" in trace.forfeit


def test_adversary_determinism():
    a = play_rbox(6, 2, 100, random_spreader, seed=9)
    b = play_rbox(6, 2, 100, random_spreader, seed=9)
    assert [r.claims for r in a.rounds] == [r.claims for r in b.rounds]
    c = play_rbox(6, 2, 100, random_spreader, seed=10)
    assert [r.claims for r in a.rounds] != [r.claims for r in c.rounds]


def test_trace_csv_export(tmp_path):
    trace = play_rbox(4, 2, 30, uniform_spreader, seed=1)
    path = tmp_path / "trace.csv"
    trace.write_csv(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["round", "w0", "w1", "w2", "w3", "phi", "bound", "max_weight"]
    assert len(rows) == 31
    # bound column grows logarithmically
    bounds = [float(r[-2]) for r in rows[1:]]
    assert bounds == sorted(bounds)


def test_integral_weights_are_multiples_of_inv_q():
    q = 4
    trace = play_rbox(5, q, 50, random_spreader, seed=2)
    for r in trace.rounds:
        for w in r.weights_after_claim:
            assert abs(w * q - round(w * q)) < 1e-9


def test_element_counts_integral_only():
    s = BoxState(m=2, q=3, weights=[2 / 3, 1 / 3])
    assert s.element_counts() == [2, 1]
    with pytest.raises(ValueError):
        BoxState(m=2).element_counts()


def test_potential_greedy_targets_heaviest():
    s = BoxState(m=3, q=2, weights=[0.5, 1.0, 1.0])
    claims = potential_greedy_piler(s, None)
    assert claims == [0, 2, 0]  # heaviest, lowest index on ties
