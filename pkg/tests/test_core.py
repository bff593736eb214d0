from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from tchoukaillon.core import (
    Loss,
    MoveTrace,
    NotHarvestable,
    Position,
    WinningStream,
    backward_step,
    generate,
    generate_direct,
    harvest,
    is_harvestable,
    is_winnable,
    iter_winning,
    play_out,
    smallest_harvestable,
)

from reference_data import WINNING_TABLE

P = Position.of


def test_position_is_canonical():
    assert P(2, 2, 0, 0).pits == (2, 2)
    assert P() == Position()
    assert len(P(0, 1, 3)) == 3
    assert P(0, 1, 3)[3] == 3 and P(0, 1, 3)[7] == 0
    with pytest.raises(ValueError):
        P(1, -1)


@pytest.mark.parametrize("pos, i, expected", [
    (P(1, 2, 2, 4), 1, True),
    (P(), 1, False),
    (P(), 5, False),
    (P(0, 1, 3), 3, True),
    (P(0, 1, 3), 2, False),
    (P(0, 1, 3), 4, False),
])
def test_is_harvestable(pos, i, expected):
    assert is_harvestable(pos, i) is expected


def test_harvest_examples():
    out = harvest(P(0, 2, 2, 4), 2)
    assert out.pits == (1, 0, 2, 4) and out.pocketed == 1
    assert harvest(P(1), 1) == Position((), 1)
    wrong = harvest(P(1, 1, 3), 3)
    assert wrong.pits == (2, 2)
    assert wrong.pits != WINNING_TABLE[4][0]
    with pytest.raises(NotHarvestable):
        harvest(P(0, 1, 3), 2)


@pytest.mark.parametrize("pos, expected", [
    (P(1, 2, 2, 4), 1),
    (P(0, 0, 2, 4), 4),
    (P(), None),
])
def test_smallest_harvestable(pos, expected):
    assert smallest_harvestable(pos) == expected


def test_play_out_examples():
    # the harvest column of the table read from s=9 down to s=1
    trace = play_out(P(1, 2, 2, 4))
    assert isinstance(trace, MoveTrace)
    assert trace.harvests == tuple(WINNING_TABLE[s][1] for s in range(9, 0, -1))
    assert trace.harvests == (1, 2, 1, 4, 1, 3, 1, 2, 1)
    assert play_out(P()).harvests == ()
    lost = play_out(P(0, 1))
    assert isinstance(lost, Loss) and lost.stuck == P(0, 1)
    lost = play_out(P(2, 2))
    assert not lost.won and lost.stuck == Position((3,), 1) and lost.harvests == (2,)


def test_play_out_counters_on_loss_and_win():
    lost = play_out(P(1, 1, 2))
    assert lost.harvests == (1,) and lost.stuck == Position((0, 1, 2), 1)
    trace = play_out(P(0, 2))
    assert trace.m == (0, 1, 1) and trace.b == (2, 1, 0)


@pytest.mark.parametrize("before, after", [
    (P(1, 1, 1, 0, 2, 4, 6, 8), P(0, 0, 0, 4, 2, 4, 6, 8)),
    (P(), P(1)),
    (P(1, 2), P(0, 1, 3)),
])
def test_backward_step(before, after):
    assert backward_step(before) == after


def _sml_ayo(carry, xs):
    # fun ayo carry nil = [carry] | ayo carry (0::xs) = carry::xs | ayo carry (x::xs) = (x-1)::(ayo (carry+1) xs)
    if not xs:
        return [carry]
    if xs[0] == 0:
        return [carry] + xs[1:]
    return [xs[0] - 1] + _sml_ayo(carry + 1, xs[1:])


def test_backward_step_matches_list_recursion():
    pos = Position()
    for _ in range(300):
        nxt = backward_step(pos)
        assert list(nxt.pits) == _sml_ayo(1, list(pos.pits))
        pos = nxt


@pytest.mark.parametrize("s", sorted(WINNING_TABLE))
def test_generate_reproduces_table(s):
    assert generate(s).pits == WINNING_TABLE[s][0]


def test_generate_matches_direct_formula_and_stream():
    for s, pos in enumerate(iter_winning(3000)):
        assert pos == generate_direct(s)
        assert pos == generate(s)
    for s in (4095, 4096, 65537, 100_000, 300_001):
        assert generate(s) == generate_direct(s)


def test_generate_rejects_negative():
    with pytest.raises(ValueError):
        generate(-1)
    with pytest.raises(ValueError):
        generate_direct(-1)


@pytest.mark.parametrize("pos, expected", [
    (P(1, 2, 2, 4), True),
    (P(2, 2), False),
    (P(), True),
    (P(0, 1), False),
    (P(0, 0, 0, 4, 2, 4, 6, 8), True),
])
def test_is_winnable(pos, expected):
    assert is_winnable(pos) is expected
    assert play_out(pos).won is expected


def test_stream_advance_matches_single_steps():
    a, b = WinningStream(), WinningStream()
    for count in (1, 2, 3, 7, 64, 129):
        a.advance(count)
        for _ in range(count):
            b.step()
        assert a.s == b.s and a.position() == b.position()


# -- properties ---------------------------------------------------------------

positions = st.lists(st.integers(0, 9), max_size=9).map(lambda xs: Position(tuple(xs)))


@given(positions)
def test_harvest_conserves_stones(pos):
    for i in range(1, len(pos) + 1):
        if is_harvestable(pos, i):
            out = harvest(pos, i)
            assert out.conserved == pos.conserved
            assert out.total == pos.total - 1


@given(positions)
def test_play_out_agrees_with_winnability(pos):
    result = play_out(pos)
    assert result.won == is_winnable(pos)
    if not result.won:
        assert smallest_harvestable(result.stuck) is None
        assert result.stuck.total > 0
        assert result.stuck.conserved == pos.conserved


@given(st.integers(0, 5000))
@settings(max_examples=60)
def test_backward_step_adds_one_stone(s):
    pos = generate(s)
    nxt = backward_step(pos)
    assert nxt.total == s + 1 == generate(s + 1).total
    assert nxt == generate(s + 1)


def test_bijection_up_to_10_000():
    stream = WinningStream()
    prev = stream.position()
    for _ in range(10_000):
        refill = stream.step()
        cur = stream.position()
        first = smallest_harvestable(cur)
        assert first == refill
        assert Position(harvest(cur, first).pits) == prev
        assert cur.pits[-1] != 0
        assert all(x <= i for i, x in enumerate(cur.pits, 1))
        prev = cur


def test_play_out_trace_is_reversed_refill_sequence():
    stream = WinningStream()
    refills = [stream.step() for _ in range(2000)]
    trace = play_out(stream.position())
    assert trace.harvests == tuple(reversed(refills))


@lru_cache(maxsize=None)
def _wins_some_way(pits: tuple) -> bool:
    # full game tree: any harvest order is allowed
    if not pits:
        return True
    pos = Position(pits)
    return any(_wins_some_way(harvest(pos, i).pits)
               for i in range(1, len(pits) + 1) if is_harvestable(pos, i))


@pytest.mark.parametrize("s", range(0, 9))
def test_unique_winner_by_literal_enumeration(s):
    winners = {pits for pits in _enumerate(s) if _wins_some_way(Position(pits).pits)}
    assert winners == {generate(s).pits}


def _enumerate(s):
    """All canonical positions with p_i <= i and total s (at most s pits)."""
    out = set()

    def rec(i, left, acc):
        if left == 0:
            out.add(Position(tuple(acc)).pits)
            return
        if i > s:
            return
        for p in range(min(i, left) + 1):
            acc.append(p)
            rec(i + 1, left - p, acc)
            acc.pop()

    rec(1, s, [])
    return out


def test_strategy_optimality_up_to_1000():
    # the winning line from generate(s) visits every smaller winning position,
    # so checking the first move for each s covers every move of every line
    for s in range(1, 1001):
        pos = generate(s)
        first = smallest_harvestable(pos)
        for j in range(first + 1, len(pos) + 1):
            if is_harvestable(pos, j):
                assert not play_out(harvest(pos, j)).won, (s, j)
