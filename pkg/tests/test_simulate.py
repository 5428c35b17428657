import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jointsot.corpus import Alignment, UtterancePair
from jointsot.interleave import ALL_STRATEGIES, INTER_0_0, INTER_1_0, Task, flatten, serialize
from jointsot.simulate import (
    EmissionPolicy,
    SimulatedUtterance,
    SimulationError,
    compare_strategies,
    emittable_time,
    format_table,
    simulate_emission,
    simulate_pair,
    word_end_times,
)
from jointsot.synthetic import TOPOLOGIES, generate_corpus, random_pair


@pytest.mark.parametrize(
    "m, T, expected",
    [(4, 4000, [1000, 2000, 3000, 4000]), (1, 777, [777]), (3, 1000, [333, 667, 1000])],
)
def test_word_end_times(m, T, expected):
    assert word_end_times(m, T) == expected


def test_word_end_times_needs_words():
    with pytest.raises(ValueError):
        word_end_times(0, 1000)


def test_emittable_time_table1(table1):
    assert emittable_time(0, Task.ASR, table1) == 1000
    assert emittable_time(2, Task.ST, table1) == 2000  # "need" <- "brauche"
    assert emittable_time(1, Task.ST, table1) == 4000  # "really" <- last source word


def test_emittable_time_chunk_rounding():
    pair = UtterancePair("u", ("a", "b", "c"), ("x",), Alignment(frozenset({(0, 0)})), duration_ms=1000)
    assert emittable_time(0, Task.ASR, pair, EmissionPolicy(chunk_ms=400)) == 400
    assert emittable_time(1, Task.ASR, pair, EmissionPolicy(chunk_ms=400)) == 800
    # ceil(1000 / 400) * 400 = 1200, capped at T
    assert emittable_time(2, Task.ASR, pair, EmissionPolicy(chunk_ms=400)) == 1000


def test_unaligned_st_words():
    pair = UtterancePair("u", ("a", "b"), ("x", "y", "z"), Alignment(frozenset({(1, 1)})), duration_ms=2000)
    assert emittable_time(0, Task.ST, pair) == 0
    assert emittable_time(1, Task.ST, pair) == 2000
    assert emittable_time(2, Task.ST, pair) == 2000


def test_preconditions(table1):
    no_align = UtterancePair("u", ("a",), ("b",), duration_ms=1000)
    no_dur = UtterancePair("u", ("a",), ("b",), Alignment(frozenset({(0, 0)})))
    for pair in (no_align, no_dur):
        with pytest.raises(SimulationError):
            emittable_time(0, Task.ASR, pair)
        with pytest.raises(SimulationError):
            SimulatedUtterance(pair, serialize(pair, INTER_0_0))
    with pytest.raises(ValueError):
        EmissionPolicy(chunk_ms=0)


def test_inter00_st_waits_for_last_asr(table1):
    toks, joint, asr, st_ = simulate_pair(table1, INTER_0_0)
    assert st_.delays_ms == (4000, 4000, 4000, 4000)
    assert len(joint.delays_ms) == len(toks)


def test_inter_align_table1(table1):
    toks, joint, asr, st_ = simulate_pair(table1, "align")
    assert st_.delays_ms == (1000, 4000, 4000, 4000)
    assert asr.delays_ms == (1000, 2000, 3000, 4000)
    # tags carry the delay of the token after them
    for k, tok in enumerate(toks):
        if tok.startswith("#"):
            assert joint.delays_ms[k] == joint.delays_ms[k + 1]


def test_single_word_pair():
    pair = UtterancePair("u", ("a",), ("b",), Alignment(frozenset({(0, 0)})), duration_ms=1500)
    for strategy in ALL_STRATEGIES:
        _, joint, _, _ = simulate_pair(pair, strategy)
        assert set(joint.delays_ms) == {1500}


def test_simulate_rejects_mismatched_stream(table1):
    other = UtterancePair("o", ("a",), ("b",))
    with pytest.raises(SimulationError):
        simulate_emission(SimulatedUtterance(table1, serialize(other, INTER_0_0)))


sim_pairs = st.builds(
    lambda seed, m, n, topo, ms: random_pair(random.Random(seed), "p", m, n, topo, ms),
    st.integers(0, 2**32),
    st.integers(1, 20),
    st.integers(1, 20),
    st.sampled_from(TOPOLOGIES),
    st.sampled_from([1000, 730, 250]),
)


@settings(max_examples=150)
@given(sim_pairs, st.sampled_from(ALL_STRATEGIES), st.sampled_from([1000, 500, 320]))
def test_simulation_invariants(pair, strategy, chunk):
    policy = EmissionPolicy(chunk)
    _, joint, asr, st_ = simulate_pair(pair, strategy, policy)
    d = joint.delays_ms
    assert all(a <= b for a, b in zip(d, d[1:]))
    assert all(x % chunk == 0 or x == pair.duration_ms for x in d)
    if strategy is INTER_0_0:
        assert all(x >= asr.delays_ms[-1] for x in st_.delays_ms)
    if strategy is INTER_1_0:
        last_st = max(emittable_time(j, Task.ST, pair, policy) for j in range(pair.n))
        assert all(x >= last_st for x in asr.delays_ms)


@settings(max_examples=100)
@given(sim_pairs, st.sampled_from(ALL_STRATEGIES), st.sampled_from([(1000, 500), (1000, 250), (600, 200)]))
def test_chunk_refinement_never_increases(pair, strategy, chunks):
    coarse, fine = chunks
    _, a, _, _ = simulate_pair(pair, strategy, EmissionPolicy(coarse))
    _, b, _, _ = simulate_pair(pair, strategy, EmissionPolicy(fine))
    assert all(y <= x for x, y in zip(a.delays_ms, b.delays_ms))


def test_compare_strategies_deterministic_table():
    corpus = generate_corpus(2, 30, topologies=("monotone", "crossing"))
    rows = compare_strategies(corpus)
    assert [r.strategy for r in rows] == ["inter0.0", "inter1.0", "inter0.5", "align"]
    assert rows == compare_strategies(corpus)
    table = format_table(rows)
    assert table.splitlines()[0].startswith("strategy")
    assert len(table.splitlines()) == 5


def test_compare_requires_alignment_and_duration():
    with pytest.raises(SimulationError):
        compare_strategies([UtterancePair("u", ("a",), ("b",))])


def test_flatten_length_matches_joint_log(table1):
    for strategy in ALL_STRATEGIES:
        toks, joint, _, _ = simulate_pair(table1, strategy)
        assert toks == flatten(serialize(table1, strategy))
        assert len(joint.delays_ms) == len(toks)
