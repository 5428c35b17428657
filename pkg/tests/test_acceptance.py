"""Acceptance criteria. One PASS/FAIL line per criterion is printed in the
pytest terminal summary (section "acceptance criteria").

Run alone with ``pytest tests/test_acceptance.py``.
"""

import itertools
import random
import time

import pytest

from golden import TABLE1_PATH, TABLE1_ROWS
from oracles import all_sequences, brute_force_blocks, distances_to_all_hypotheses
from jointsot.corpus import Alignment, UtterancePair, load_corpus
from jointsot.interleave import (
    ALL_STRATEGIES,
    Segment,
    Task,
    flatten,
    parse_strategy,
    segment_blocks,
    serialize,
    serialize_align,
    serialize_gamma,
)
from jointsot.metrics import DelayLog, al, bleu, laal, wer
from jointsot.simulate import EmissionPolicy, compare_strategies
from jointsot.stream import split
from jointsot.synthetic import TOPOLOGIES, generate_corpus, random_pair

criterion = pytest.mark.criterion


def words(prefix, k):
    return tuple(f"{prefix}{i}" for i in range(k))


@criterion("golden vectors: Table 1 rows byte-exact, < 1 s")
def test_golden_vectors():
    start = time.perf_counter()
    pair = load_corpus(TABLE1_PATH)[0]
    got = {name: " ".join(flatten(serialize(pair, name))) for name in TABLE1_ROWS}
    elapsed = time.perf_counter() - start
    assert got == TABLE1_ROWS
    assert elapsed < 1.0


@criterion("round-trip: >=1000 random pairs x all strategies, zero warnings, < 10 s")
def test_roundtrip_property():
    rng = random.Random(20240601)
    strategies = [*ALL_STRATEGIES, parse_strategy("gamma:0.3"), parse_strategy("gamma:0.8")]
    start = time.perf_counter()
    checked = 0
    for k in range(1200):
        topo = TOPOLOGIES[k % len(TOPOLOGIES)]
        pair = random_pair(rng, f"r{k}", rng.randint(0, 30), rng.randint(0, 30), topo)
        for strategy in strategies:
            res = split(flatten(serialize(pair, strategy)))
            assert res.asr == pair.transcription, (pair.id, strategy)
            assert res.st == pair.translation, (pair.id, strategy)
            assert res.warnings == ()
            checked += 1
    elapsed = time.perf_counter() - start
    assert checked >= 1000 * len(ALL_STRATEGIES)
    assert elapsed < 10.0


@criterion("corner cases: gamma 0/1/0.5 and identity alignment, exhaustive m,n <= 6")
def test_corner_case_equivalences():
    for m, n in itertools.product(range(7), repeat=2):
        pair = UtterancePair("c", words("a", m), words("b", n))
        asr_all = [Segment(Task.ASR, pair.transcription)] if m else []
        st_all = [Segment(Task.ST, pair.translation)] if n else []
        assert list(serialize_gamma(pair, 0.0).segments) == asr_all + st_all
        assert list(serialize_gamma(pair, 1.0).segments) == st_all + asr_all
        if m == n:
            segs = serialize_gamma(pair, 0.5).segments
            assert len(segs) == 2 * m
            assert all(len(s.tokens) == 1 for s in segs)
            assert [s.task for s in segs] == [Task.ASR, Task.ST] * m
            ident = UtterancePair("c", pair.transcription, pair.translation,
                                  Alignment(frozenset((i, i) for i in range(m))))
            assert serialize_align(ident) == serialize_gamma(ident, 0.5)


def _link_subsets(m, n, rng, bound=5000):
    cells = [(i, j) for i in range(m) for j in range(n)]
    if 2 ** len(cells) <= bound:
        for mask in range(2 ** len(cells)):
            yield {c for b, c in enumerate(cells) if mask >> b & 1}
    else:
        for _ in range(bound):
            p = rng.random()
            yield {c for c in cells if rng.random() < p}


@criterion("block minimality: segment_blocks == brute force, m,n <= 5, < 60 s")
def test_block_minimality():
    rng = random.Random(77)
    start = time.perf_counter()
    cases = 0
    for m, n in itertools.product(range(6), repeat=2):
        for links in _link_subsets(m, n, rng):
            got = [(s.start, s.stop, t.start, t.stop)
                   for s, t in segment_blocks(m, n, Alignment(frozenset(links)))]
            assert got == brute_force_blocks(m, n, links), (m, n, sorted(links))
            cases += 1
    elapsed = time.perf_counter() - start
    expected = sum(min(2 ** (m * n), 5000)
                   for m, n in itertools.product(range(6), repeat=2))
    assert cases == expected
    assert elapsed < 60.0


@criterion("metric oracles: WER == DP oracle, exhaustive lengths <= 6, 3 symbols")
def test_wer_exhaustive():
    alphabet = "abc"
    checked = 0
    for ref in all_sequences(alphabet, 6):
        if not ref:
            continue
        ref_list = list(ref)
        for hyp, dist in distances_to_all_hypotheses(ref, alphabet, 6):
            assert wer(ref_list, list(hyp)) == 100.0 * dist / len(ref)
            checked += 1
    assert checked == 1092 * 1093


@criterion("metric oracles: bleu(h, h) == 100 exactly")
def test_bleu_self():
    rng = random.Random(5)
    for _ in range(500):
        corpus = [" ".join(rng.choice("abcdefg") for _ in range(rng.randint(0, 20)))
                  for _ in range(rng.randint(1, 8))]
        assert bleu(corpus, corpus) == 100.0


@criterion("metric oracles: AL/LAAL hand-computed values within 1e-6 ms")
def test_lagging_hand_values():
    cases = [
        # delays, T, ref_len, AL, LAAL
        ([1000, 2000, 3000, 4000], 4000, 4, 1000.0, 1000.0),
        ([1000, 2000, 3000, 4000], 4000, 2, -500.0, 1000.0),
        ([4000, 4000, 4000, 4000, 4000], 4000, 3, 4000.0, 4000.0),
        ([0], 1000, 1, 0.0, 0.0),
    ]
    for delays, T, ref_len, exp_al, exp_laal in cases:
        lg = DelayLog("h", delays, T)
        assert abs(al(lg, ref_len) - exp_al) <= 1e-6
        assert abs(laal(lg, ref_len) - exp_laal) <= 1e-6


def _random_logs(count=1000, seed=123):
    rng = random.Random(seed)
    for _ in range(count):
        T = rng.randint(500, 20000)
        hyp_len = rng.randint(1, 20)
        delays = sorted(rng.randint(0, T) for _ in range(hyp_len))
        yield DelayLog("r", delays, T), rng.randint(1, 20)


@criterion("metric oracles: LAAL == AL when |hyp| <= |ref| (1000 random logs)")
def test_laal_equals_al_short_hyp():
    seen = 0
    for lg, ref_len in _random_logs():
        if len(lg.delays_ms) <= ref_len:
            assert laal(lg, ref_len) == al(lg, ref_len)
            seen += 1
    assert seen > 100


@criterion("metric oracles: LAAL <= AL when |hyp| > |ref| (1000 random logs)")
def test_laal_not_above_al_long_hyp():
    # Stated as written. See README "Known failing criterion": with hypotheses
    # longer than the reference the ideal rate is slower, so LAAL >= AL.
    violations = []
    seen = 0
    for lg, ref_len in _random_logs():
        if len(lg.delays_ms) > ref_len:
            seen += 1
            if laal(lg, ref_len) > al(lg, ref_len) + 1e-6:
                violations.append((lg.delays_ms, lg.duration_ms, ref_len))
    assert seen > 100
    assert not violations, f"{len(violations)}/{seen} logs have LAAL > AL, e.g. {violations[0]}"


@criterion("latency ordering: simulated LAAL orderings among strategies, < 30 s")
def test_latency_ordering():
    start = time.perf_counter()
    corpus = generate_corpus(seed=2023, count=200, min_words=8, max_words=15,
                             topologies=("monotone", "crossing"), ms_per_word=1000)
    rows = {r.strategy: r for r in compare_strategies(corpus, EmissionPolicy(chunk_ms=1000))}
    elapsed = time.perf_counter() - start
    st_ = {k: r.st_laal_ms for k, r in rows.items()}
    asr = {k: r.asr_laal_ms for k, r in rows.items()}
    print("ST LAAL", st_, "ASR LAAL", asr)

    assert all(st_["inter0.0"] > v for k, v in st_.items() if k != "inter0.0")
    assert st_["align"] <= st_["inter0.5"] < st_["inter0.0"]
    assert all(asr["inter1.0"] > v for k, v in asr.items() if k != "inter1.0")
    assert asr["align"] <= 1.10 * min(asr.values())
    assert elapsed < 30.0


@criterion("prefix monotonicity: 1000 random joint streams never retract")
def test_prefix_monotonicity():
    rng = random.Random(31)
    vocab = ["#ASR#", "#ST#", "w1", "w2", "w3", "w4"]
    for _ in range(1000):
        tokens = [rng.choice(vocab) for _ in range(rng.randint(0, 40))]
        full = split(tokens)
        for k in range(len(tokens) + 1):
            part = split(tokens[:k])
            assert full.asr[: len(part.asr)] == part.asr
            assert full.st[: len(part.st)] == part.st


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
