"""Oracle chunked-emission simulator for serialized streams.

Words get uniform durations over the utterance. An ASR word can be emitted
once its own audio has been heard; an ST word once every source word linked
to it has been heard. Times are rounded up to whole encoder chunks and
emission order is enforced along the joint stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import UtterancePair
from .interleave import ALL_STRATEGIES, SerializedStream, Strategy, Task, flatten, serialize
from .metrics import DelayLog, laal, per_task_delays


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class EmissionPolicy:
    chunk_ms: int = 1000
    mode: str = "oracle_aligned"

    def __post_init__(self):
        if self.chunk_ms <= 0:
            raise ValueError("chunk_ms must be positive")
        if self.mode != "oracle_aligned":
            raise ValueError(f"unsupported emission mode {self.mode!r}")


@dataclass(frozen=True)
class SimulatedUtterance:
    pair: UtterancePair
    stream: SerializedStream

    def __post_init__(self):
        _require(self.pair)


def _require(pair: UtterancePair) -> None:
    if pair.alignment is None:
        raise SimulationError(f"utterance {pair.id!r}: simulation needs a word alignment")
    if not pair.duration_ms:
        raise SimulationError(f"utterance {pair.id!r}: simulation needs a positive duration_ms")


def word_end_times(m: int, duration_ms: int) -> list[int]:
    """End time of each of ``m`` equally long words, rounded half up to whole ms."""
    if m < 1:
        raise ValueError("need at least one word")
    return [(2 * (i + 1) * duration_ms + m) // (2 * m) for i in range(m)]


def _to_chunk(t: int, chunk_ms: int, duration_ms: int) -> int:
    return min(-(-t // chunk_ms) * chunk_ms, duration_ms)


def _raw_constraints(pair: UtterancePair) -> tuple[list[int], list[int]]:
    """Un-chunked earliest times for every ASR word and every ST word."""
    T = pair.duration_ms
    asr = word_end_times(pair.m, T) if pair.m else []
    sources: list[list[int]] = [[] for _ in range(pair.n)]
    for i, j in pair.alignment.links:
        sources[j].append(i)
    st = []
    prev = 0
    for j in range(pair.n):
        if sources[j]:
            prev = max(asr[i] for i in sources[j])
        st.append(prev)
    return asr, st


def emittable_time(
    token_position: int, task: Task, pair: UtterancePair, policy: EmissionPolicy = EmissionPolicy()
) -> int:
    """Earliest chunk-aligned time the given word of ``task`` may be emitted."""
    _require(pair)
    asr, st = _raw_constraints(pair)
    raw = (asr if task is Task.ASR else st)[token_position]
    return _to_chunk(raw, policy.chunk_ms, pair.duration_ms)


def simulate_emission(u: SimulatedUtterance, policy: EmissionPolicy = EmissionPolicy()) -> DelayLog:
    """Delay of every flattened token; tags take the delay of the token after them."""
    pair, T = u.pair, u.pair.duration_ms
    asr, st = _raw_constraints(pair)
    delays: list[int] = []
    pending_tags = 0
    current = 0
    pos = {Task.ASR: 0, Task.ST: 0}
    for seg in u.stream.segments:
        pending_tags += 1
        raw = asr if seg.task is Task.ASR else st
        for _ in seg.tokens:
            t = _to_chunk(raw[pos[seg.task]], policy.chunk_ms, T)
            pos[seg.task] += 1
            current = max(current, t)
            delays.extend([current] * pending_tags)
            pending_tags = 0
            delays.append(current)
    if pos[Task.ASR] != pair.m or pos[Task.ST] != pair.n:
        raise SimulationError(f"utterance {pair.id!r}: stream does not match the pair's word counts")
    return DelayLog(pair.id, delays, T)


def simulate_pair(pair: UtterancePair, strategy: Strategy | str, policy: EmissionPolicy = EmissionPolicy()):
    """Serialize, simulate and split; returns ``(tokens, joint_log, asr_log, st_log)``."""
    stream = serialize(pair, strategy)
    log = simulate_emission(SimulatedUtterance(pair, stream), policy)
    tokens = flatten(stream)
    asr_log, st_log = per_task_delays(tokens, log.delays_ms, pair.duration_ms, pair.id)
    return tokens, log, asr_log, st_log


@dataclass(frozen=True)
class StrategyLatency:
    strategy: str
    asr_laal_ms: float | None
    st_laal_ms: float | None
    utterances: int


def compare_strategies(
    corpus: Iterable[UtterancePair],
    policy: EmissionPolicy = EmissionPolicy(),
    strategies: Sequence[Strategy] = ALL_STRATEGIES,
) -> list[StrategyLatency]:
    """Mean per-utterance ASR and ST LAAL for each strategy."""
    corpus = list(corpus)
    for pair in corpus:
        _require(pair)
    rows = []
    for strategy in strategies:
        asr_vals, st_vals = [], []
        for pair in corpus:
            _, _, asr_log, st_log = simulate_pair(pair, strategy, policy)
            if not asr_log.empty:
                asr_vals.append(laal(asr_log, pair.m))
            if not st_log.empty:
                st_vals.append(laal(st_log, pair.n))
        rows.append(
            StrategyLatency(
                strategy.name,
                sum(asr_vals) / len(asr_vals) if asr_vals else None,
                sum(st_vals) / len(st_vals) if st_vals else None,
                len(corpus),
            )
        )
    return rows


def format_table(rows: Sequence[StrategyLatency]) -> str:
    def fmt(v):
        return "-" if v is None else f"{v:.1f}"

    header = ("strategy", "ASR LAAL (ms)", "ST LAAL (ms)")
    body = [(r.strategy, fmt(r.asr_laal_ms), fmt(r.st_laal_ms)) for r in rows]
    widths = [max(len(row[k]) for row in [header, *body]) for k in range(3)]
    lines = []
    for row in [header, *body]:
        lines.append("  ".join(cell.ljust(w) if k == 0 else cell.rjust(w)
                               for k, (cell, w) in enumerate(zip(row, widths))))
    return "\n".join(lines)
