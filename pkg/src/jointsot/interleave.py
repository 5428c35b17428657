"""Joint ASR+ST serialization: gamma-ratio and alignment-driven interleaving."""

from __future__ import annotations

import enum
from fractions import Fraction
from dataclasses import dataclass
from typing import Union

from . import _backend
from .corpus import ASR_TAG, ST_TAG, Alignment, UtterancePair


class Task(enum.Enum):
    ASR = 0
    ST = 1

    @property
    def tag(self) -> str:
        return ASR_TAG if self is Task.ASR else ST_TAG


class MissingAlignmentError(ValueError):
    pass


def _check_gamma(gamma: float) -> None:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma!r}")


def gamma_ratio(gamma: float) -> tuple[int, int]:
    """Exact ``(num, den)`` for gamma so ratio ties are decided without float error."""
    _check_gamma(gamma)
    frac = Fraction(repr(float(gamma))).limit_denominator(10**6)
    return frac.numerator, frac.denominator


@dataclass(frozen=True)
class Gamma:
    gamma: float

    def __post_init__(self):
        _check_gamma(self.gamma)

    @property
    def name(self) -> str:
        for label, value in (("inter0.0", 0.0), ("inter1.0", 1.0), ("inter0.5", 0.5)):
            if self.gamma == value:
                return label
        return f"gamma:{self.gamma:g}"


@dataclass(frozen=True)
class Align:
    name = "align"


Strategy = Union[Gamma, Align]

INTER_0_0 = Gamma(0.0)
INTER_1_0 = Gamma(1.0)
INTER_0_5 = Gamma(0.5)
ALIGN = Align()
ALL_STRATEGIES = (INTER_0_0, INTER_1_0, INTER_0_5, ALIGN)


def parse_strategy(name: str) -> Strategy:
    """Parse ``inter0.0``, ``inter1.0``, ``inter0.5``, ``gamma:<float>`` or ``align``."""
    fixed = {"inter0.0": INTER_0_0, "inter1.0": INTER_1_0, "inter0.5": INTER_0_5, "align": ALIGN}
    if name in fixed:
        return fixed[name]
    if name.startswith("gamma:"):
        try:
            value = float(name[len("gamma:"):])
        except ValueError:
            raise ValueError(f"bad gamma value in strategy {name!r}") from None
        return Gamma(value)
    raise ValueError(
        f"unknown strategy {name!r}; expected inter0.0, inter1.0, inter0.5, gamma:<float> or align"
    )


@dataclass(frozen=True)
class Segment:
    task: Task
    tokens: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not self.tokens:
            raise ValueError("segment must hold at least one token")


@dataclass(frozen=True)
class SerializedStream:
    segments: tuple[Segment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        for a, b in zip(self.segments, self.segments[1:]):
            if a.task is b.task:
                raise ValueError("consecutive segments share a task; merge them")

    def tokens_of(self, task: Task) -> tuple[str, ...]:
        return tuple(tok for seg in self.segments if seg.task is task for tok in seg.tokens)

    def __str__(self) -> str:
        return " ".join(flatten(self))


@dataclass(frozen=True)
class GammaCounts:
    count_asr: int = 0
    count_st: int = 0


def next_task_gamma(gamma: float, counts: GammaCounts) -> Task:
    # ties go to ASR so gamma=0.5 alternates starting with a transcription word
    num, den = gamma_ratio(gamma)
    if (den - num) * (1 + counts.count_st) >= num * (1 + counts.count_asr):
        return Task.ASR
    return Task.ST


def _build(runs) -> SerializedStream:
    """Merge ``(task, tokens)`` runs into maximal segments, dropping empty ones."""
    segments: list[Segment] = []
    for task, tokens in runs:
        if not tokens:
            continue
        if segments and segments[-1].task is task:
            segments[-1] = Segment(task, segments[-1].tokens + tuple(tokens))
        else:
            segments.append(Segment(task, tokens))
    return SerializedStream(tuple(segments))


def serialize_gamma(pair: UtterancePair, gamma: float) -> SerializedStream:
    num, den = gamma_ratio(gamma)
    src, tgt = pair.transcription, pair.translation
    runs = []
    i = j = 0
    for code in _backend.gamma_schedule(len(src), len(tgt), num, den):
        if code == 0:
            runs.append((Task.ASR, (src[i],)))
            i += 1
        else:
            runs.append((Task.ST, (tgt[j],)))
            j += 1
    return _build(runs)


def segment_blocks(m: int, n: int, alignment: Alignment) -> list[tuple[range, range]]:
    """Split both sides into the finest monotone blocks no link crosses.

    Unaligned words join the block that follows them; words after the last
    link on either side form one trailing block, possibly one-sided.
    """
    links = sorted(alignment.links)
    for i, j in links:
        if not (0 <= i < m and 0 <= j < n):
            raise ValueError(f"link {i}-{j} out of bounds for m={m}, n={n}")
    src = [i for i, _ in links]
    tgt = [j for _, j in links]
    return [
        (range(s0, s1), range(t0, t1))
        for s0, s1, t0, t1 in _backend.block_cuts(m, n, src, tgt)
    ]


def serialize_align(pair: UtterancePair) -> SerializedStream:
    if pair.alignment is None:
        raise MissingAlignmentError(
            f"utterance {pair.id!r} has no word alignment; supply an 'align' field "
            "or use a gamma strategy (inter0.0, inter1.0, inter0.5, gamma:<float>)"
        )
    runs = []
    for src_span, tgt_span in segment_blocks(pair.m, pair.n, pair.alignment):
        runs.append((Task.ASR, pair.transcription[src_span.start:src_span.stop]))
        runs.append((Task.ST, pair.translation[tgt_span.start:tgt_span.stop]))
    return _build(runs)


def serialize(pair: UtterancePair, strategy: Strategy | str) -> SerializedStream:
    if isinstance(strategy, str):
        strategy = parse_strategy(strategy)
    if isinstance(strategy, Align):
        return serialize_align(pair)
    return serialize_gamma(pair, strategy.gamma)


def flatten(stream: SerializedStream) -> list[str]:
    out: list[str] = []
    for seg in stream.segments:
        out.append(seg.task.tag)
        out.extend(seg.tokens)
    return out
