"""Incremental splitting of a joint tagged token stream into ASR and ST outputs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .corpus import ASR_TAG, ST_TAG, UtterancePair
from .interleave import SerializedStream, Task, flatten

_TAG_TASK = {ASR_TAG: Task.ASR, ST_TAG: Task.ST}


class StreamParser:
    """Append-only state machine over a joint stream.

    Not safe for concurrent mutation. Output lists only ever grow, so a
    consumer can render partial results without retractions.
    """

    def __init__(self):
        self.current_task: Task | None = None
        self.asr_out: list[str] = []
        self.st_out: list[str] = []
        self.tokens_seen = 0
        self.warnings: list[str] = []

    def feed(self, token: str) -> tuple[Task, str] | None:
        """Consume one token; return ``(task, token)`` for data tokens, None for tags."""
        pos = self.tokens_seen
        self.tokens_seen += 1
        task = _TAG_TASK.get(token)
        if task is not None:
            self.current_task = task
            return None
        if self.current_task is None:
            self.warnings.append(f"token {token!r} at position {pos} precedes any task tag; routed to ASR")
            self.current_task = Task.ASR
        if self.current_task is Task.ASR:
            self.asr_out.append(token)
        else:
            self.st_out.append(token)
        return self.current_task, token

    def feed_all(self, tokens: Iterable[str]) -> list[tuple[Task, str]]:
        emitted = []
        for tok in tokens:
            out = self.feed(tok)
            if out is not None:
                emitted.append(out)
        return emitted

    def result(self) -> "SplitResult":
        return SplitResult(tuple(self.asr_out), tuple(self.st_out), tuple(self.warnings))


def feed_token(parser: StreamParser, token: str):
    return parser, parser.feed(token)


@dataclass(frozen=True)
class SplitResult:
    asr: tuple[str, ...] = ()
    st: tuple[str, ...] = ()
    warnings: tuple[str, ...] = field(default=())


def split(tokens: Iterable[str]) -> SplitResult:
    parser = StreamParser()
    parser.feed_all(tokens)
    return parser.result()


@dataclass(frozen=True)
class RoundtripReport:
    ok: bool
    asr_divergence: int | None = None
    st_divergence: int | None = None
    warnings: tuple[str, ...] = ()

    def describe(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        if self.asr_divergence is not None:
            parts.append(f"ASR diverges at position {self.asr_divergence}")
        if self.st_divergence is not None:
            parts.append(f"ST diverges at position {self.st_divergence}")
        parts.extend(self.warnings)
        return "; ".join(parts)


def first_divergence(expected, actual) -> int | None:
    for pos, (a, b) in enumerate(zip(expected, actual)):
        if a != b:
            return pos
    if len(expected) != len(actual):
        return min(len(expected), len(actual))
    return None


def roundtrip_check(pair: UtterancePair, stream: SerializedStream | Iterable[str]) -> RoundtripReport:
    """Check that splitting the flattened stream gives back both references."""
    tokens = flatten(stream) if isinstance(stream, SerializedStream) else list(stream)
    res = split(tokens)
    asr_at = first_divergence(pair.transcription, res.asr)
    st_at = first_divergence(pair.translation, res.st)
    ok = asr_at is None and st_at is None and not res.warnings
    return RoundtripReport(ok, asr_at, st_at, res.warnings)
