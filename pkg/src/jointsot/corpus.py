"""Parallel corpora, tokens and Pharaoh word alignments."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

ASR_TAG = "#ASR#"
ST_TAG = "#ST#"
TAGS = frozenset((ASR_TAG, ST_TAG))


class CorpusError(ValueError):
    """A record in a corpus file is malformed."""


class PharaohParseError(ValueError):
    pass


class AlignmentBoundsError(ValueError):
    pass


def check_token(text: str) -> str:
    if not text:
        raise ValueError("empty token")
    if text in TAGS:
        raise ValueError(f"token {text!r} collides with a reserved task tag")
    if any(ch.isspace() for ch in text):
        raise ValueError(f"token {text!r} contains whitespace")
    return text


def tokenize(text: str) -> tuple[str, ...]:
    """Split on runs of Unicode whitespace; punctuation stays attached."""
    return tuple(text.split())


@dataclass(frozen=True)
class Alignment:
    """Set of 0-based ``(src_index, tgt_index)`` links."""

    links: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        links = frozenset((int(i), int(j)) for i, j in self.links)
        for i, j in links:
            if i < 0 or j < 0:
                raise ValueError(f"negative alignment index in link {i}-{j}")
        object.__setattr__(self, "links", links)

    def __len__(self) -> int:
        return len(self.links)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.links))

    def check_bounds(self, m: int, n: int) -> None:
        for i, j in sorted(self.links):
            if i >= m or j >= n:
                raise AlignmentBoundsError(
                    f"link {i}-{j} out of bounds for {m} source / {n} target words"
                )


def parse_pharaoh(text: str, m: int, n: int) -> Alignment:
    links = set()
    for pair in text.split():
        left, sep, right = pair.partition("-")
        if not sep or not left.isdecimal() or not right.isdecimal():
            raise PharaohParseError(f"malformed alignment pair {pair!r}")
        links.add((int(left), int(right)))
    alignment = Alignment(frozenset(links))
    alignment.check_bounds(m, n)
    return alignment


def render_pharaoh(alignment: Alignment) -> str:
    return " ".join(f"{i}-{j}" for i, j in sorted(alignment.links))


@dataclass(frozen=True)
class UtterancePair:
    id: str
    transcription: tuple[str, ...]
    translation: tuple[str, ...]
    alignment: Alignment | None = None
    src_lang: str = "und"
    tgt_lang: str = "und"
    duration_ms: int | None = None
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "transcription", tuple(self.transcription))
        object.__setattr__(self, "translation", tuple(self.translation))
        for tok in self.transcription + self.translation:
            check_token(tok)
        if self.alignment is not None:
            try:
                self.alignment.check_bounds(self.m, self.n)
            except AlignmentBoundsError as exc:
                raise AlignmentBoundsError(f"utterance {self.id!r}: {exc}") from None
        if self.duration_ms is not None and self.duration_ms < 0:
            raise ValueError(f"utterance {self.id!r}: negative duration_ms")

    @property
    def m(self) -> int:
        return len(self.transcription)

    @property
    def n(self) -> int:
        return len(self.translation)

    @classmethod
    def from_text(cls, id, src, tgt, align=None, **kwargs) -> "UtterancePair":
        transcription = tokenize(src)
        translation = tokenize(tgt)
        alignment = None
        if align is not None:
            try:
                alignment = parse_pharaoh(align, len(transcription), len(translation))
            except AlignmentBoundsError as exc:
                raise AlignmentBoundsError(f"utterance {id!r}: {exc}") from None
        return cls(id, transcription, translation, alignment, **kwargs)

    def to_record(self) -> dict:
        rec = dict(self.extra)
        rec.update(
            id=self.id,
            src=" ".join(self.transcription),
            tgt=" ".join(self.translation),
            src_lang=self.src_lang,
            tgt_lang=self.tgt_lang,
        )
        if self.alignment is not None:
            rec["align"] = render_pharaoh(self.alignment)
        if self.duration_ms is not None:
            rec["duration_ms"] = self.duration_ms
        return rec


_KNOWN = {"id", "src", "tgt", "align", "src_lang", "tgt_lang", "duration_ms"}


def pair_from_record(rec: dict, lineno: int | None = None) -> UtterancePair:
    where = f"line {lineno}: " if lineno is not None else ""
    if not isinstance(rec, dict):
        raise CorpusError(f"{where}record is not a JSON object")
    for key in ("id", "src", "tgt"):
        if not isinstance(rec.get(key), str):
            raise CorpusError(f"{where}field {key!r} missing or not a string")
    for key in ("align", "src_lang", "tgt_lang"):
        if key in rec and not isinstance(rec[key], str):
            raise CorpusError(f"{where}field {key!r} must be a string")
    duration = rec.get("duration_ms")
    if duration is not None and (
        isinstance(duration, bool) or not isinstance(duration, int) or duration < 0
    ):
        raise CorpusError(f"{where}field 'duration_ms' must be a non-negative integer")
    try:
        return UtterancePair.from_text(
            rec["id"],
            rec["src"],
            rec["tgt"],
            rec.get("align"),
            src_lang=rec.get("src_lang", "und"),
            tgt_lang=rec.get("tgt_lang", "und"),
            duration_ms=duration,
            extra={k: v for k, v in rec.items() if k not in _KNOWN},
        )
    except AlignmentBoundsError:
        raise
    except ValueError as exc:
        raise CorpusError(f"{where}utterance {rec['id']!r}: {exc}") from None


def read_jsonl(path) -> Iterator[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from None


def write_jsonl(path, records: Iterable[dict]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
            count += 1
    return count


def load_corpus(path: str | Path) -> list[UtterancePair]:
    """Load a JSONL corpus; ids must be unique."""
    pairs = []
    seen = set()
    for lineno, rec in read_jsonl(path):
        pair = pair_from_record(rec, lineno)
        if pair.id in seen:
            raise CorpusError(f"line {lineno}: duplicate id {pair.id!r}")
        seen.add(pair.id)
        pairs.append(pair)
    return pairs
