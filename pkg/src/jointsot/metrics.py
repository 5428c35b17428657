"""Quality (WER, BLEU) and latency (AL, LAAL) metrics."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from . import _backend
from .corpus import TAGS
from .interleave import Task
from .stream import StreamParser

MAX_ORDER = 4


def _words(sentence) -> list[str]:
    return sentence.split() if isinstance(sentence, str) else list(sentence)


def _encode(ref, hyp):
    vocab: dict[str, int] = {}
    r = [vocab.setdefault(w, len(vocab)) for w in ref]
    h = [vocab.setdefault(w, len(vocab)) for w in hyp]
    return r, h


def edit_distance(reference: Sequence[str], hypothesis: Sequence[str]) -> int:
    r, h = _encode(reference, hypothesis)
    return _backend.edit_distance(r, h)


def wer(reference, hypothesis) -> float:
    """Word error rate in percent, unit edit costs, no normalization."""
    ref = [w for w in _words(reference) if w not in TAGS]
    hyp = [w for w in _words(hypothesis) if w not in TAGS]
    if not ref:
        raise ValueError("WER is undefined for an empty reference")
    return 100.0 * edit_distance(ref, hyp) / len(ref)


def corpus_wer(references, hypotheses) -> float:
    if len(references) != len(hypotheses):
        raise ValueError(f"{len(references)} references but {len(hypotheses)} hypotheses")
    errors = words = 0
    for ref, hyp in zip(references, hypotheses):
        ref = [w for w in _words(ref) if w not in TAGS]
        hyp = [w for w in _words(hyp) if w not in TAGS]
        errors += edit_distance(ref, hyp)
        words += len(ref)
    if words == 0:
        raise ValueError("WER is undefined for an empty reference corpus")
    return 100.0 * errors / words


def _ngrams(words, n):
    return Counter(tuple(words[i:i + n]) for i in range(len(words) - n + 1))


def bleu_stats(references, hypotheses):
    """Sufficient statistics: (correct[4], total[4], hyp_len, ref_len)."""
    correct = [0] * MAX_ORDER
    total = [0] * MAX_ORDER
    sys_len = ref_len = 0
    for ref, hyp in zip(references, hypotheses):
        ref = [w for w in _words(ref) if w not in TAGS]
        hyp = [w for w in _words(hyp) if w not in TAGS]
        sys_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, MAX_ORDER + 1):
            h = _ngrams(hyp, n)
            r = _ngrams(ref, n)
            correct[n - 1] += sum(min(c, r[g]) for g, c in h.items())
            total[n - 1] += max(len(hyp) - n + 1, 0)
    return correct, total, sys_len, ref_len


def bleu_from_stats(correct, total, sys_len, ref_len) -> float:
    if sys_len == 0 and ref_len == 0:
        return 100.0
    if not any(correct):
        return 0.0
    bp = 1.0 if sys_len >= ref_len else math.exp(1.0 - ref_len / sys_len)
    log_sum = 0.0
    order = 0
    zeros = 0
    for c, t in zip(correct, total):
        # orders the hypotheses are too short to contain are left out
        if t == 0:
            break
        order += 1
        if c == 0:
            zeros += 1
            log_sum += math.log(1.0 / (2 ** zeros * t))
        else:
            log_sum += math.log(c / t)
    return 100.0 * bp * math.exp(log_sum / order)


def bleu(references, hypotheses) -> float:
    """Corpus BLEU-4 on whitespace tokens, exponential smoothing, 0..100."""
    if len(references) != len(hypotheses):
        raise ValueError(f"{len(references)} references but {len(hypotheses)} hypotheses")
    if not references:
        raise ValueError("BLEU needs at least one sentence")
    return bleu_from_stats(*bleu_stats(references, hypotheses))


@dataclass(frozen=True)
class DelayLog:
    """Emission time of each hypothesis token against a source of ``duration_ms``."""

    id: str
    delays_ms: tuple[float, ...]
    duration_ms: int

    def __post_init__(self):
        object.__setattr__(self, "delays_ms", tuple(self.delays_ms))
        if self.duration_ms <= 0:
            raise ValueError(f"log {self.id!r}: duration_ms must be positive")
        prev = 0
        for d in self.delays_ms:
            if d < prev:
                raise ValueError(f"log {self.id!r}: delays must be non-negative and non-decreasing")
            if d > self.duration_ms:
                raise ValueError(f"log {self.id!r}: delay {d} exceeds duration {self.duration_ms}")
            prev = d

    @property
    def empty(self) -> bool:
        """True when the task produced no tokens; such logs are skipped in latency means."""
        return not self.delays_ms


def _lagging(log: DelayLog, rate_len: int) -> float:
    if not log.delays_ms:
        raise ValueError(f"log {log.id!r} has no delays")
    return _backend.lagging(log.delays_ms, float(log.duration_ms), rate_len)


def al(log: DelayLog, ref_len: int) -> float:
    """Average lagging, truncated at the first token emitted with the full source."""
    if ref_len < 1:
        raise ValueError("ref_len must be positive")
    return _lagging(log, ref_len)


def laal(log: DelayLog, ref_len: int) -> float:
    """AL with the ideal rate taken from the longer of reference and hypothesis."""
    if ref_len < 1:
        raise ValueError("ref_len must be positive")
    return _lagging(log, max(ref_len, len(log.delays_ms)))


def per_task_delays(
    joint_tokens: Sequence[str],
    joint_delays: Sequence[float],
    duration_ms: int,
    id: str = "",
) -> tuple[DelayLog, DelayLog]:
    """Route each data token's delay to its task; tag delays are dropped."""
    if len(joint_tokens) != len(joint_delays):
        raise ValueError(f"{len(joint_tokens)} tokens but {len(joint_delays)} delays")
    parser = StreamParser()
    asr, st = [], []
    for tok, d in zip(joint_tokens, joint_delays):
        out = parser.feed(tok)
        if out is None:
            continue
        (asr if out[0] is Task.ASR else st).append(d)
    return DelayLog(id, asr, duration_ms), DelayLog(id, st, duration_ms)


@dataclass
class MetricReport:
    utterance_count: int
    wer_percent: float | None = None
    bleu: float | None = None
    asr_al_ms: float | None = None
    asr_laal_ms: float | None = None
    st_al_ms: float | None = None
    st_laal_ms: float | None = None
    latency_skipped: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def _mean(values):
    return sum(values) / len(values) if values else None


def evaluate(items: Iterable[dict]) -> MetricReport:
    """Aggregate metrics over utterances.

    Each item holds ``ref_asr``, ``ref_st``, ``hyp_asr``, ``hyp_st`` token
    lists and optionally ``asr_log`` / ``st_log`` DelayLogs. Latencies are
    per-utterance values averaged; empty logs are skipped and counted.
    """
    items = list(items)
    if not items:
        raise ValueError("nothing to evaluate")
    report = MetricReport(utterance_count=len(items))
    asr_refs = [it["ref_asr"] for it in items]
    if any(asr_refs):
        report.wer_percent = corpus_wer(asr_refs, [it["hyp_asr"] for it in items])
    report.bleu = bleu([it["ref_st"] for it in items], [it["hyp_st"] for it in items])

    lat = {"asr_al": [], "asr_laal": [], "st_al": [], "st_laal": []}
    skipped = 0
    for it in items:
        for task, ref_key in (("asr", "ref_asr"), ("st", "ref_st")):
            log = it.get(f"{task}_log")
            if log is None:
                continue
            ref_len = len(it[ref_key])
            if log.empty or ref_len == 0:
                skipped += 1
                continue
            lat[f"{task}_al"].append(al(log, ref_len))
            lat[f"{task}_laal"].append(laal(log, ref_len))
    report.asr_al_ms = _mean(lat["asr_al"])
    report.asr_laal_ms = _mean(lat["asr_laal"])
    report.st_al_ms = _mean(lat["st_al"])
    report.st_laal_ms = _mean(lat["st_laal"])
    report.latency_skipped = skipped
    return report
