"""Command-line entry point: ``jointsot <subcommand> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter, defaultdict
from contextlib import contextmanager

from .corpus import CorpusError, pair_from_record, read_jsonl, tokenize
from .interleave import ALL_STRATEGIES, flatten, parse_strategy, serialize
from .metrics import evaluate, per_task_delays
from .simulate import EmissionPolicy, compare_strategies, format_table, simulate_pair
from .stream import roundtrip_check, split
from .synthetic import TOPOLOGIES, generate_corpus, has_crossing

log = logging.getLogger("jointsot")


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _write_records(path, records):
    with _open_out(path) as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def _report(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(text, file=sys.stderr if args.output in (None, "-") else sys.stdout)


def _load_records(args):
    # malformed JSON lines raise CorpusError
    return list(read_jsonl(args.input))


def _joint_tokens(rec) -> list[str] | None:
    if isinstance(rec.get("tokens"), list):
        return [str(t) for t in rec["tokens"]]
    if isinstance(rec.get("tsot"), str):
        return tokenize(rec["tsot"])
    return None


def cmd_serialize(args) -> int:
    strategy = parse_strategy(args.strategy)
    out, skipped = [], []
    tokens = segments = 0
    for lineno, rec in _load_records(args):
        try:
            pair = pair_from_record(rec, lineno)
            stream = serialize(pair, strategy)
        except ValueError as exc:
            if not args.skip_bad:
                log.error("line %d: %s", lineno, exc)
                return 1
            skipped.append({"line": lineno, "id": rec.get("id"), "error": str(exc)})
            continue
        flat = flatten(stream)
        tokens += len(flat)
        segments += len(stream.segments)
        record = dict(rec)
        record["tsot"] = " ".join(flat)
        out.append(record)
    _write_records(args.output, out)
    payload = {
        "strategy": strategy.name,
        "utterances": len(out),
        "tokens": tokens,
        "segments": segments,
        "skipped": len(skipped),
        "skipped_records": skipped,
    }
    _report(
        args,
        payload,
        f"{strategy.name}: {len(out)} utterances, {tokens} tokens, {segments} segments, "
        f"{len(skipped)} skipped",
    )
    return 0


def cmd_split(args) -> int:
    out = []
    for lineno, rec in _load_records(args):
        toks = _joint_tokens(rec)
        if toks is None:
            log.error("line %d: record has neither 'tsot' nor 'tokens'", lineno)
            return 1
        res = split(toks)
        record = {"id": rec.get("id"), "asr": " ".join(res.asr), "st": " ".join(res.st),
                  "warnings": list(res.warnings)}
        out.append(record)
    _write_records(args.output, out)
    warned = sum(1 for r in out if r["warnings"])
    _report(args, {"records": len(out), "with_warnings": warned},
            f"{len(out)} records split, {warned} with warnings")
    return 0


def cmd_validate(args) -> int:
    failures = []
    count = 0
    for lineno, rec in _load_records(args):
        count += 1
        try:
            pair = pair_from_record(rec, lineno)
        except ValueError as exc:
            failures.append({"id": rec.get("id"), "line": lineno, "error": str(exc)})
            continue
        if not isinstance(rec.get("tsot"), str):
            failures.append({"id": pair.id, "line": lineno, "error": "missing 'tsot' field"})
            continue
        report = roundtrip_check(pair, tokenize(rec["tsot"]))
        if not report.ok:
            failures.append({
                "id": pair.id,
                "line": lineno,
                "asr_divergence": report.asr_divergence,
                "st_divergence": report.st_divergence,
                "error": report.describe(),
            })
    lines = [f"{count} records, {len(failures)} failed"]
    lines += [f"  {f['id']} (line {f['line']}): {f['error']}" for f in failures]
    if args.json:
        print(json.dumps({"records": count, "failed": len(failures), "failures": failures}, indent=2))
    else:
        print("\n".join(lines))
    return 1 if failures else 0


def _eval_items(refs, hyps):
    groups: dict[tuple[str, str], list[dict]] = defaultdict(list)
    for hyp_line, h in hyps:
        hid = h.get("id")
        if hid not in refs:
            raise CorpusError(f"hypothesis line {hyp_line}: unknown id {hid!r}")
        pair = refs[hid]
        item = {"ref_asr": pair.transcription, "ref_st": pair.translation}
        toks = _joint_tokens(h)
        if toks is not None:
            res = split(toks)
            item["hyp_asr"], item["hyp_st"] = res.asr, res.st
        elif isinstance(h.get("asr"), str) and isinstance(h.get("st"), str):
            item["hyp_asr"], item["hyp_st"] = tokenize(h["asr"]), tokenize(h["st"])
        else:
            raise CorpusError(f"hypothesis line {hyp_line}: needs 'tokens', 'tsot' or 'asr'+'st'")
        if "delays_ms" in h:
            if toks is None:
                raise CorpusError(f"hypothesis line {hyp_line}: 'delays_ms' needs joint 'tokens'")
            duration = h.get("duration_ms", pair.duration_ms)
            if not duration:
                raise CorpusError(f"hypothesis line {hyp_line}: latency needs 'duration_ms'")
            item["asr_log"], item["st_log"] = per_task_delays(toks, h["delays_ms"], duration, hid)
        strategy = h.get("strategy", "")
        groups[(strategy, f"{pair.src_lang}-{pair.tgt_lang}")].append(item)
    return groups


def cmd_eval(args) -> int:
    refs = {}
    for lineno, rec in _load_records(args):
        pair = pair_from_record(rec, lineno)
        refs[pair.id] = pair
    hyps = list(read_jsonl(args.hyp))
    groups = _eval_items(refs, hyps)
    result: dict = {}
    lines = []
    for strategy in sorted({s for s, _ in groups}):
        by_pair = {lp: evaluate(items).to_dict() for (s, lp), items in sorted(groups.items()) if s == strategy}
        everything = [it for (s, _), items in groups.items() if s == strategy for it in items]
        block = {"by_language_pair": by_pair, "corpus": evaluate(everything).to_dict()}
        result[strategy or "default"] = block
        lines.append(f"[{strategy or 'default'}]")
        for lp, rep in [*by_pair.items(), ("ALL", block["corpus"])]:
            lines.append(f"  {lp}: " + ", ".join(
                f"{k}={v:.2f}" if isinstance(v, float) else f"{k}={v}" for k, v in rep.items()))
    if args.output not in (None, "-"):
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(result, fh, indent=2)
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        print("\n".join(lines))
    return 0


def cmd_simulate(args) -> int:
    names = args.strategies.split(",") if args.strategies else [s.name for s in ALL_STRATEGIES]
    strategies = [parse_strategy(s.strip()) for s in names]
    policy = EmissionPolicy(chunk_ms=args.chunk_ms)
    pairs = []
    for lineno, rec in _load_records(args):
        pairs.append(pair_from_record(rec, lineno))
    out = []
    for pair in pairs:
        for strategy in strategies:
            tokens, joint, _, _ = simulate_pair(pair, strategy, policy)
            out.append({"id": pair.id, "strategy": strategy.name, "duration_ms": pair.duration_ms,
                        "tokens": tokens, "delays_ms": list(joint.delays_ms)})
    if args.output not in (None, "-"):
        _write_records(args.output, out)
    rows = compare_strategies(pairs, policy, strategies)
    table = [
        {"strategy": r.strategy, "asr_laal_ms": r.asr_laal_ms, "st_laal_ms": r.st_laal_ms,
         "utterances": r.utterances}
        for r in rows
    ]
    if args.table_json:
        with open(args.table_json, "w", encoding="utf-8") as fh:
            json.dump({"chunk_ms": policy.chunk_ms, "rows": table}, fh, indent=2)
    if args.json:
        print(json.dumps({"chunk_ms": policy.chunk_ms, "rows": table}, indent=2))
    else:
        print(format_table(rows))
    return 0


def cmd_stats(args) -> int:
    n = src_tok = tgt_tok = links = aligned = segs = 0
    lang = Counter()
    for lineno, rec in _load_records(args):
        pair = pair_from_record(rec, lineno)
        n += 1
        src_tok += pair.m
        tgt_tok += pair.n
        lang[f"{pair.src_lang}-{pair.tgt_lang}"] += 1
        if pair.alignment is not None:
            aligned += 1
            links += len(pair.alignment)
        if isinstance(rec.get("tsot"), str):
            segs += sum(1 for t in tokenize(rec["tsot"]) if t in ("#ASR#", "#ST#"))
    payload = {
        "utterances": n,
        "src_tokens": src_tok,
        "tgt_tokens": tgt_tok,
        "aligned_utterances": aligned,
        "links": links,
        "segments": segs,
        "language_pairs": dict(sorted(lang.items())),
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for k, v in payload.items():
            print(f"{k}: {v}")
    return 0


def cmd_gen_synthetic(args) -> int:
    topologies = tuple(t.strip() for t in args.topology.split(","))
    pairs = generate_corpus(args.seed, args.count, args.min_words, args.max_words,
                            topologies, args.ms_per_word)
    _write_records(args.output, (p.to_record() for p in pairs))
    crossing = sum(1 for p in pairs if has_crossing(p.alignment))
    log.info("generated %d records (%d with crossing links)", len(pairs), crossing)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input JSONL file")
    common.add_argument("--output", "-o", default="-", help="output file (default: stdout)")
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")

    ap = argparse.ArgumentParser(prog="jointsot", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serialize", parents=[common], help="add joint t-SOT references")
    p.add_argument("--strategy", default="align",
                   help="inter0.0, inter1.0, inter0.5, gamma:<float> or align (default)")
    p.add_argument("--skip-bad", action="store_true", help="skip bad records instead of aborting")
    p.set_defaults(func=cmd_serialize, needs_input=True)

    p = sub.add_parser("split", parents=[common], help="split joint streams into ASR and ST")
    p.set_defaults(func=cmd_split, needs_input=True)

    p = sub.add_parser("validate", parents=[common], help="round-trip check serialized records")
    p.set_defaults(func=cmd_validate, needs_input=True)

    p = sub.add_parser("eval", parents=[common], help="WER, BLEU, AL and LAAL")
    p.add_argument("--hyp", required=True, help="hypothesis / delay-log JSONL")
    p.set_defaults(func=cmd_eval, needs_input=True)

    p = sub.add_parser("simulate", parents=[common], help="chunked emission simulation")
    p.add_argument("--chunk-ms", type=int, default=1000)
    p.add_argument("--strategies", default="", help="comma list (default: all four)")
    p.add_argument("--table-json", help="also write the comparison table here")
    p.set_defaults(func=cmd_simulate, needs_input=True)

    p = sub.add_parser("stats", parents=[common], help="corpus statistics")
    p.set_defaults(func=cmd_stats, needs_input=True)

    p = sub.add_parser("gen-synthetic", parents=[common], help="seeded synthetic corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", "-n", type=int, default=200)
    p.add_argument("--min-words", type=int, default=8)
    p.add_argument("--max-words", type=int, default=15)
    p.add_argument("--topology", default="monotone", help=f"comma list of {', '.join(TOPOLOGIES)}")
    p.add_argument("--ms-per-word", type=int, default=1000)
    p.set_defaults(func=cmd_gen_synthetic, needs_input=False)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s: %(message)s")
    if args.needs_input and not args.input:
        ap.error(f"{args.command}: --input is required")
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
