"""Command-line entry point: ``laysumm <command> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Iterator

from . import corpus, corruption, extractive, harness, humaneval
from .rouge import RougeConfig, RougeLMode

log = logging.getLogger("laysumm")

SEED_ENV = "LAYSUMM_SEED"


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"{SEED_ENV} must be an integer, got {env!r}")
    return 0


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _require(args, name: str) -> str:
    value = getattr(args, name)
    if not value:
        raise SystemExit(f"{args.command}: --{name} is required")
    return value


def _split_from_file(path: str, name: str | None = None) -> corpus.CorpusSplit:
    stem = Path(path).stem
    split_name = name or (stem if stem in corpus.SPLIT_NAMES else "test")
    return corpus.CorpusSplit(split_name, tuple(corpus.load_corpus(path)))


def _rouge_config(args) -> RougeConfig:
    return RougeConfig(
        stemming=not args.no_stemming,
        lowercase=not args.no_lowercase,
        rouge_l_mode=args.rouge_l_mode,
    )


def cmd_ingest(args) -> int:
    pairs = corpus.load_corpus(_require(args, "input"))
    n_loaded = len(pairs)
    if not args.no_filter:
        pairs = corpus.filter_by_length(
            pairs, args.min_source, args.max_source, args.min_target, args.max_target
        )
    splits = corpus.split_corpus(pairs, tuple(args.sizes), resolve_seed(args.seed))
    outdir = Path(args.output or "splits")
    outdir.mkdir(parents=True, exist_ok=True)
    for s in splits:
        corpus.write_pairs(s.pairs, outdir / f"{s.name}.jsonl")
    summary = {"loaded": n_loaded, "retained": len(pairs), **{s.name: len(s) for s in splits}}
    print(json.dumps(summary))
    return 0


def cmd_stats(args) -> int:
    paths = args.input_files or [_require(args, "input")]
    stats = [corpus.compute_statistics(_split_from_file(p, args.split if len(paths) == 1 else None))
             for p in paths]
    if args.format == "json":
        text = json.dumps([s.to_dict() for s in stats], indent=2) + "\n"
    else:
        text = corpus.statistics_csv(stats)
        if args.format == "table":
            rows = [line.split(",") for line in text.splitlines()]
            widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
            text = "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n" for r in rows)
    _emit(text, args.output)
    return 0


def cmd_eval(args) -> int:
    split = _split_from_file(_require(args, "input"), args.split)
    cands = harness.load_candidates(_require(args, "candidates"), args.system_name)
    violations = harness.validate_lengths(cands, args.min_words, args.max_words)
    if violations:
        log.warning("%d candidates outside [%d, %d] words: %s", len(violations),
                    args.min_words, args.max_words, ", ".join(violations[:20]))
    try:
        report = harness.evaluate(cands, split, _rouge_config(args), workers=args.workers)
    except harness.MissingCandidatesError as e:
        raise SystemExit(f"eval: {e}")
    if args.format == "json":
        text = report.to_json() + "\n"
    elif args.format == "csv":
        text = harness.reports_csv([report])
    else:
        text = harness.reports_table([report])
    _emit(text, args.output)
    return 0


def _write_jsonl(records: Iterator[dict], output: str | None) -> None:
    out = open(output, "w", encoding="utf-8") if output else sys.stdout
    try:
        for rec in records:
            out.write(json.dumps(rec, ensure_ascii=False) + "\n")
    finally:
        if output:
            out.close()


def cmd_oracle(args) -> int:
    pairs = corpus.load_corpus(_require(args, "input"))
    config = _rouge_config(args)
    _write_jsonl(
        (extractive.oracle_greedy(p.source, p.target, args.max_sentences, config).to_record(p.id) for p in pairs),
        args.output,
    )
    return 0


def cmd_lead(args) -> int:
    pairs = corpus.load_corpus(_require(args, "input"))
    _write_jsonl((extractive.lead_k(p.source, args.k).to_record(p.id) for p in pairs), args.output)
    return 0


def _read_documents(path: str, field: str) -> Iterator[str]:
    with open(path, encoding="utf-8") as f:
        if path.endswith((".jsonl", ".json")):
            for lineno, line in enumerate(f, start=1):
                if line.strip():
                    obj = json.loads(line)
                    if field not in obj:
                        raise SystemExit(f"corrupt: line {lineno} has no field {field!r}")
                    yield obj[field]
        else:
            for line in f:
                if line.strip():
                    yield line.rstrip("\n")


def _one_line(text: str) -> str:
    return " ".join(text.split())


def cmd_corrupt(args) -> int:
    config = corruption.CorruptionConfig(
        seed=resolve_seed(args.seed),
        shuffle_sentences=not args.no_shuffle,
        substitute_spans=not args.no_substitution,
        mask_ratio=args.mask_ratio,
        span_length_mean=args.span_length_mean,
        mask_token=args.mask_token,
    )
    prefix = Path(args.output or "denoising")
    prefix.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with open(f"{prefix}.source", "w", encoding="utf-8") as src, open(f"{prefix}.target", "w", encoding="utf-8") as tgt:
        for pair in corruption.iter_pairs(_read_documents(_require(args, "input"), args.field), config):
            src.write(_one_line(pair.corrupted) + "\n")
            tgt.write(_one_line(pair.original) + "\n")
            n += 1
    print(json.dumps({"documents": n, "source": f"{prefix}.source", "target": f"{prefix}.target"}))
    return 0


def cmd_humaneval(args) -> int:
    split = _split_from_file(_require(args, "input"), args.split)
    cands = harness.load_candidates(_require(args, "candidates"), args.system_name)
    packets, key = humaneval.make_human_eval_packets(split, cands, args.n_abstracts, resolve_seed(args.seed))
    written = humaneval.write_packets(packets, key, args.output or "humaneval")
    print(json.dumps({"packets": len(packets), "files": [str(p) for p in written]}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSONL (or text file for corrupt)")
    common.add_argument("--candidates", help="candidate summaries JSONL: {\"id\", \"summary\"}")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (falls back to ${SEED_ENV}, then 0)")
    common.add_argument("--output", help="output file, directory or prefix depending on the command")
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    rouge_flags = argparse.ArgumentParser(add_help=False)
    rouge_flags.add_argument("--no-stemming", action="store_true")
    rouge_flags.add_argument("--no-lowercase", action="store_true")
    rouge_flags.add_argument("--rouge-l-mode", choices=[m.value for m in RougeLMode],
                             default=RougeLMode.SUMMARY_LEVEL_UNION_LCS.value)

    parser = argparse.ArgumentParser(prog="laysumm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="filter by length and split a raw corpus")
    p.add_argument("--min-source", type=int, default=300)
    p.add_argument("--max-source", type=int, default=1000)
    p.add_argument("--min-target", type=int, default=100)
    p.add_argument("--max-target", type=int, default=700)
    p.add_argument("--no-filter", action="store_true")
    p.add_argument("--sizes", type=int, nargs=3, default=list(corpus.DEFAULT_SIZES),
                   metavar=("TRAIN", "VALIDATION", "TEST"))
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", parents=[common], help="per-split dataset statistics")
    p.add_argument("input_files", nargs="*", help="split JSONL files (named train/validation/test.jsonl)")
    p.add_argument("--split", choices=corpus.SPLIT_NAMES)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("eval", parents=[common, rouge_flags], help="ROUGE + readability report")
    p.add_argument("--split", choices=corpus.SPLIT_NAMES)
    p.add_argument("--system-name")
    p.add_argument("--min-words", type=int, default=100)
    p.add_argument("--max-words", type=int, default=700)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle", parents=[common, rouge_flags], help="greedy ROUGE-2 oracle extracts")
    p.add_argument("--max-sentences", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("lead", parents=[common], help="first-k-sentences baseline")
    p.add_argument("-k", "--k", type=int, default=3)
    p.set_defaults(func=cmd_lead)

    p = sub.add_parser("corrupt", parents=[common], help="denoising pairs as aligned .source/.target files")
    p.add_argument("--field", default="source", help="JSONL field holding the document")
    p.add_argument("--no-shuffle", action="store_true")
    p.add_argument("--no-substitution", action="store_true")
    p.add_argument("--mask-ratio", type=float, default=0.3)
    p.add_argument("--span-length-mean", type=float, default=3.0)
    p.add_argument("--mask-token", default="<mask>")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("humaneval", parents=[common], help="blinded human-evaluation packets")
    p.add_argument("--split", choices=corpus.SPLIT_NAMES)
    p.add_argument("--system-name", default="system")
    p.add_argument("--n-abstracts", type=int, default=2)
    p.set_defaults(func=cmd_humaneval)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        log.error("%s", e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
