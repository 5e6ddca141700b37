"""Unified command-line interface.

Exit codes: 0 success, 1 domain/file error, 2 usage error. Machine-readable
results go to stdout (JSON); diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import evaluation, model_io, transfer
from . import translator as translator_mod
from .translator import DecodeConfig, Direction, TranslationModel


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return 1


def _emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False))


def _load_topics(path: str | None) -> list[str]:
    if path is None:
        return corpus_mod.default_topics()
    return [
        t.strip()
        for t in Path(path).read_text("utf-8").splitlines()
        if t.strip() and not t.startswith("#")
    ]


def cmd_synthesize(args) -> int:
    if args.provider == "live":
        return _fail("live provider is not configured in this build; use --provider replay")
    provider = corpus_mod.ReplayProvider.from_file(args.transcripts)
    config = corpus_mod.SynthesisConfig(
        topics=_load_topics(args.topics_file),
        startup_queries_per_topic=args.startup_n,
        conditioned_queries=args.conditioned_n,
        temperature=args.temperature,
        seed=args.seed,
    )
    corpus = corpus_mod.synthesize(config, provider, out_path=args.out)
    _emit({"instances": len(corpus), "out": args.out})
    return 0


def cmd_stats(args) -> int:
    corpus = corpus_mod.Corpus.load(args.corpus)
    stats = corpus_mod.compute_stats(corpus, k=args.top_k)
    _emit(
        {
            "instance_count": stats.instance_count,
            "emoji_vocab_size": stats.emoji_vocab_size,
            "avg_text_length": stats.avg_text_length,
            "avg_emoji_length": stats.avg_emoji_length,
            "top_k_emojis": [[tok.text, c] for tok, c in stats.top_k_emojis],
        }
    )
    return 0


def cmd_split(args) -> int:
    corpus = corpus_mod.Corpus.load(args.corpus)
    assignment = corpus_mod.split(corpus, args.seed)
    Path(args.out).write_text(json.dumps(assignment.to_dict()), "utf-8")
    _emit(
        {
            "train": len(assignment.train),
            "dev": len(assignment.dev),
            "test": len(assignment.test),
            "out": args.out,
        }
    )
    return 0


def cmd_train(args) -> int:
    corpus = corpus_mod.Corpus.load(args.corpus)
    direction = Direction(args.direction)
    instances = list(corpus)
    if args.split_file:
        assignment = corpus_mod.SplitAssignment.from_dict(
            json.loads(Path(args.split_file).read_text("utf-8"))
        )
        instances = corpus_mod.select(corpus, assignment.train)
    lexicon = translator_mod.train_em(instances, direction, args.iters, args.seed)
    lm = translator_mod.train_lm(instances, direction, order=args.lm_order, alpha=args.lm_alpha)
    model = TranslationModel(
        direction=direction,
        lexicon=lexicon,
        lm=lm,
        config=DecodeConfig(beam_size=args.beam_size),
        model_id=f"{args.direction}-em{args.iters}",
    )
    model_io.save_model(model, args.out)
    _emit(
        {
            "direction": args.direction,
            "iterations": args.iters,
            "final_log_likelihood": lexicon.log_likelihoods[-1],
            "out": args.out,
        }
    )
    return 0


def cmd_translate(args) -> int:
    model = model_io.load_model(args.model)
    source = sys.stdin if args.input == "-" else open(args.input, encoding="utf-8")
    try:
        for line in source:
            line = line.rstrip("\n")
            if not line.strip():
                print("")
                continue
            output, _ = translator_mod.translate_string(model, line)
            print(output)
    finally:
        if source is not sys.stdin:
            source.close()
    return 0


def _read_token_lines(path: str, side: str) -> list[list[str]]:
    from . import emoji_core

    rows = []
    for line in Path(path).read_text("utf-8").splitlines():
        if side == "emoji":
            rows.append([t.text for t in emoji_core.emoji_tokens(line)])
        else:
            rows.append(translator_mod.tokenize_text(line))
    return rows


def cmd_evaluate(args) -> int:
    if args.metric == "bleu":
        hyp = _read_token_lines(args.hyp, args.side)
        ref = _read_token_lines(args.ref, args.side)
        report = evaluation.bleu(hyp, ref, max_n=args.max_n)
        _emit(
            {
                "bleu": {str(n): report.scores[n] for n in report.scores},
                "brevity_penalty": report.brevity_penalty,
                "hyp_len": report.hyp_len,
                "ref_len": report.ref_len,
            }
        )
        return 0
    tasks = evaluation.load_tasks(args.tasks)
    judgments = evaluation.load_judgments(args.judgments)
    summary = evaluation.aggregate_preferences(tasks, judgments)
    _emit(
        {
            "system_preference_rate": summary.system_preference_rate,
            "items": len(summary.winners),
        }
    )
    return 0


def cmd_transfer(args) -> int:
    dataset = transfer.LabeledDataset.from_files(args.train, args.test)
    label_map = transfer.LabelMap.from_file(args.labels)
    result = transfer.run_experiment(
        dataset,
        label_map,
        mode=args.mode,
        k=args.k,
        runs=args.runs,
        base_seed=args.seed,
    )
    _emit({"per_run_macro_f1": result.per_run, "mean_macro_f1": result.mean})
    return 0


def cmd_serve(args) -> int:
    from . import service

    registry = service.build_registry(args.t2e_model, args.e2t_model, args.labelmap)
    service.serve(registry, bind_address=args.bind, static_dir=args.static_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="emojitrans")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synthesize", help="synthesize a parallel corpus from a provider")
    p.add_argument("--topics-file", default=None)
    p.add_argument("--startup-n", type=int, default=1)
    p.add_argument("--conditioned-n", type=int, default=0)
    p.add_argument("--temperature", type=float, default=1.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--provider", choices=["replay", "live"], default="replay")
    p.add_argument("--transcripts", default=None, help="replay transcript file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("stats", help="corpus statistics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--top-k", type=int, default=10)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("split", help="8/1/1 train/dev/test split")
    p.add_argument("--corpus", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train", help="train a translation model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--direction", choices=["t2e", "e2t"], required=True)
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--split-file", default=None, help="train on the split's train ids only")
    p.add_argument("--lm-order", type=int, default=2)
    p.add_argument("--lm-alpha", type=float, default=0.1)
    p.add_argument("--beam-size", type=int, default=4)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("translate", help="translate stdin (or a file) line by line")
    p.add_argument("--model", required=True)
    p.add_argument("--input", default="-")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("evaluate", help="BLEU or preference aggregation")
    esub = p.add_subparsers(dest="metric", required=True)
    pb = esub.add_parser("bleu")
    pb.add_argument("--hyp", required=True)
    pb.add_argument("--ref", required=True)
    pb.add_argument("--max-n", type=int, default=4)
    pb.add_argument("--side", choices=["emoji", "text"], default="emoji")
    pb.set_defaults(func=cmd_evaluate)
    pp = esub.add_parser("prefs")
    pp.add_argument("--tasks", required=True)
    pp.add_argument("--judgments", required=True)
    pp.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("transfer", help="labels-as-emojis classification experiment")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--labels", required=True, help="class<TAB>emoji label-map file")
    p.add_argument("--mode", choices=["full", "fewshot"], default="full")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--bind", default="127.0.0.1:8000")
    p.add_argument("--t2e-model", required=True)
    p.add_argument("--e2t-model", required=True)
    p.add_argument("--labelmap", default=None)
    p.add_argument("--static-dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as e:
        return _fail(f"file not found: {e.filename or e}")
    except (ValueError, RuntimeError) as e:
        return _fail(f"{type(e).__name__}: {e}")


if __name__ == "__main__":
    sys.exit(main())
