"""Train and evaluate both translation directions on the oracle corpus.

The corpus is generated from a known word<->emoji bijection, so perfect
recovery is possible in principle and BLEU directly measures how much of
the generating mapping the model learned. Prints a JSON report.
"""

from __future__ import annotations

import argparse
import json
import time

from emojitrans import corpus as corpus_mod
from emojitrans.evaluation import bleu
from emojitrans.synthetic import make_bijective_corpus
from emojitrans.translator import (
    DecodeConfig,
    Direction,
    TranslationModel,
    instance_tokens,
    train_em,
    train_lm,
    translate,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-words", type=int, default=50)
    parser.add_argument("--n-sentences", type=int, default=500)
    parser.add_argument("--function-word-rate", type=float, default=0.3)
    parser.add_argument("--iters", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    corpus, _ = make_bijective_corpus(
        n_words=args.n_words,
        n_sentences=args.n_sentences,
        seed=args.seed,
        function_word_rate=args.function_word_rate,
    )
    assignment = corpus_mod.split(corpus, seed=args.seed)
    train_set = corpus_mod.select(corpus, assignment.train)
    test_set = corpus_mod.select(corpus, assignment.test)

    report = {"train": len(train_set), "dev": len(assignment.dev), "test": len(test_set)}
    for direction in (Direction.TEXT_TO_EMOJI, Direction.EMOJI_TO_TEXT):
        start = time.perf_counter()
        model = TranslationModel(
            direction=direction,
            lexicon=train_em(train_set, direction, iterations=args.iters),
            lm=train_lm(train_set, direction, order=2, alpha=0.1),
            config=DecodeConfig(),
            model_id=f"{direction.value}-oracle",
        )
        hyps, refs = [], []
        for inst in test_set:
            src, ref = instance_tokens(inst, direction)
            hyps.append(list(translate(model, src).tokens))
            refs.append(ref)
        scores = bleu(hyps, refs, max_n=2)
        report[direction.value] = {
            "bleu1": round(scores.b1, 4),
            "bleu2": round(scores.b2, 4),
            "final_log_likelihood": round(model.lexicon.log_likelihoods[-1], 2),
            "train_seconds": round(time.perf_counter() - start, 2),
        }
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
