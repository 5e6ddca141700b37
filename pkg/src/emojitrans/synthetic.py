"""Synthetic corpora with known ground truth, for oracle-style checks.

The bijective corpus pairs each pseudo-word with exactly one emoji, so the
generating mapping itself is the oracle for translation quality. The
separable classification dataset gives each class a disjoint vocabulary.
"""

from __future__ import annotations

import random

from .corpus import Corpus, Origin, filter_instance
from .transfer import LabeledDataset

FUNCTION_WORDS = ["the", "a", "my", "is"]

# 1F400.. is a contiguous run of animal emojis, all single-scalar.
_EMOJI_BASE = 0x1F400


def bijective_mapping(n_words: int = 50) -> dict[str, str]:
    return {f"word{i:02d}": chr(_EMOJI_BASE + i) for i in range(n_words)}


def make_bijective_corpus(
    n_words: int = 50,
    n_sentences: int = 500,
    seed: int = 0,
    function_word_rate: float = 0.5,
    min_len: int = 6,
    max_len: int = 10,
) -> tuple[Corpus, dict[str, str]]:
    """Corpus whose emoji side is the image of the text side under a known
    word->emoji bijection; function-word noise only on the text side."""
    mapping = bijective_mapping(n_words)
    words = sorted(mapping)
    rng = random.Random(seed)
    corpus = Corpus()
    while len(corpus) < n_sentences:
        content = [rng.choice(words) for _ in range(rng.randint(min_len, max_len))]
        emoji_side = "".join(mapping[w] for w in content)
        text_side = list(content)
        if rng.random() < function_word_rate:
            text_side.insert(rng.randrange(len(text_side) + 1), rng.choice(FUNCTION_WORDS))
        corpus.add(
            filter_instance(" ".join(text_side), emoji_side, topic="synthetic",
                            origin=Origin.IMPORTED)
        )
    return corpus, mapping


def make_separable_dataset(
    n_classes: int = 4,
    words_per_class: int = 8,
    train_per_class: int = 30,
    test_per_class: int = 20,
    words_per_text: int = 5,
    seed: int = 0,
) -> LabeledDataset:
    """Classification data where each class draws from a disjoint vocabulary,
    so a Bayes classifier (and ours) separates it perfectly."""
    rng = random.Random(seed)
    class_vocab = {
        f"class{c}": [f"c{c}word{i}" for i in range(words_per_class)] for c in range(n_classes)
    }
    records: list[tuple[str, str]] = []

    def make_text(cls_name: str) -> str:
        return " ".join(rng.choice(class_vocab[cls_name]) for _ in range(words_per_text))

    train_ids = []
    test_ids = []
    for cls_name in sorted(class_vocab):
        for _ in range(train_per_class):
            train_ids.append(len(records))
            records.append((make_text(cls_name), cls_name))
        for _ in range(test_per_class):
            test_ids.append(len(records))
            records.append((make_text(cls_name), cls_name))
    return LabeledDataset(records, tuple(train_ids), tuple(test_ids))
