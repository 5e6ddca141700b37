"""Classification-as-translation: class labels presented as single emojis.

The classifier is the one-target degenerate case of the translator's
lexicon: per-word conditional probabilities over the label emojis, pooled
by averaging log evidence across the words of an input.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .evaluation import macro_f1
from .translator import tokenize_text


class EmptyTrain(ValueError):
    pass


class UnknownClass(ValueError):
    pass


class InsufficientClassSize(ValueError):
    def __init__(self, cls_name: str, available: int, k: int):
        super().__init__(f"class {cls_name!r} has {available} train records, need {k}")
        self.cls_name = cls_name
        self.available = available
        self.k = k


class LabelMap:
    """Injective mapping from class names to single label emojis."""

    def __init__(self, entries: dict[str, str]):
        emojis = list(entries.values())
        if len(set(emojis)) != len(emojis):
            raise ValueError("label map must be injective (distinct emojis per class)")
        self.entries = dict(entries)

    def __getitem__(self, cls_name: str) -> str:
        return self.entries[cls_name]

    def __contains__(self, cls_name: str) -> bool:
        return cls_name in self.entries

    @property
    def classes(self) -> list[str]:
        return sorted(self.entries)

    @classmethod
    def from_file(cls, path: str | Path) -> "LabelMap":
        entries: dict[str, str] = {}
        for line in Path(path).read_text("utf-8").splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            name, emoji = line.split("\t")
            entries[name.strip()] = emoji.strip()
        return cls(entries)

    @classmethod
    def bundled(cls, name: str) -> "LabelMap":
        from importlib import resources

        path = resources.files("emojitrans.data").joinpath(f"label_maps/{name}.tsv")
        entries: dict[str, str] = {}
        for line in path.read_text("utf-8").splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            key, emoji = line.split("\t")
            entries[key.strip()] = emoji.strip()
        return cls(entries)


@dataclass
class LabeledDataset:
    """(text, class) records with disjoint train/test index sets."""

    records: list[tuple[str, str]]
    train_ids: tuple[int, ...]
    test_ids: tuple[int, ...]

    def __post_init__(self):
        if set(self.train_ids) & set(self.test_ids):
            raise ValueError("train and test ids overlap")

    @property
    def train(self) -> list[tuple[str, str]]:
        return [self.records[i] for i in self.train_ids]

    @property
    def test(self) -> list[tuple[str, str]]:
        return [self.records[i] for i in self.test_ids]

    @classmethod
    def from_files(cls, train_path: str | Path, test_path: str | Path) -> "LabeledDataset":
        train = load_records(train_path)
        test = load_records(test_path)
        records = train + test
        return cls(
            records,
            tuple(range(len(train))),
            tuple(range(len(train), len(records))),
        )


def load_records(path: str | Path) -> list[tuple[str, str]]:
    """Two-column tab-separated (text, label) records."""
    records = []
    for line in Path(path).read_text("utf-8").splitlines():
        if not line.strip():
            continue
        text, label = line.rsplit("\t", 1)
        records.append((text, label.strip()))
    return records


@dataclass
class FewShotSample:
    per_class: dict[str, list[tuple[str, str]]]
    k: int
    seed: int

    @property
    def records(self) -> list[tuple[str, str]]:
        return [rec for cls_name in sorted(self.per_class) for rec in self.per_class[cls_name]]


@dataclass
class EmojiLabelScorer:
    """score(class, text) = mean over words of log t(label_emoji | word)."""

    label_map: LabelMap
    word_probs: dict[str, dict[str, float]]
    alpha: float

    def score(self, cls_name: str, text: str) -> float:
        if cls_name not in self.label_map:
            raise UnknownClass(cls_name)
        words = tokenize_text(text)
        k = len(self.label_map.classes)
        if not words:
            return math.log(1.0 / k)
        total = 0.0
        for w in words:
            total += math.log(self.word_probs.get(w, {}).get(cls_name, 1.0 / k))
        return total / len(words)

    def scores(self, text: str) -> dict[str, float]:
        return {c: self.score(c, text) for c in self.label_map.classes}


def fit_classifier(
    train_records: list[tuple[str, str]],
    label_map: LabelMap,
    smoothing_alpha: float = 1.0,
) -> EmojiLabelScorer:
    """Estimate t(label_emoji | word) from word/class co-occurrence with
    add-alpha smoothing."""
    if not train_records:
        raise EmptyTrain("no training records")
    classes = label_map.classes
    counts: dict[str, dict[str, int]] = {}
    for text, cls_name in train_records:
        if cls_name not in label_map:
            raise UnknownClass(cls_name)
        for w in tokenize_text(text):
            counts.setdefault(w, {c: 0 for c in classes})
            counts[w][cls_name] += 1
    k = len(classes)
    word_probs = {
        w: {
            c: (row[c] + smoothing_alpha) / (sum(row.values()) + smoothing_alpha * k)
            for c in classes
        }
        for w, row in counts.items()
    }
    return EmojiLabelScorer(label_map, word_probs, smoothing_alpha)


def predict(scorer: EmojiLabelScorer, text: str) -> str:
    """Argmax class; ties break by class-name lexicographic order."""
    scores = scorer.scores(text)
    return min(scores, key=lambda c: (-scores[c], c))


def sample_few_shot(dataset: LabeledDataset, k: int, seed: int) -> FewShotSample:
    """Exactly k train records per class, uniform without replacement."""
    by_class: dict[str, list[tuple[str, str]]] = {}
    for text, cls_name in dataset.train:
        by_class.setdefault(cls_name, []).append((text, cls_name))
    rng = random.Random(seed)
    per_class: dict[str, list[tuple[str, str]]] = {}
    for cls_name in sorted(by_class):
        pool = by_class[cls_name]
        if len(pool) < k:
            raise InsufficientClassSize(cls_name, len(pool), k)
        per_class[cls_name] = sorted(rng.sample(pool, k))
    return FewShotSample(per_class, k, seed)


@dataclass
class ExperimentResult:
    per_run: list[float]
    mean: float


def run_experiment(
    dataset: LabeledDataset,
    label_map: LabelMap,
    mode: str = "full",
    k: int = 10,
    runs: int = 5,
    base_seed: int = 0,
    smoothing_alpha: float = 1.0,
) -> ExperimentResult:
    """Fit on full train or a per-run few-shot resample; report macro-F1."""
    if mode not in ("full", "fewshot"):
        raise ValueError(f"unknown mode {mode!r}")
    classes = label_map.classes
    gold = [label for _, label in dataset.test]
    per_run: list[float] = []
    for r in range(runs):
        if mode == "fewshot":
            sample = sample_few_shot(dataset, k, base_seed + r)
            train = sample.records
        else:
            train = dataset.train
        scorer = fit_classifier(train, label_map, smoothing_alpha)
        preds = [predict(scorer, text) for text, _ in dataset.test]
        per_run.append(macro_f1(preds, gold, classes))
    return ExperimentResult(per_run, sum(per_run) / len(per_run))
