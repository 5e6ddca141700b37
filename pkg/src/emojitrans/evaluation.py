"""Corpus-level BLEU-n, macro-F1, and the pairwise preference harness."""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Sequence


class LengthMismatch(ValueError):
    pass


class EmptyInput(ValueError):
    pass


class EvenVoteCount(ValueError):
    pass


class MissingJudgments(ValueError):
    pass


@dataclass
class BleuReport:
    scores: dict[int, float]  # n -> BLEU-n
    precisions: dict[int, float]  # n -> modified n-gram precision p_n
    brevity_penalty: float
    hyp_len: int
    ref_len: int

    def __getitem__(self, n: int) -> float:
        return self.scores[n]

    @property
    def b1(self) -> float:
        return self.scores[1]

    @property
    def b2(self) -> float:
        return self.scores[2]

    @property
    def b3(self) -> float:
        return self.scores[3]

    @property
    def b4(self) -> float:
        return self.scores[4]


def _ngrams(seq: Sequence[Hashable], n: int) -> Counter:
    return Counter(tuple(seq[i : i + n]) for i in range(len(seq) - n + 1))


def bleu(
    hypotheses: list[Sequence[Hashable]],
    references: list[Sequence[Hashable]],
    max_n: int = 4,
) -> BleuReport:
    """Corpus-level BLEU: clipped n-gram matches are summed over the corpus
    before taking the precision ratio; BP = exp(1 - ref_len/hyp_len) when the
    hypothesis side is shorter. BLEU-n is 0 when any p_k (k <= n) is 0.
    """
    if len(hypotheses) != len(references):
        raise LengthMismatch(f"{len(hypotheses)} hypotheses vs {len(references)} references")
    if not hypotheses:
        raise EmptyInput("need at least one hypothesis/reference pair")

    matches = {n: 0 for n in range(1, max_n + 1)}
    totals = {n: 0 for n in range(1, max_n + 1)}
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, max_n + 1):
            hyp_counts = _ngrams(hyp, n)
            ref_counts = _ngrams(ref, n)
            totals[n] += sum(hyp_counts.values())
            matches[n] += sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())

    if hyp_len == 0 or hyp_len >= ref_len:
        bp = 1.0
    else:
        bp = math.exp(1.0 - ref_len / hyp_len)

    precisions = {n: (matches[n] / totals[n] if totals[n] else 0.0) for n in range(1, max_n + 1)}
    scores: dict[int, float] = {}
    for n in range(1, max_n + 1):
        if any(precisions[k] == 0.0 for k in range(1, n + 1)):
            scores[n] = 0.0
        else:
            log_mean = sum(math.log(precisions[k]) for k in range(1, n + 1)) / n
            scores[n] = bp * math.exp(log_mean)
    return BleuReport(scores, precisions, bp, hyp_len, ref_len)


def macro_f1(predictions: list[str], gold: list[str], classes: list[str]) -> float:
    """Unweighted mean of per-class F1; a class with no predictions and no
    gold occurrences contributes 0."""
    if len(predictions) != len(gold):
        raise LengthMismatch(f"{len(predictions)} predictions vs {len(gold)} gold labels")
    unknown = set(gold) - set(classes)
    if unknown:
        raise ValueError(f"gold labels outside class set: {sorted(unknown)}")
    f1_sum = 0.0
    for c in classes:
        tp = sum(1 for p, g in zip(predictions, gold) if p == c and g == c)
        fp = sum(1 for p, g in zip(predictions, gold) if p == c and g != c)
        fn = sum(1 for p, g in zip(predictions, gold) if p != c and g == c)
        if 2 * tp + fp + fn:
            f1_sum += 2 * tp / (2 * tp + fp + fn)
    return f1_sum / len(classes)


@dataclass(frozen=True)
class PreferenceTask:
    item_id: str
    input_shown: str
    option_a: str
    option_b: str
    a_is_system: bool


@dataclass(frozen=True)
class Judgment:
    item_id: str
    evaluator_id: str
    choice: str  # "A" or "B"


def build_preference_tasks(
    items: list[tuple[str, str, str]], seed: int
) -> list[PreferenceTask]:
    """Blind the (input, system_candidate, reference_candidate) triples.

    Each item's A/B slot assignment is an independent fair coin from a
    seeded RNG; a_is_system records it for later unblinding.
    """
    rng = random.Random(seed)
    tasks = []
    for i, (shown, system, reference) in enumerate(items):
        a_is_system = rng.random() < 0.5
        opt_a, opt_b = (system, reference) if a_is_system else (reference, system)
        tasks.append(PreferenceTask(f"item-{i:04d}", shown, opt_a, opt_b, a_is_system))
    return tasks


@dataclass
class PreferenceSummary:
    winners: dict[str, str]  # item_id -> "system" | "reference"
    system_preference_rate: float


def aggregate_preferences(
    tasks: list[PreferenceTask], judgments: list[Judgment]
) -> PreferenceSummary:
    """Majority vote per item, unblinded via a_is_system."""
    by_item: dict[str, list[Judgment]] = {t.item_id: [] for t in tasks}
    for j in judgments:
        if j.item_id not in by_item:
            raise MissingJudgments(f"judgment for unknown item {j.item_id}")
        by_item[j.item_id].append(j)

    winners: dict[str, str] = {}
    system_wins = 0
    for task in tasks:
        votes = by_item[task.item_id]
        if not votes:
            raise MissingJudgments(f"no judgments for item {task.item_id}")
        if len(votes) % 2 == 0:
            raise EvenVoteCount(f"item {task.item_id} has {len(votes)} judgments")
        a_votes = sum(1 for v in votes if v.choice == "A")
        a_wins = a_votes * 2 > len(votes)
        system_won = a_wins == task.a_is_system
        winners[task.item_id] = "system" if system_won else "reference"
        system_wins += system_won
    return PreferenceSummary(winners, system_wins / len(tasks))


def save_tasks(tasks: list[PreferenceTask], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for t in tasks:
            f.write(json.dumps(t.__dict__, ensure_ascii=False) + "\n")


def load_tasks(path: str | Path) -> list[PreferenceTask]:
    tasks = []
    for line in Path(path).read_text("utf-8").splitlines():
        if line.strip():
            tasks.append(PreferenceTask(**json.loads(line)))
    return tasks


def save_judgments(judgments: list[Judgment], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for j in judgments:
            f.write(json.dumps(j.__dict__, ensure_ascii=False) + "\n")


def load_judgments(path: str | Path) -> list[Judgment]:
    out = []
    for line in Path(path).read_text("utf-8").splitlines():
        if line.strip():
            out.append(Judgment(**json.loads(line)))
    return out
