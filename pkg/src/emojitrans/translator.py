"""Bidirectional statistical text-emoji translator.

A lexical translation table t(target|source) is trained by EM over word
alignments (with a NULL source token absorbing unaligned targets), combined
with a target-side add-alpha n-gram LM, and decoded by a monotone beam
search. Both directions share the same code path with swapped sides.
"""

from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum

from . import emoji_core
from .corpus import ParallelInstance

NULL_TOKEN = "<NULL>"
BOS = "<s>"
EOS = "</s>"

_WORD_RE = re.compile(r"[a-z0-9']+")


class Direction(Enum):
    TEXT_TO_EMOJI = "t2e"
    EMOJI_TO_TEXT = "e2t"


class EmptySplit(ValueError):
    pass


class NonFiniteLikelihood(RuntimeError):
    pass


class UntrainedModel(ValueError):
    pass


class DirectionMismatch(ValueError):
    pass


def tokenize_text(text: str) -> list[str]:
    """Lowercase word tokens; punctuation is dropped."""
    return _WORD_RE.findall(text.lower())


def tokenize_emoji(tokens: tuple[emoji_core.EmojiToken, ...]) -> list[str]:
    """Emoji-side tokens: composed emojis split into constituents with the
    U+200D joiner kept as its own token."""
    out: list[str] = []
    for tok in tokens:
        parts = emoji_core.decompose(tok)
        for k, part in enumerate(parts):
            if k:
                out.append(emoji_core.ZWJ_CHAR)
            out.append(part.text)
    return out


def detokenize_emoji(tokens: list[str]) -> str:
    """Rejoin constituent/joiner token streams into composed emoji text."""
    return "".join(tokens)


def instance_tokens(inst: ParallelInstance, direction: Direction) -> tuple[list[str], list[str]]:
    """(source_tokens, target_tokens) for one instance under a direction."""
    words = tokenize_text(inst.text)
    emojis = tokenize_emoji(inst.emoji)
    if direction is Direction.TEXT_TO_EMOJI:
        return words, emojis
    return emojis, words


@dataclass
class Lexicon:
    """Sparse conditional table t(target | source), incl. the NULL source."""

    direction: Direction
    probs: dict[str, dict[str, float]] = field(default_factory=dict)
    log_likelihoods: list[float] = field(default_factory=list)

    @property
    def source_vocab(self) -> set[str]:
        return set(self.probs)

    @property
    def target_vocab(self) -> set[str]:
        vocab: set[str] = set()
        for row in self.probs.values():
            vocab.update(row)
        return vocab

    def prob(self, target: str, source: str) -> float:
        return self.probs.get(source, {}).get(target, 0.0)

    def candidates(self, source: str, threshold: float, top: int = 8) -> list[tuple[str, float]]:
        """Targets with t(e|w) >= threshold, best first, ties by token order."""
        row = self.probs.get(source, {})
        ranked = sorted(
            ((e, p) for e, p in row.items() if p >= threshold),
            key=lambda ep: (-ep[1], ep[0]),
        )
        return ranked[:top]


def _pairs(corpus_split: list[ParallelInstance], direction: Direction):
    pairs = [instance_tokens(inst, direction) for inst in corpus_split]
    return [(src, tgt) for src, tgt in pairs if src and tgt]


def _log_likelihood(pairs, probs) -> float:
    """Corpus log-likelihood under the uniform-alignment lexical model."""
    ll = 0.0
    for src, tgt in pairs:
        sources = [NULL_TOKEN] + src
        log_len = math.log(len(sources))
        for f in tgt:
            denom = sum(probs[e].get(f, 0.0) for e in sources)
            if denom <= 0 or not math.isfinite(denom):
                raise NonFiniteLikelihood(f"zero/non-finite token probability for {f!r}")
            ll += math.log(denom) - log_len
    if not math.isfinite(ll):
        raise NonFiniteLikelihood("corpus log-likelihood is non-finite")
    return ll


def train_em(
    corpus_split: list[ParallelInstance],
    direction: Direction,
    iterations: int = 10,
    init_seed: int = 0,
) -> Lexicon:
    """Estimate t(target|source) by EM over alignments.

    Initialization is uniform over co-occurring pairs (init_seed is accepted
    for interface stability but unused). The per-iteration corpus
    log-likelihood is recorded on the returned lexicon and is non-decreasing.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    pairs = _pairs(corpus_split, direction)
    if not pairs:
        raise EmptySplit("no usable instances in split")

    cooc: dict[str, set[str]] = defaultdict(set)
    for src, tgt in pairs:
        for e in [NULL_TOKEN] + src:
            cooc[e].update(tgt)
    probs: dict[str, dict[str, float]] = {
        e: {f: 1.0 / len(fs) for f in fs} for e, fs in cooc.items()
    }

    lexicon = Lexicon(direction=direction)
    for _ in range(iterations):
        counts: dict[str, dict[str, float]] = defaultdict(lambda: defaultdict(float))
        totals: dict[str, float] = defaultdict(float)
        for src, tgt in pairs:
            sources = [NULL_TOKEN] + src
            for f in tgt:
                denom = sum(probs[e].get(f, 0.0) for e in sources)
                if denom <= 0:
                    raise NonFiniteLikelihood(f"zero expected count denominator for {f!r}")
                for e in sources:
                    p = probs[e].get(f, 0.0)
                    if p > 0:
                        gamma = p / denom
                        counts[e][f] += gamma
                        totals[e] += gamma
        for e, row in counts.items():
            total = totals[e]
            probs[e] = {f: c / total for f, c in row.items()}
        lexicon.log_likelihoods.append(_log_likelihood(pairs, probs))

    lexicon.probs = probs
    return lexicon


@dataclass
class NgramLM:
    """Add-alpha smoothed n-gram LM over target tokens (order 1 or 2)."""

    order: int
    alpha: float
    vocab: set[str] = field(default_factory=set)
    counts: dict[tuple[str, ...], int] = field(default_factory=dict)
    context_totals: dict[tuple[str, ...], int] = field(default_factory=dict)

    @property
    def vocab_size(self) -> int:
        # EOS is a predictable event only when boundaries are modeled
        return len(self.vocab) + (1 if self.order == 2 else 0)

    def prob(self, token: str, context: tuple[str, ...] = ()) -> float:
        context = context[-(self.order - 1) :] if self.order > 1 else ()
        num = self.counts.get(context + (token,), 0) + self.alpha
        den = self.context_totals.get(context, 0) + self.alpha * self.vocab_size
        return num / den

    def logprob(self, token: str, context: tuple[str, ...] = ()) -> float:
        return math.log(self.prob(token, context))


def train_lm(
    corpus_split: list[ParallelInstance],
    direction: Direction,
    order: int = 2,
    alpha: float = 0.1,
) -> NgramLM:
    """Count target-side n-grams with sentence-boundary markers."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    pairs = _pairs(corpus_split, direction)
    if not pairs:
        raise EmptySplit("no usable instances in split")

    lm = NgramLM(order=order, alpha=alpha)
    counts: dict[tuple[str, ...], int] = defaultdict(int)
    totals: dict[tuple[str, ...], int] = defaultdict(int)
    for _, tgt in pairs:
        lm.vocab.update(tgt)
        stream = tgt + [EOS] if order == 2 else tgt
        prev = BOS
        for tok in stream:
            if order == 2:
                counts[(prev, tok)] += 1
                totals[(prev,)] += 1
            else:
                counts[(tok,)] += 1
                totals[()] += 1
            prev = tok
    lm.counts = dict(counts)
    lm.context_totals = dict(totals)
    return lm


@dataclass
class DecodeConfig:
    beam_size: int = 4
    max_length: int = 32
    lexical_threshold: float = 0.2
    lm_weight: float = 0.3
    candidates_per_source: int = 8

    def __post_init__(self):
        if self.beam_size < 1 or self.max_length < 1:
            raise ValueError("beam_size and max_length must be >= 1")
        if not 0.0 <= self.lexical_threshold <= 1.0:
            raise ValueError("lexical_threshold must be in [0,1]")
        if not 0.0 <= self.lm_weight <= 1.0:
            raise ValueError("lm_weight must be in [0,1]")


@dataclass(frozen=True)
class Hypothesis:
    tokens: tuple[str, ...]
    log_score: float


@dataclass
class TranslationModel:
    direction: Direction
    lexicon: Lexicon
    lm: NgramLM
    config: DecodeConfig = field(default_factory=DecodeConfig)
    model_id: str = "unnamed"

    def __post_init__(self):
        if self.lexicon.direction is not self.direction:
            raise DirectionMismatch(
                f"lexicon trained for {self.lexicon.direction.value}, "
                f"model declares {self.direction.value}"
            )


_MIN_SKIP_PROB = 1e-3


def _skip_logprob(lexicon: Lexicon, source: str, config: DecodeConfig) -> float:
    """Cost of aligning a source token to nothing.

    Skippable mass = lexical mass below the emission threshold (treated as
    NULL-aligned) plus, for each emittable candidate, the share of its
    probability that the NULL row covers anyway (NULL would generate it).
    """
    null_row = lexicon.probs.get(NULL_TOKEN, {})
    skippable = 1.0
    for e, p in lexicon.candidates(source, config.lexical_threshold,
                                   config.candidates_per_source):
        skippable -= max(0.0, p - null_row.get(e, 0.0))
    return math.log(min(1.0, max(_MIN_SKIP_PROB, skippable)))


def _decode(model: TranslationModel, source_tokens: list[str], beam_size: int) -> Hypothesis:
    lexicon, lm, config = model.lexicon, model.lm, model.config
    beam: list[Hypothesis] = [Hypothesis((), 0.0)]
    for w in source_tokens:
        emits = lexicon.candidates(w, config.lexical_threshold, config.candidates_per_source)
        skip = (1.0 - config.lm_weight) * _skip_logprob(lexicon, w, config)
        extended: list[Hypothesis] = []
        for hyp in beam:
            extended.append(Hypothesis(hyp.tokens, hyp.log_score + skip))
            if len(hyp.tokens) >= config.max_length:
                continue
            context = hyp.tokens[-1:] if hyp.tokens else (BOS,)
            for tok, p in emits:
                step = config.lm_weight * lm.logprob(tok, context) + (
                    1.0 - config.lm_weight
                ) * math.log(p)
                extended.append(Hypothesis(hyp.tokens + (tok,), hyp.log_score + step))
        extended.sort(key=lambda h: (-h.log_score, h.tokens))
        beam = extended[:beam_size]
    if lm.order == 2:
        beam = [
            Hypothesis(
                h.tokens,
                h.log_score
                + config.lm_weight * lm.logprob(EOS, h.tokens[-1:] if h.tokens else (BOS,)),
            )
            for h in beam
        ]
    return min(beam, key=lambda h: (-h.log_score, h.tokens))


def translate(model: TranslationModel, source_tokens: list[str]) -> Hypothesis:
    """Monotone beam search over emit-or-skip decisions per source token.

    Deterministic: ties break by target-token order. The greedy (beam=1)
    result is kept as an incumbent, so widening the beam never returns a
    worse-scoring hypothesis.
    """
    if not model.lexicon.probs:
        raise UntrainedModel("lexicon is empty")
    best = _decode(model, source_tokens, model.config.beam_size)
    if model.config.beam_size > 1:
        greedy = _decode(model, source_tokens, 1)
        best = min((best, greedy), key=lambda h: (-h.log_score, h.tokens))
    return best


def translate_string(model: TranslationModel, source: str) -> tuple[str, Hypothesis]:
    """Translate raw input text (or emoji string) to output text.

    For text-to-emoji the output token stream is recomposed into composed
    emoji; for emoji-to-text the words are space-joined.
    """
    if model.direction is Direction.TEXT_TO_EMOJI:
        hyp = translate(model, tokenize_text(source))
        return detokenize_emoji(list(hyp.tokens)), hyp
    tokens = tokenize_emoji(tuple(emoji_core.emoji_tokens(source)))
    hyp = translate(model, tokens)
    return " ".join(hyp.tokens), hyp


def translate_string_match(dictionary: dict[str, str], text: str) -> list[str]:
    """Baseline: per-word exact dictionary lookup, no context modeling."""
    out = []
    for word in tokenize_text(text):
        if word in dictionary:
            out.append(dictionary[word])
    return out


def load_keyword_dictionary(path=None) -> dict[str, str]:
    """The bundled (or a user-supplied) word->emoji dictionary."""
    if path is None:
        from importlib import resources

        text = resources.files("emojitrans.data").joinpath("keyword_dict.tsv").read_text("utf-8")
    else:
        from pathlib import Path

        text = Path(path).read_text("utf-8")
    table: dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        word, emoji = line.split("\t")
        table[word.strip().lower()] = emoji.strip()
    return table
