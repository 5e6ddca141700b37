"""Parallel corpus synthesis, parsing, filtering, persistence, and stats.

The corpus is a list of text/emoji pairs produced by prompting an LLM
provider. A replay provider backed by recorded transcripts makes the whole
pipeline deterministic and offline. Corpus files are UTF-8 JSON lines.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Protocol

from . import emoji_core
from .emoji_core import EmojiToken, EmojiVocabulary

STARTUP_TEMPLATE = (
    "Write some sentences about a kind of {topic} and their pure emoji series "
    "translations in the following format: Text:... Emoji Translation:..."
)


class EmptyTopic(ValueError):
    pass


class EmptyCorpus(ValueError):
    pass


class TooSmall(ValueError):
    pass


class CorpusValidationError(ValueError):
    pass


class RejectReason(Enum):
    NO_EMOJI = "no_emoji"
    EMPTY_TEXT = "empty_text"


class InstanceRejected(ValueError):
    def __init__(self, reason: RejectReason):
        super().__init__(reason.value)
        self.reason = reason


class ProviderError(RuntimeError):
    """Provider failure; carries the prompt that triggered it."""

    def __init__(self, message: str, prompt: str):
        super().__init__(message)
        self.prompt = prompt


class Origin(Enum):
    STARTUP = "startup"
    INSTANCE_CONDITIONED = "instance_conditioned"
    IMPORTED = "imported"


@dataclass(frozen=True)
class ParallelInstance:
    text: str
    emoji: tuple[EmojiToken, ...]
    topic: str
    origin: Origin
    id: str

    @property
    def emoji_str(self) -> str:
        return "".join(t.text for t in self.emoji)


@dataclass
class SynthesisConfig:
    topics: list[str]
    startup_queries_per_topic: int
    conditioned_queries: int
    temperature: float = 1.5
    seed: int = 0
    max_concurrency: int = 1

    def __post_init__(self):
        if self.temperature <= 0:
            raise ValueError("temperature must be > 0")
        if self.startup_queries_per_topic < 0 or self.conditioned_queries < 0:
            raise ValueError("query counts must be >= 0")


@dataclass
class CorpusStats:
    instance_count: int
    emoji_vocab_size: int
    avg_text_length: float
    avg_emoji_length: float
    top_k_emojis: list[tuple[EmojiToken, int]]


class LlmProvider(Protocol):
    def complete(self, prompt: str, temperature: float, seed: int | None = None) -> str: ...


def prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class ReplayProvider:
    """Returns recorded completions; identical (prompt, seed) gives identical output.

    Records carrying a seed are matched exactly on (prompt-hash, seed);
    seedless records for a prompt are picked by seed modulo their count.
    """

    def __init__(self, records: list[tuple[str, int | None, str]]):
        self._by_key: dict[tuple[str, int], str] = {}
        self._by_hash: dict[str, list[str]] = {}
        for h, seed, completion in records:
            if seed is not None:
                self._by_key[(h, seed)] = completion
            else:
                self._by_hash.setdefault(h, []).append(completion)

    @classmethod
    def from_file(cls, path: str | Path) -> "ReplayProvider":
        records = []
        for line in Path(path).read_text("utf-8").splitlines():
            if not line.strip():
                continue
            rec = json.loads(line)
            records.append((rec["prompt_sha256"], rec.get("seed"), rec["completion"]))
        return cls(records)

    def complete(self, prompt: str, temperature: float, seed: int | None = None) -> str:
        h = prompt_hash(prompt)
        exact = self._by_key.get((h, seed or 0))
        if exact is not None:
            return exact
        options = self._by_hash.get(h)
        if not options:
            raise ProviderError("no recorded completion for prompt", prompt)
        return options[(seed or 0) % len(options)]


class RecordingProvider:
    """Wraps a provider, capturing (prompt-hash, seed, completion) transcripts."""

    def __init__(self, inner: LlmProvider):
        self.inner = inner
        self.records: list[dict] = []

    def complete(self, prompt: str, temperature: float, seed: int | None = None) -> str:
        completion = self.inner.complete(prompt, temperature, seed)
        self.records.append(
            {"prompt_sha256": prompt_hash(prompt), "seed": seed, "completion": completion}
        )
        return completion

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for rec in self.records:
                f.write(json.dumps(rec, ensure_ascii=False) + "\n")


def render_startup_prompt(topic: str) -> str:
    if not topic.strip():
        raise EmptyTopic("topic must be non-empty")
    return STARTUP_TEMPLATE.format(topic=topic)


def render_conditioned_prompt(topic: str, exemplar: ParallelInstance) -> str:
    """Two-turn prompt: the startup instruction plus one exemplar pair."""
    user = render_startup_prompt(topic)
    system = f"Text: {exemplar.text} Emoji: {exemplar.emoji_str}"
    return f"User: {user}\nSystem: {system}"


def _instance_id(text: str, emoji_str: str, topic: str) -> str:
    key = f"{text}\t{emoji_str}\t{topic}".encode("utf-8")
    return hashlib.sha256(key).hexdigest()[:16]


def filter_instance(
    text: str,
    raw_emoji_side: str,
    topic: str = "",
    origin: Origin = Origin.IMPORTED,
) -> ParallelInstance:
    """Keep only emoji tokens on the emoji side; reject empty results.

    Raises InstanceRejected for empty text or an emoji side with no emoji
    left after filtering. Idempotent: filtering a surviving instance's own
    emoji string changes nothing.
    """
    text = text.strip()
    if not text:
        raise InstanceRejected(RejectReason.EMPTY_TEXT)
    tokens = tuple(emoji_core.emoji_tokens(raw_emoji_side))
    if not tokens:
        raise InstanceRejected(RejectReason.NO_EMOJI)
    emoji_str = "".join(t.text for t in tokens)
    return ParallelInstance(text, tokens, topic, origin, _instance_id(text, emoji_str, topic))


_PAIR_RE = re.compile(
    r"Text:\s*(?P<text>.*?)\s*Emoji(?:\s+Translation)?:\s*(?P<emoji>.*?)(?=Text:|$)",
    re.IGNORECASE | re.DOTALL,
)


def parse_completion(
    raw: str, topic: str, origin: Origin = Origin.STARTUP
) -> tuple[list[ParallelInstance], int]:
    """Extract all Text/Emoji pairs from a raw completion.

    Returns (instances, skipped) where skipped counts rejected candidates.
    """
    instances: list[ParallelInstance] = []
    skipped = 0
    for m in _PAIR_RE.finditer(raw):
        try:
            instances.append(filter_instance(m.group("text"), m.group("emoji"), topic, origin))
        except InstanceRejected:
            skipped += 1
    return instances, skipped


class Corpus:
    """An ordered, deduplicated list of parallel instances."""

    def __init__(self, instances: list[ParallelInstance] | None = None):
        self.instances: list[ParallelInstance] = []
        self._seen: set[tuple[str, str]] = set()
        for inst in instances or []:
            self.add(inst)

    def add(self, inst: ParallelInstance) -> bool:
        """Append unless an identical (text, emoji) pair exists. True if added."""
        key = (inst.text, inst.emoji_str)
        if key in self._seen:
            return False
        self._seen.add(key)
        self.instances.append(inst)
        return True

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for inst in self.instances:
                f.write(_record_line(inst))

    @classmethod
    def load(cls, path: str | Path) -> "Corpus":
        corpus = cls()
        for n, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
            if not line.strip():
                continue
            rec = json.loads(line)
            inst = _validate_record(rec, n)
            corpus.add(inst)
        return corpus


def _record_line(inst: ParallelInstance) -> str:
    rec = {
        "text": inst.text,
        "emoji": inst.emoji_str,
        "topic": inst.topic,
        "origin": inst.origin.value,
        "id": inst.id,
    }
    return json.dumps(rec, ensure_ascii=False) + "\n"


def _validate_record(rec: dict, lineno: int) -> ParallelInstance:
    try:
        text = rec["text"]
        tokens = tuple(emoji_core.emoji_tokens(rec["emoji"]))
        if not text.strip():
            raise CorpusValidationError(f"line {lineno}: empty text")
        if not tokens:
            raise CorpusValidationError(f"line {lineno}: no emoji tokens")
        if "".join(t.text for t in tokens) != rec["emoji"]:
            raise CorpusValidationError(f"line {lineno}: non-emoji content in emoji field")
        return ParallelInstance(
            text.strip(), tokens, rec.get("topic", ""), Origin(rec["origin"]), rec["id"]
        )
    except KeyError as e:
        raise CorpusValidationError(f"line {lineno}: missing field {e}") from e


def default_topics() -> list[str]:
    text = resources.files("emojitrans.data").joinpath("topics.txt").read_text("utf-8")
    return [t.strip() for t in text.splitlines() if t.strip() and not t.startswith("#")]


def synthesize(
    config: SynthesisConfig, provider: LlmProvider, out_path: str | Path | None = None
) -> Corpus:
    """Two-phase synthesis: per-topic startup queries, then exemplar-conditioned
    queries with exemplars drawn from the growing instance pool.

    Deterministic for a fixed (config, replay provider): per-query seeds are
    consecutive integers starting at config.seed. On provider failure the
    partial corpus is persisted to out_path (when given) before the error
    propagates.
    """
    rng = random.Random(config.seed)
    corpus = Corpus()
    query_seed = config.seed

    def run_query(prompt: str, topic: str, origin: Origin) -> None:
        nonlocal query_seed
        try:
            raw = provider.complete(prompt, config.temperature, seed=query_seed)
        except ProviderError:
            if out_path is not None:
                corpus.save(out_path)
            raise
        finally:
            query_seed += 1
        for inst in parse_completion(raw, topic, origin)[0]:
            corpus.add(inst)

    for topic in config.topics:
        prompt = render_startup_prompt(topic)
        for _ in range(config.startup_queries_per_topic):
            run_query(prompt, topic, Origin.STARTUP)

    for _ in range(config.conditioned_queries):
        if not corpus.instances:
            break  # nothing to condition on
        exemplar = corpus.instances[rng.randrange(len(corpus.instances))]
        prompt = render_conditioned_prompt(exemplar.topic, exemplar)
        run_query(prompt, exemplar.topic, Origin.INSTANCE_CONDITIONED)

    if out_path is not None:
        corpus.save(out_path)
    return corpus


def compute_stats(corpus: Corpus, k: int = 10) -> CorpusStats:
    """Instance count, emoji vocabulary size, average lengths, and top-k emojis."""
    if len(corpus) == 0:
        raise EmptyCorpus("cannot compute stats of an empty corpus")
    vocab = EmojiVocabulary()
    total_words = 0
    total_emojis = 0
    for inst in corpus:
        total_words += len(inst.text.split())
        total_emojis += len(inst.emoji)
        for tok in inst.emoji:
            vocab.add(tok)
    n = len(corpus)
    return CorpusStats(
        instance_count=n,
        emoji_vocab_size=len(vocab),
        avg_text_length=total_words / n,
        avg_emoji_length=total_emojis / n,
        top_k_emojis=vocab.most_common(k),
    )


@dataclass
class SplitAssignment:
    train: tuple[str, ...]
    dev: tuple[str, ...]
    test: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"train": list(self.train), "dev": list(self.dev), "test": list(self.test)}

    @classmethod
    def from_dict(cls, d: dict) -> "SplitAssignment":
        return cls(tuple(d["train"]), tuple(d["dev"]), tuple(d["test"]))


def split(corpus: Corpus, seed: int) -> SplitAssignment:
    """Seeded shuffle then contiguous 8/1/1 partition of instance ids."""
    n = len(corpus)
    if n < 10:
        raise TooSmall(f"need >= 10 instances to split, got {n}")
    ids = [inst.id for inst in corpus]
    random.Random(seed).shuffle(ids)
    n_dev = round(n / 10)
    n_test = round(n / 10)
    n_train = n - n_dev - n_test
    return SplitAssignment(
        train=tuple(ids[:n_train]),
        dev=tuple(ids[n_train : n_train + n_dev]),
        test=tuple(ids[n_train + n_dev :]),
    )


def select(corpus: Corpus, ids: tuple[str, ...]) -> list[ParallelInstance]:
    """Instances for an id subset, in corpus order."""
    wanted = set(ids)
    return [inst for inst in corpus if inst.id in wanted]
