"""Binary model persistence: magic, version, checksum, JSON payload.

Round-trips are bit-exact: probabilities serialize via JSON's shortest
float repr, which Python parses back to the identical double.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .translator import DecodeConfig, Direction, Lexicon, NgramLM, TranslationModel

MAGIC = b"EMTM"
FORMAT_VERSION = 1


class CorruptFile(RuntimeError):
    pass


class VersionMismatch(RuntimeError):
    pass


def _ngram_key(key: tuple[str, ...]) -> str:
    return "\x1f".join(key)


def _parse_ngram_key(key: str) -> tuple[str, ...]:
    return tuple(key.split("\x1f")) if key else ()


def save_model(model: TranslationModel, path: str | Path) -> None:
    payload = {
        "direction": model.direction.value,
        "model_id": model.model_id,
        "lexicon": {
            "probs": model.lexicon.probs,
            "log_likelihoods": model.lexicon.log_likelihoods,
        },
        "lm": {
            "order": model.lm.order,
            "alpha": model.lm.alpha,
            "vocab": sorted(model.lm.vocab),
            "counts": {_ngram_key(k): v for k, v in model.lm.counts.items()},
            "context_totals": {_ngram_key(k): v for k, v in model.lm.context_totals.items()},
        },
        "config": {
            "beam_size": model.config.beam_size,
            "max_length": model.config.max_length,
            "lexical_threshold": model.config.lexical_threshold,
            "lm_weight": model.config.lm_weight,
            "candidates_per_source": model.config.candidates_per_source,
        },
    }
    body = json.dumps(payload, ensure_ascii=False, sort_keys=True).encode("utf-8")
    digest = hashlib.sha256(body).digest()
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(bytes([FORMAT_VERSION]))
        f.write(digest)
        f.write(body)


def load_model(path: str | Path) -> TranslationModel:
    blob = Path(path).read_bytes()
    if len(blob) < len(MAGIC) + 1 + 32 or blob[: len(MAGIC)] != MAGIC:
        raise CorruptFile(f"{path}: not a model file (bad magic)")
    version = blob[len(MAGIC)]
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"{path}: format version {version}, expected {FORMAT_VERSION}")
    digest = blob[len(MAGIC) + 1 : len(MAGIC) + 33]
    body = blob[len(MAGIC) + 33 :]
    if hashlib.sha256(body).digest() != digest:
        raise CorruptFile(f"{path}: checksum mismatch")
    payload = json.loads(body.decode("utf-8"))

    direction = Direction(payload["direction"])
    lexicon = Lexicon(
        direction=direction,
        probs=payload["lexicon"]["probs"],
        log_likelihoods=payload["lexicon"]["log_likelihoods"],
    )
    lm_data = payload["lm"]
    lm = NgramLM(
        order=lm_data["order"],
        alpha=lm_data["alpha"],
        vocab=set(lm_data["vocab"]),
        counts={_parse_ngram_key(k): v for k, v in lm_data["counts"].items()},
        context_totals={_parse_ngram_key(k): v for k, v in lm_data["context_totals"].items()},
    )
    config = DecodeConfig(**payload["config"])
    return TranslationModel(
        direction=direction,
        lexicon=lexicon,
        lm=lm,
        config=config,
        model_id=payload["model_id"],
    )
