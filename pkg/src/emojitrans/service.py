"""HTTP API exposing translation and classification over loaded models.

Models are loaded once and never mutated while serving, so request
handling is freely concurrent. Every error response carries a
machine-readable ``{"error": {"code", "message"}}`` body.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import emoji_core
from .transfer import LabelMap
from .translator import Direction, TranslationModel, tokenize_text, translate_string


@dataclass
class ModelRegistry:
    t2e: TranslationModel | None = None
    e2t: TranslationModel | None = None
    label_maps: dict[str, LabelMap] | None = None

    @property
    def ready(self) -> bool:
        return self.t2e is not None and self.e2t is not None

    def for_direction(self, direction: str) -> TranslationModel | None:
        return self.t2e if direction == "t2e" else self.e2t


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


def create_app(registry: ModelRegistry, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="emojitrans")

    @app.get("/api/health")
    def health():
        if not registry.ready:
            return _error(503, "models_loading", "translation models are not loaded yet")
        return {
            "status": "ok",
            "models": {
                "t2e": registry.t2e.model_id,
                "e2t": registry.e2t.model_id,
            },
            "stats": {
                "t2e_source_vocab": len(registry.t2e.lexicon.probs),
                "e2t_source_vocab": len(registry.e2t.lexicon.probs),
            },
            "label_maps": sorted(registry.label_maps or {}),
        }

    @app.post("/api/translate")
    async def translate_endpoint(request: Request):
        if not registry.ready:
            return _error(503, "models_loading", "translation models are not loaded yet")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "bad_json", "request body is not valid JSON")
        if not isinstance(body, dict) or not isinstance(body.get("text"), str):
            return _error(400, "bad_request", "body must be {text: string, direction: t2e|e2t}")
        direction = body.get("direction")
        if direction not in ("t2e", "e2t"):
            return _error(400, "bad_direction", f"unknown direction {direction!r}")
        text = body["text"]
        if not text.strip():
            return _error(422, "empty_input", "text must be non-empty")
        model = registry.for_direction(direction)
        output, hyp = translate_string(model, text)
        if direction == "t2e":
            tokens = [t.text for t in emoji_core.emoji_tokens(output)]
        else:
            tokens = output.split()
        return {
            "output": output,
            "tokens": tokens,
            "log_score": hyp.log_score,
            "model_id": model.model_id,
        }

    @app.post("/api/classify")
    async def classify_endpoint(request: Request):
        if not registry.ready:
            return _error(503, "models_loading", "translation models are not loaded yet")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "bad_json", "request body is not valid JSON")
        if not isinstance(body, dict) or not isinstance(body.get("text"), str):
            return _error(400, "bad_request", "body must be {text: string, labelmap_id: string}")
        labelmap_id = body.get("labelmap_id")
        label_maps = registry.label_maps or {}
        if labelmap_id not in label_maps:
            return _error(400, "unknown_labelmap", f"unknown labelmap_id {labelmap_id!r}")
        text = body["text"]
        if not text.strip():
            return _error(422, "empty_input", "text must be non-empty")
        label_map = label_maps[labelmap_id]
        scores = _classify_scores(registry.t2e, label_map, text)
        best = min(scores, key=lambda c: (-scores[c], c))
        return {"class": best, "scores": scores}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="webapp")

    return app


_SCORE_FLOOR = 1e-6


def _classify_scores(model: TranslationModel, label_map: LabelMap, text: str) -> dict[str, float]:
    """Score each class by the t2e lexicon's evidence for its label emoji."""
    words = tokenize_text(text)
    scores: dict[str, float] = {}
    for cls_name in label_map.classes:
        emoji = label_map[cls_name]
        if not words:
            scores[cls_name] = math.log(_SCORE_FLOOR)
            continue
        total = 0.0
        for w in words:
            total += math.log(max(_SCORE_FLOOR, model.lexicon.prob(emoji, w)))
        scores[cls_name] = total / len(words)
    return scores


def build_registry(
    t2e_path: str | Path,
    e2t_path: str | Path,
    labelmap_path: str | Path | None = None,
) -> ModelRegistry:
    from .model_io import load_model

    t2e = load_model(t2e_path)
    e2t = load_model(e2t_path)
    if t2e.direction is not Direction.TEXT_TO_EMOJI:
        raise ValueError(f"{t2e_path}: not a t2e model")
    if e2t.direction is not Direction.EMOJI_TO_TEXT:
        raise ValueError(f"{e2t_path}: not an e2t model")
    label_maps = {}
    if labelmap_path is not None:
        label_maps[Path(labelmap_path).stem] = LabelMap.from_file(labelmap_path)
    return ModelRegistry(t2e=t2e, e2t=e2t, label_maps=label_maps)


def serve(
    registry: ModelRegistry,
    bind_address: str = "127.0.0.1:8000",
    static_dir: str | Path | None = None,
) -> None:
    """Run the API server; the PORT environment variable overrides the port."""
    import uvicorn

    host, _, port_str = bind_address.partition(":")
    port = int(os.environ.get("PORT", port_str or "8000"))
    uvicorn.run(create_app(registry, static_dir=static_dir), host=host or "127.0.0.1", port=port)
