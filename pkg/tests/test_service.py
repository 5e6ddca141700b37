import pytest
from fastapi.testclient import TestClient

from emojitrans.corpus import Origin, filter_instance
from emojitrans.model_io import save_model
from emojitrans.service import ModelRegistry, build_registry, create_app
from emojitrans.transfer import LabelMap
from emojitrans.translator import (
    DecodeConfig,
    Direction,
    TranslationModel,
    train_em,
    train_lm,
)

PAIRS = [
    ("dog", "🐶"),
    ("cat", "🐱"),
    ("dog cat", "🐶🐱"),
    ("sun", "☀️"),
    ("sun dog", "☀️🐶"),
]


def make_model(direction):
    instances = [filter_instance(t, e, "misc", Origin.IMPORTED) for t, e in PAIRS]
    lexicon = train_em(instances, direction, iterations=8)
    lm = train_lm(instances, direction, order=2, alpha=0.1)
    return TranslationModel(
        direction=direction,
        lexicon=lexicon,
        lm=lm,
        config=DecodeConfig(),
        model_id=f"{direction.value}-test",
    )


@pytest.fixture(scope="module")
def registry():
    return ModelRegistry(
        t2e=make_model(Direction.TEXT_TO_EMOJI),
        e2t=make_model(Direction.EMOJI_TO_TEXT),
        label_maps={"pets": LabelMap({"dog": "🐶", "cat": "🐱"})},
    )


@pytest.fixture(scope="module")
def client(registry):
    return TestClient(create_app(registry))


class TestHealth:
    def test_ok(self, client):
        resp = client.get("/api/health")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["models"] == {"t2e": "t2e-test", "e2t": "e2t-test"}
        assert body["stats"]["t2e_source_vocab"] > 0
        assert body["label_maps"] == ["pets"]

    def test_not_ready(self):
        empty = TestClient(create_app(ModelRegistry()))
        resp = empty.get("/api/health")
        assert resp.status_code == 503
        assert resp.json()["error"]["code"] == "models_loading"


class TestTranslate:
    def test_t2e(self, client):
        resp = client.post("/api/translate", json={"text": "the dog runs", "direction": "t2e"})
        assert resp.status_code == 200
        body = resp.json()
        assert "🐶" in body["output"]
        assert body["tokens"] and body["model_id"] == "t2e-test"
        assert isinstance(body["log_score"], float)

    def test_e2t(self, client):
        resp = client.post("/api/translate", json={"text": "🐶", "direction": "e2t"})
        assert resp.status_code == 200
        body = resp.json()
        assert "dog" in body["output"].split()
        assert body["tokens"] == body["output"].split()

    def test_bad_direction(self, client):
        resp = client.post("/api/translate", json={"text": "hi", "direction": "sideways"})
        assert resp.status_code == 400
        assert resp.json()["error"]["code"] == "bad_direction"

    def test_missing_direction(self, client):
        resp = client.post("/api/translate", json={"text": "hi"})
        assert resp.status_code == 400

    def test_empty_input(self, client):
        resp = client.post("/api/translate", json={"text": "   ", "direction": "t2e"})
        assert resp.status_code == 422
        assert resp.json()["error"]["code"] == "empty_input"

    def test_bad_json(self, client):
        resp = client.post(
            "/api/translate", content=b"not json",
            headers={"content-type": "application/json"},
        )
        assert resp.status_code == 400
        assert resp.json()["error"]["code"] == "bad_json"

    def test_non_string_text(self, client):
        resp = client.post("/api/translate", json={"text": 7, "direction": "t2e"})
        assert resp.status_code == 400
        assert resp.json()["error"]["code"] == "bad_request"

    def test_not_ready(self):
        empty = TestClient(create_app(ModelRegistry()))
        resp = empty.post("/api/translate", json={"text": "hi", "direction": "t2e"})
        assert resp.status_code == 503


class TestClassify:
    def test_basic(self, client):
        resp = client.post(
            "/api/classify", json={"text": "the dog runs", "labelmap_id": "pets"}
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["class"] == "dog"
        assert set(body["scores"]) == {"dog", "cat"}
        assert body["scores"]["dog"] > body["scores"]["cat"]

    def test_unknown_labelmap(self, client):
        resp = client.post("/api/classify", json={"text": "hi", "labelmap_id": "nope"})
        assert resp.status_code == 400
        assert resp.json()["error"]["code"] == "unknown_labelmap"

    def test_empty_input(self, client):
        resp = client.post("/api/classify", json={"text": "", "labelmap_id": "pets"})
        assert resp.status_code == 422


class TestRegistryBuild:
    def test_round_trip_through_files(self, tmp_path):
        t2e = make_model(Direction.TEXT_TO_EMOJI)
        e2t = make_model(Direction.EMOJI_TO_TEXT)
        save_model(t2e, tmp_path / "t2e.bin")
        save_model(e2t, tmp_path / "e2t.bin")
        (tmp_path / "pets.tsv").write_text("dog\t🐶\ncat\t🐱\n", "utf-8")
        registry = build_registry(
            tmp_path / "t2e.bin", tmp_path / "e2t.bin", tmp_path / "pets.tsv"
        )
        assert registry.ready
        assert list(registry.label_maps) == ["pets"]
        client = TestClient(create_app(registry))
        resp = client.post("/api/translate", json={"text": "the dog runs", "direction": "t2e"})
        assert resp.status_code == 200

    def test_direction_mismatch_rejected(self, tmp_path):
        e2t = make_model(Direction.EMOJI_TO_TEXT)
        save_model(e2t, tmp_path / "e2t.bin")
        with pytest.raises(ValueError):
            build_registry(tmp_path / "e2t.bin", tmp_path / "e2t.bin")

    def test_static_dir_mounted(self, registry, tmp_path):
        (tmp_path / "index.html").write_text("<h1>webapp</h1>", "utf-8")
        client = TestClient(create_app(registry, static_dir=tmp_path))
        resp = client.get("/")
        assert resp.status_code == 200
        assert "webapp" in resp.text
        # API routes still take precedence
        assert client.get("/api/health").status_code == 200
