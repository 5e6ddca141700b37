import json
from pathlib import Path

import pytest

from emojitrans.cli import main
from emojitrans.corpus import Corpus, Origin, filter_instance

FIXTURE_PATH = Path(__file__).parent.parent / "src/emojitrans/data/replay_fixture.jsonl"

PAIRS = [
    ("dog", "🐶"),
    ("cat", "🐱"),
    ("dog cat", "🐶🐱"),
    ("sun", "☀️"),
    ("sun dog", "☀️🐶"),
    ("cat sun", "🐱☀️"),
    ("dog sun cat", "🐶☀️🐱"),
    ("sun sun", "☀️☀️"),
    ("cat dog", "🐱🐶"),
    ("dog dog", "🐶🐶"),
]


@pytest.fixture()
def corpus_path(tmp_path):
    corpus = Corpus(
        [filter_instance(t, e, "misc", Origin.IMPORTED) for t, e in PAIRS]
    )
    path = tmp_path / "corpus.jsonl"
    corpus.save(path)
    return path


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out.strip()
    return code, json.loads(out) if out else None


class TestSynthesize:
    def test_replay(self, tmp_path, capsys):
        out = tmp_path / "synth.jsonl"
        topics = tmp_path / "topics.txt"
        topics.write_text("animal\nfood\n", "utf-8")
        code, body = run(capsys, [
            "synthesize", "--transcripts", str(FIXTURE_PATH),
            "--topics-file", str(topics), "--startup-n", "4",
            "--conditioned-n", "4", "--seed", "11", "--out", str(out),
        ])
        assert code == 0
        assert body["instances"] == 8
        assert len(Corpus.load(out)) == 8

    def test_live_provider_fails(self, tmp_path, capsys):
        code = main([
            "synthesize", "--provider", "live", "--out", str(tmp_path / "x.jsonl"),
        ])
        assert code == 1

    def test_missing_transcripts(self, tmp_path, capsys):
        code = main([
            "synthesize", "--transcripts", str(tmp_path / "nope.jsonl"),
            "--out", str(tmp_path / "x.jsonl"),
        ])
        assert code == 1


class TestStatsSplit:
    def test_stats(self, corpus_path, capsys):
        code, body = run(capsys, ["stats", "--corpus", str(corpus_path), "--top-k", "2"])
        assert code == 0
        assert body["instance_count"] == 10
        assert body["emoji_vocab_size"] == 3
        assert len(body["top_k_emojis"]) == 2

    def test_split(self, corpus_path, tmp_path, capsys):
        out = tmp_path / "split.json"
        code, body = run(capsys, [
            "split", "--corpus", str(corpus_path), "--seed", "3", "--out", str(out),
        ])
        assert code == 0
        assert (body["train"], body["dev"], body["test"]) == (8, 1, 1)
        assert out.exists()

    def test_missing_corpus(self, tmp_path, capsys):
        assert main(["stats", "--corpus", str(tmp_path / "nope.jsonl")]) == 1


class TestTrainTranslate:
    def test_train_then_translate(self, corpus_path, tmp_path, capsys):
        model_path = tmp_path / "t2e.bin"
        code, body = run(capsys, [
            "train", "--corpus", str(corpus_path), "--direction", "t2e",
            "--iters", "8", "--out", str(model_path),
        ])
        assert code == 0
        assert body["direction"] == "t2e"
        assert isinstance(body["final_log_likelihood"], float)

        src = tmp_path / "input.txt"
        src.write_text("dog\n\ncat sun\n", "utf-8")
        code = main(["translate", "--model", str(model_path), "--input", str(src)])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "🐶"
        assert lines[1] == ""
        assert "🐱" in lines[2] and "☀️" in lines[2]

    def test_train_respects_split_file(self, corpus_path, tmp_path, capsys):
        split_path = tmp_path / "split.json"
        run(capsys, ["split", "--corpus", str(corpus_path), "--out", str(split_path)])
        code, body = run(capsys, [
            "train", "--corpus", str(corpus_path), "--direction", "e2t",
            "--split-file", str(split_path), "--out", str(tmp_path / "e2t.bin"),
        ])
        assert code == 0

    def test_usage_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["train", "--direction", "bogus"])
        assert err.value.code == 2

    def test_no_command_exit_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 2


class TestEvaluate:
    def test_bleu(self, tmp_path, capsys):
        (tmp_path / "hyp.txt").write_text("🐶🐱\n☀️\n", "utf-8")
        (tmp_path / "ref.txt").write_text("🐶🐱\n☀️\n", "utf-8")
        code, body = run(capsys, [
            "evaluate", "bleu", "--hyp", str(tmp_path / "hyp.txt"),
            "--ref", str(tmp_path / "ref.txt"), "--max-n", "2",
        ])
        assert code == 0
        assert body["bleu"]["1"] == 1.0
        assert body["brevity_penalty"] == 1.0

    def test_prefs(self, tmp_path, capsys):
        from emojitrans.evaluation import (
            Judgment, build_preference_tasks, save_judgments, save_tasks,
        )
        tasks = build_preference_tasks(
            [(f"in{i}", f"sys{i}", f"ref{i}") for i in range(5)], seed=0
        )
        judgments = [
            Judgment(t.item_id, "e0", "A" if t.a_is_system else "B") for t in tasks
        ]
        save_tasks(tasks, tmp_path / "tasks.jsonl")
        save_judgments(judgments, tmp_path / "judgments.jsonl")
        code, body = run(capsys, [
            "evaluate", "prefs", "--tasks", str(tmp_path / "tasks.jsonl"),
            "--judgments", str(tmp_path / "judgments.jsonl"),
        ])
        assert code == 0
        assert body["system_preference_rate"] == 1.0
        assert body["items"] == 5


class TestTransfer:
    def write_dataset(self, tmp_path):
        from emojitrans.synthetic import make_separable_dataset

        dataset = make_separable_dataset(seed=4)
        for name, records in (("train", dataset.train), ("test", dataset.test)):
            lines = [f"{text}\t{cls}" for text, cls in records]
            (tmp_path / f"{name}.tsv").write_text("\n".join(lines) + "\n", "utf-8")
        labels = [f"class{c}\t{chr(0x1F600 + c)}" for c in range(4)]
        (tmp_path / "labels.tsv").write_text("\n".join(labels) + "\n", "utf-8")

    def test_full(self, tmp_path, capsys):
        self.write_dataset(tmp_path)
        code, body = run(capsys, [
            "transfer", "--train", str(tmp_path / "train.tsv"),
            "--test", str(tmp_path / "test.tsv"),
            "--labels", str(tmp_path / "labels.tsv"), "--mode", "full", "--runs", "1",
        ])
        assert code == 0
        assert body["mean_macro_f1"] == 1.0

    def test_fewshot(self, tmp_path, capsys):
        self.write_dataset(tmp_path)
        code, body = run(capsys, [
            "transfer", "--train", str(tmp_path / "train.tsv"),
            "--test", str(tmp_path / "test.tsv"),
            "--labels", str(tmp_path / "labels.tsv"),
            "--mode", "fewshot", "--k", "10", "--runs", "3", "--seed", "1",
        ])
        assert code == 0
        assert len(body["per_run_macro_f1"]) == 3
        assert body["mean_macro_f1"] >= 0.9
