#!/usr/bin/env python3
"""Regenerate the bundled replay transcript fixture.

A scripted provider plays the role of the LLM: it returns canned
completions (some clean, some noisy, some duplicated, some rejected by
filtering) chosen deterministically by topic and per-query seed. The
synthesis run is recorded and saved as the replay fixture, so replaying it
with the same config reproduces the corpus bit-exactly.
"""

import json
import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from emojitrans.corpus import (
    Corpus,
    RecordingProvider,
    SynthesisConfig,
    synthesize,
)

COMPLETIONS = {
    "animal": [
        "Text: I love my dog! Emoji Translation: ❤️🐶",
        "Text: The cat sleeps all day Emoji Translation: 🐱😴💤\n"
        "Text: Birds sing in the morning Emoji Translation: 🐦🎶🌅",
        "Text: hello Emoji Translation: none",
        "Text: A horse runs fast Emoji: 🐴💨 plus some stray words",
    ],
    "food": [
        "Text: Pizza night with friends Emoji Translation: 🍕🌃👫",
        "Text: Fresh coffee in the morning Emoji Translation: ☕🌅\n"
        "Text: Fresh coffee in the morning Emoji Translation: ☕🌅",
        "Sure! Text: Pancakes with honey Emoji Translation: 🥞🍯",
        "Text: Sushi for lunch today Emoji Translation: 🍣🥢😋",
    ],
}

TOPIC_RE = re.compile(r"a kind of (.+?) and their")


class ScriptedProvider:
    def complete(self, prompt, temperature, seed=None):
        topic = TOPIC_RE.search(prompt).group(1)
        pool = COMPLETIONS[topic]
        return pool[(seed or 0) % len(pool)]


FIXTURE_CONFIG = SynthesisConfig(
    topics=["animal", "food"],
    startup_queries_per_topic=4,
    conditioned_queries=4,
    temperature=1.5,
    seed=11,
)


def main():
    out = Path(__file__).resolve().parent.parent / "src/emojitrans/data/replay_fixture.jsonl"
    recorder = RecordingProvider(ScriptedProvider())
    corpus = synthesize(FIXTURE_CONFIG, recorder)
    recorder.save(out)
    print(f"wrote {len(recorder.records)} transcript records to {out}")
    print(f"surviving corpus instances: {len(corpus)}")
    for inst in corpus:
        print(json.dumps({"text": inst.text, "emoji": inst.emoji_str, "origin": inst.origin.value},
                         ensure_ascii=False))


if __name__ == "__main__":
    main()
