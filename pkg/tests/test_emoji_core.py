import string

import pytest
from hypothesis import given, strategies as st

from emojitrans import emoji_core as ec
from emojitrans.emoji_core import (
    EmojiToken,
    EmptyParts,
    NonEmojiSpan,
    TokenKind,
    decompose,
    is_emoji_scalar,
    recompose,
    segment,
)

FIXTURES = ec.load_sequence_fixtures()
FIXTURE_TOKENS = [tok for tok, _ in FIXTURES]


def test_segment_mixed_text():
    spans = segment("I ❤ 🐱")
    assert spans == [
        NonEmojiSpan("I "),
        EmojiToken.from_str("❤"),
        NonEmojiSpan(" "),
        EmojiToken.from_str("🐱"),
    ]


def test_segment_zwj_family_is_one_token():
    spans = segment("👨‍👩‍👧")
    assert len(spans) == 1
    assert spans[0].kind is TokenKind.ZWJ_COMPOSED


def test_segment_flag_pair():
    spans = segment("\U0001F1EF\U0001F1F5")
    assert len(spans) == 1
    assert spans[0].kind is TokenKind.FLAG_SEQUENCE


def test_unpaired_regional_indicator_is_base():
    spans = segment("\U0001F1EF")
    assert len(spans) == 1
    assert spans[0].kind is TokenKind.BASE


def test_plain_digit_is_not_emoji():
    assert segment("call 911 now") == [NonEmojiSpan("call 911 now")]


def test_keycap_groups():
    spans = segment("5️⃣")
    assert len(spans) == 1 and spans[0].kind is TokenKind.KEYCAP


def test_skin_tone_attaches():
    spans = segment("\U0001F44B\U0001F3FD")
    assert len(spans) == 1 and spans[0].kind is TokenKind.MODIFIED_BASE


def test_decompose_family():
    parts = decompose(EmojiToken.from_str("👨‍👩‍👧"))
    assert [p.text for p in parts] == ["👨", "👩", "👧"]


def test_decompose_identity_on_base():
    tok = EmojiToken.from_str("🐶")
    assert decompose(tok) == [tok]


def test_decompose_profession_keeps_vs16():
    parts = decompose(EmojiToken.from_str("👩‍⚕️"))
    assert [p.text for p in parts] == ["👩", "⚕️"]


def test_recompose_joins_with_zwj():
    tok = recompose([EmojiToken.from_str(s) for s in ("👨", "👩", "👧")])
    assert tok.text == "👨‍👩‍👧"
    assert tok.kind is TokenKind.ZWJ_COMPOSED


def test_recompose_single_is_identity():
    tok = EmojiToken.from_str("🐶")
    assert recompose([tok]) == tok


def test_recompose_empty_raises():
    with pytest.raises(EmptyParts):
        recompose([])


def test_is_emoji_scalar():
    assert is_emoji_scalar(0x1F436)
    assert not is_emoji_scalar(ord("A"))
    assert is_emoji_scalar(0x200D)
    assert is_emoji_scalar(0xFE0F)
    assert is_emoji_scalar(0x1F3FB)


@pytest.mark.parametrize("token,name", FIXTURES, ids=[n for _, n in FIXTURES])
def test_fixture_round_trips(token, name):
    spans = segment(token.text)
    assert spans == [token], f"{name}: expected one token"
    assert recompose(decompose(token)) == token


def test_decompose_never_contains_zwj():
    for token in FIXTURE_TOKENS:
        for part in decompose(token):
            assert ec.ZWJ not in part.codepoints


@given(
    st.lists(
        st.one_of(
            st.sampled_from(FIXTURE_TOKENS).map(lambda t: t.text),
            st.text(alphabet=string.ascii_letters + " .,!", min_size=1, max_size=8),
        ),
        max_size=12,
    )
)
def test_segmentation_lossless(pieces):
    text = "".join(pieces)
    assert "".join(
        s.text for s in segment(text)
    ) == text


@given(st.sampled_from(FIXTURE_TOKENS))
def test_round_trip_property(token):
    assert recompose(decompose(token)) == token


def test_vocabulary_dedup_and_ordering():
    vocab = ec.EmojiVocabulary()
    dog = EmojiToken.from_str("🐶")
    heart = EmojiToken.from_str("❤")
    for _ in range(5):
        vocab.add(dog)
    for _ in range(3):
        vocab.add(heart)
    assert len(vocab) == 2
    assert vocab.most_common(2) == [(dog, 5), (heart, 3)]


def test_vocabulary_tie_break_by_codepoint():
    vocab = ec.EmojiVocabulary()
    a = EmojiToken.from_str("🐶")  # 1F436
    b = EmojiToken.from_str("🐱")  # 1F431
    vocab.add(a)
    vocab.add(b)
    assert vocab.most_common(2) == [(b, 1), (a, 1)]
