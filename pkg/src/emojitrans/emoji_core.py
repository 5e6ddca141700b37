"""Unicode-correct emoji identification, segmentation, and (de)composition.

All decisions about what counts as an emoji scalar come from the vendored
``data/emoji-data.txt`` ranges plus a small set of structural scalars (ZWJ,
variation selector, keycap mark, skin-tone modifiers, regional indicators).
Everything here is a pure function over immutable tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources

ZWJ = 0x200D
VS16 = 0xFE0F
KEYCAP_MARK = 0x20E3
SKIN_TONE_RANGE = (0x1F3FB, 0x1F3FF)
REGIONAL_RANGE = (0x1F1E6, 0x1F1FF)
TAG_RANGE = (0xE0020, 0xE007F)
KEYCAP_BASES = frozenset(map(ord, "0123456789#*"))

ZWJ_CHAR = chr(ZWJ)


class EmptyParts(ValueError):
    """recompose() was called with no parts."""


class TokenKind(Enum):
    BASE = "base"
    ZWJ_COMPOSED = "zwj_composed"
    FLAG_SEQUENCE = "flag_sequence"
    KEYCAP = "keycap"
    MODIFIED_BASE = "modified_base"


def _load_emoji_scalars() -> frozenset[int]:
    scalars: set[int] = set()
    text = resources.files("emojitrans.data").joinpath("emoji-data.txt").read_text("utf-8")
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if ".." in line:
            lo, hi = line.split("..")
            scalars.update(range(int(lo, 16), int(hi, 16) + 1))
        else:
            scalars.add(int(line, 16))
    return frozenset(scalars)


_EMOJI_SCALARS = _load_emoji_scalars()

_KEYCAP_RE = re.compile("[0-9#*]\\ufe0f?\\u20e3")


def is_emoji_scalar(cp: int) -> bool:
    """True if cp has the vendored Emoji property or is a structural scalar."""
    if cp in _EMOJI_SCALARS:
        return True
    if cp in (ZWJ, VS16, KEYCAP_MARK):
        return True
    if SKIN_TONE_RANGE[0] <= cp <= SKIN_TONE_RANGE[1]:
        return True
    if REGIONAL_RANGE[0] <= cp <= REGIONAL_RANGE[1]:
        return True
    if TAG_RANGE[0] <= cp <= TAG_RANGE[1]:
        return True
    return False


def _is_regional(cp: int) -> bool:
    return REGIONAL_RANGE[0] <= cp <= REGIONAL_RANGE[1]


def _is_skin_tone(cp: int) -> bool:
    return SKIN_TONE_RANGE[0] <= cp <= SKIN_TONE_RANGE[1]


def classify(codepoints: tuple[int, ...]) -> TokenKind:
    """Structural kind of a codepoint sequence, per the token invariants."""
    if ZWJ in codepoints:
        return TokenKind.ZWJ_COMPOSED
    if len(codepoints) == 2 and all(_is_regional(cp) for cp in codepoints):
        return TokenKind.FLAG_SEQUENCE
    if _KEYCAP_RE.fullmatch("".join(map(chr, codepoints))):
        return TokenKind.KEYCAP
    if any(_is_skin_tone(cp) for cp in codepoints):
        return TokenKind.MODIFIED_BASE
    return TokenKind.BASE


@dataclass(frozen=True)
class EmojiToken:
    """One logical emoji: a codepoint sequence plus its structural kind."""

    codepoints: tuple[int, ...]
    kind: TokenKind

    def __post_init__(self):
        if not self.codepoints:
            raise ValueError("EmojiToken needs at least one codepoint")

    @classmethod
    def from_str(cls, s: str) -> "EmojiToken":
        cps = tuple(ord(c) for c in s)
        return cls(cps, classify(cps))

    @property
    def text(self) -> str:
        return "".join(map(chr, self.codepoints))

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class NonEmojiSpan:
    """A run of non-emoji text, passed through segmentation untouched."""

    text: str


Span = EmojiToken | NonEmojiSpan


def _consume_element(text: str, i: int) -> int:
    """Consume one emoji element (base + attached VS16/skin/tags) at i.

    Returns the exclusive end index. Assumes text[i] is a valid base.
    """
    n = len(text)
    base = ord(text[i])
    j = i + 1
    while j < n:
        cp = ord(text[j])
        if cp == VS16 or _is_skin_tone(cp):
            j += 1
        elif base == 0x1F3F4 and TAG_RANGE[0] <= cp <= TAG_RANGE[1]:
            # tag sequences (subdivision flags) attach to the black-flag base
            j += 1
        else:
            break
    return j


def _match_emoji(text: str, i: int) -> int | None:
    """Try to match one emoji token starting at i; return exclusive end."""
    n = len(text)
    cp = ord(text[i])

    if cp in KEYCAP_BASES:
        j = i + 1
        if j < n and ord(text[j]) == VS16:
            j += 1
        if j < n and ord(text[j]) == KEYCAP_MARK:
            return j + 1
        return None

    if _is_regional(cp):
        if i + 1 < n and _is_regional(ord(text[i + 1])):
            return i + 2
        return i + 1  # unpaired regional indicator: a Base token, not an error

    if cp not in _EMOJI_SCALARS:
        return None

    j = _consume_element(text, i)
    # extend across ZWJ joins (maximal munch: a joined sequence is one token)
    while (
        j + 1 < n
        and ord(text[j]) == ZWJ
        and (ord(text[j + 1]) in _EMOJI_SCALARS or _is_regional(ord(text[j + 1])))
    ):
        j = _consume_element(text, j + 1)
    return j


def segment(text: str) -> list[Span]:
    """Split text into EmojiTokens and NonEmojiSpans, losslessly.

    Concatenating the output spans in order reproduces the input exactly.
    """
    spans: list[Span] = []
    plain_start = 0
    i = 0
    n = len(text)
    while i < n:
        end = _match_emoji(text, i)
        if end is None:
            i += 1
            continue
        if plain_start < i:
            spans.append(NonEmojiSpan(text[plain_start:i]))
        spans.append(EmojiToken.from_str(text[i:end]))
        i = end
        plain_start = i
    if plain_start < n:
        spans.append(NonEmojiSpan(text[plain_start:]))
    return spans


def emoji_tokens(text: str) -> list[EmojiToken]:
    """All emoji tokens in text, non-emoji content discarded."""
    return [s for s in segment(text) if isinstance(s, EmojiToken)]


def decompose(token: EmojiToken) -> list[EmojiToken]:
    """Split a ZWJ-composed token at U+200D; identity on everything else.

    The dropped joiners are exactly one U+200D between consecutive parts,
    so ``recompose(decompose(t)) == t``.
    """
    if token.kind is not TokenKind.ZWJ_COMPOSED:
        return [token]
    parts: list[EmojiToken] = []
    current: list[int] = []
    for cp in token.codepoints:
        if cp == ZWJ:
            parts.append(EmojiToken(tuple(current), classify(tuple(current))))
            current = []
        else:
            current.append(cp)
    parts.append(EmojiToken(tuple(current), classify(tuple(current))))
    return parts


def recompose(parts: list[EmojiToken]) -> EmojiToken:
    """Join constituent tokens with U+200D; inverse of decompose."""
    if not parts:
        raise EmptyParts("recompose requires at least one part")
    if len(parts) == 1:
        return parts[0]
    cps: list[int] = []
    for k, part in enumerate(parts):
        if k:
            cps.append(ZWJ)
        cps.extend(part.codepoints)
    return EmojiToken(tuple(cps), classify(tuple(cps)))


class EmojiVocabulary:
    """Frequency table of emoji tokens keyed by exact codepoint sequence."""

    def __init__(self):
        self._counts: dict[tuple[int, ...], int] = {}
        self._tokens: dict[tuple[int, ...], EmojiToken] = {}

    def add(self, token: EmojiToken, count: int = 1) -> None:
        if count < 1:
            raise ValueError("count must be >= 1")
        self._counts[token.codepoints] = self._counts.get(token.codepoints, 0) + count
        self._tokens.setdefault(token.codepoints, token)

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, token: EmojiToken) -> bool:
        return token.codepoints in self._counts

    def count(self, token: EmojiToken) -> int:
        return self._counts.get(token.codepoints, 0)

    def most_common(self, k: int) -> list[tuple[EmojiToken, int]]:
        """Top-k by count descending, ties broken by codepoint order."""
        ranked = sorted(self._counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return [(self._tokens[cps], c) for cps, c in ranked[:k]]

    def items(self):
        return ((self._tokens[cps], c) for cps, c in self._counts.items())


def load_sequence_fixtures() -> list[tuple[EmojiToken, str]]:
    """Parse the vendored conformance fixture list into (token, name) pairs."""
    out = []
    text = resources.files("emojitrans.data").joinpath("zwj-sequences.txt").read_text("utf-8")
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        seq, name = line.split(";", 1)
        cps = tuple(int(h, 16) for h in seq.split())
        out.append((EmojiToken(cps, classify(cps)), name.strip()))
    return out
