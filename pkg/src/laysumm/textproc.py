"""Deterministic sentence segmentation, word tokenization and syllable counting.

Every readability and ROUGE computation in the package goes through these
functions, so they are kept rule-based and free of any model or global state.
"""

from __future__ import annotations

import re
import string
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

# Lowercased, without the trailing period.
ABBREVIATIONS = frozenset(
    {
        "e.g", "i.e", "vs", "etc", "al", "et al", "cf", "approx", "ca",
        "dr", "mr", "mrs", "ms", "prof", "fig", "figs", "no", "nos", "vol",
        "eq", "ref", "refs", "jr", "sr", "inc", "ltd", "dept", "resp", "incl",
    }
)

_TERMINALS = ".?!"
_CLOSERS = "\"')]}”’»"
# '%' stays attached so "60%" survives as one token.
_STRIP_CHARS = (
    "".join(c for c in string.punctuation if c != "%")
    + "“”‘’«»…–—"
)
_VOWEL_GROUP = re.compile(r"[aeiouy]+")
_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n")
_WHITESPACE_RUN = re.compile(r"\s+")


def _is_boundary(text: str, end: int) -> bool:
    """Decide whether the terminal mark ending at ``end`` (exclusive) closes a sentence.

    ``end`` already includes any closing quotes or brackets, and the caller
    guarantees ``text[end]`` is whitespace.
    """
    core_end = end
    while core_end > 0 and text[core_end - 1] in _CLOSERS:
        core_end -= 1
    mark = text[core_end - 1]
    if mark != ".":
        return True
    word_start = core_end - 1
    while word_start > 0 and not text[word_start - 1].isspace():
        word_start -= 1
    word = text[word_start : core_end - 1].lstrip(_STRIP_CHARS).lower()
    if not word:
        return True
    if word in ABBREVIATIONS:
        return False
    # Two-word abbreviation ("et al.").
    prev = text[:word_start].rstrip().rsplit(None, 1)
    if prev and f"{prev[-1].lstrip(_STRIP_CHARS).lower()} {word}" in ABBREVIATIONS:
        return False
    # Initials such as "J." in author names.
    if len(word) == 1 and word.isalpha():
        return False
    # Dotted abbreviations like "U.S." that are not in the list.
    if "." in word and all(part.isalpha() and len(part) <= 2 for part in word.split(".")):
        return False
    return True


def segment_sentences(text: str) -> list[str]:
    """Split ``text`` into sentences.

    Boundaries fall on whitespace that follows ``.``, ``?`` or ``!`` (plus any
    closing quotes or brackets), and on blank lines. A period does not end a
    sentence after a listed abbreviation or a single-letter initial. Decimals
    never split since their period is not followed by whitespace.
    """
    sentences: list[str] = []
    for block in _PARAGRAPH_BREAK.split(text):
        start = 0
        n = len(block)
        i = 0
        while i < n:
            ch = block[i]
            if ch in _TERMINALS:
                j = i + 1
                while j < n and (block[j] in _TERMINALS or block[j] in _CLOSERS):
                    j += 1
                if j < n and block[j].isspace() and _is_boundary(block, j):
                    piece = block[start:j].strip()
                    if piece:
                        sentences.append(piece)
                    start = j
                i = j
            else:
                i += 1
        piece = block[start:].strip()
        if piece:
            sentences.append(piece)
    return sentences


def tokenize_words(text: str) -> list[str]:
    """Whitespace tokens with leading/trailing punctuation removed.

    >>> tokenize_words("randomised controlled trials (RCTs)")
    ['randomised', 'controlled', 'trials', 'RCTs']
    """
    tokens = []
    for raw in text.split():
        tok = raw.strip(_STRIP_CHARS)
        if tok:
            tokens.append(tok)
    return tokens


def count_syllables(word: str) -> int:
    """Heuristic syllable count: vowel groups, minus a silent final ``e``.

    The final ``e`` is silent when it forms its own vowel group and the word
    does not end in consonant + ``le``. The result is never below 1.
    """
    if not word:
        raise ValueError("cannot count syllables of an empty word")
    w = word.lower()
    count = len(_VOWEL_GROUP.findall(w))
    if (
        len(w) >= 2
        and w.endswith("e")
        and w[-2] not in "aeiouy"
        and not (len(w) >= 3 and w.endswith("le") and w[-3].isalpha() and w[-3] not in "aeiouy")
    ):
        count -= 1
    return max(1, count)


def is_complex_word(word: str) -> bool:
    return count_syllables(word) >= 3


def ngrams(tokens: Sequence, n: int) -> Counter:
    """Multiset of contiguous length-``n`` windows, as a Counter of tuples."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def count_letters(tokens: Sequence[str]) -> int:
    return sum(1 for tok in tokens for c in tok if c.isalpha())


@dataclass(frozen=True)
class TokenizedText:
    """Segmented view of a text with the counts the readability formulas need."""

    sentences: tuple[str, ...]
    sentence_words: tuple[tuple[str, ...], ...]
    syllables_per_word: tuple[int, ...] = field(repr=False)
    letter_count: int = 0

    @classmethod
    def from_text(cls, text: str) -> "TokenizedText":
        sentences = tuple(segment_sentences(text))
        sentence_words = tuple(tuple(tokenize_words(s)) for s in sentences)
        flat = [w for sw in sentence_words for w in sw]
        return cls(
            sentences=sentences,
            sentence_words=sentence_words,
            syllables_per_word=tuple(count_syllables(w) for w in flat),
            letter_count=count_letters(flat),
        )

    @property
    def words(self) -> list[str]:
        return [w for sw in self.sentence_words for w in sw]

    @property
    def word_count(self) -> int:
        return len(self.syllables_per_word)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)


def normalize_whitespace(text: str) -> str:
    return _WHITESPACE_RUN.sub(" ", text).strip()
