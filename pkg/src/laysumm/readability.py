"""Flesch-Kincaid grade, Gunning fog and Coleman-Liau indices.

Scores are reported unclamped; short, simple texts legitimately produce
negative grade levels.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .textproc import TokenizedText


@dataclass(frozen=True)
class ReadabilityCounts:
    words: int
    sentences: int
    syllables: int
    complex_words: int
    letters: int

    @property
    def L(self) -> float:
        """Letters per 100 words."""
        return 100.0 * self.letters / self.words

    @property
    def S(self) -> float:
        """Sentences per 100 words."""
        return 100.0 * self.sentences / self.words

    @classmethod
    def from_tokenized(cls, tok: TokenizedText) -> "ReadabilityCounts":
        return cls(
            words=tok.word_count,
            sentences=tok.sentence_count,
            syllables=sum(tok.syllables_per_word),
            complex_words=sum(1 for s in tok.syllables_per_word if s >= 3),
            letters=tok.letter_count,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.words:
            d["L"] = self.L
            d["S"] = self.S
        return d


@dataclass(frozen=True)
class ReadabilityReport:
    flesch_kincaid: float
    gunning_fog: float
    coleman_liau: float
    counts: ReadabilityCounts

    def to_dict(self) -> dict:
        return {
            "flesch_kincaid": self.flesch_kincaid,
            "gunning_fog": self.gunning_fog,
            "coleman_liau": self.coleman_liau,
            "counts": self.counts.to_dict(),
        }


def _require(counts: ReadabilityCounts, sentences: bool = True) -> None:
    if counts.words < 1:
        raise ValueError("readability needs at least one word")
    if sentences and counts.sentences < 1:
        raise ValueError("readability needs at least one sentence")


def flesch_kincaid(counts: ReadabilityCounts) -> float:
    _require(counts)
    return (
        0.39 * (counts.words / counts.sentences)
        + 11.8 * (counts.syllables / counts.words)
        - 15.59
    )


def gunning_fog(counts: ReadabilityCounts) -> float:
    _require(counts)
    return 0.4 * ((counts.words / counts.sentences) + 100.0 * (counts.complex_words / counts.words))


def coleman_liau(counts: ReadabilityCounts) -> float:
    _require(counts, sentences=False)
    return 0.0588 * counts.L - 0.296 * counts.S - 15.8


def score_counts(counts: ReadabilityCounts) -> ReadabilityReport:
    return ReadabilityReport(
        flesch_kincaid=flesch_kincaid(counts),
        gunning_fog=gunning_fog(counts),
        coleman_liau=coleman_liau(counts),
        counts=counts,
    )


def score_text(text: str) -> ReadabilityReport:
    """Tokenize ``text`` and evaluate all three indices on its counts."""
    if not text.strip():
        raise ValueError("cannot score empty or whitespace-only text")
    counts = ReadabilityCounts.from_tokenized(TokenizedText.from_text(text))
    if counts.words < 1:
        raise ValueError(f"no word tokens in text: {text[:40]!r}")
    return score_counts(counts)
