"""ROUGE-N and ROUGE-L (precision, recall, F1) against a single reference."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from nltk.stem.porter import PorterStemmer

from .textproc import ngrams, segment_sentences, tokenize_words

_stemmer = PorterStemmer()


class RougeLMode(str, enum.Enum):
    SUMMARY_LEVEL_UNION_LCS = "summary_level_union_lcs"
    WHOLE_TEXT_LCS = "whole_text_lcs"


@dataclass(frozen=True)
class RougeConfig:
    stemming: bool = True
    lowercase: bool = True
    rouge_l_mode: RougeLMode = RougeLMode.SUMMARY_LEVEL_UNION_LCS

    def __post_init__(self):
        # accept plain strings from CLI / JSON
        object.__setattr__(self, "rouge_l_mode", RougeLMode(self.rouge_l_mode))


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, overlap: int, n_candidate: int, n_reference: int) -> "RougeScore":
        """Build a score from a match count and the two normalizers.

        F1 is computed as ``2 * overlap / (n_candidate + n_reference)``, which
        equals the harmonic mean of precision and recall but with a single
        rounding, so equal ratios always compare equal.
        """
        precision = overlap / n_candidate if n_candidate else 0.0
        recall = overlap / n_reference if n_reference else 0.0
        f1 = 2.0 * overlap / (n_candidate + n_reference) if overlap else 0.0
        return cls(precision, recall, f1)

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


@lru_cache(maxsize=200_000)
def _stem(token: str) -> str:
    # Short tokens are left alone, as in the common ROUGE wrappers.
    return _stemmer.stem(token) if len(token) > 3 else token


def normalize_tokens(tokens: Sequence[str], config: RougeConfig) -> list[str]:
    out = list(tokens)
    if config.lowercase:
        out = [t.lower() for t in out]
    if config.stemming:
        out = [_stem(t) for t in out]
    return out


def rouge_tokens(text: str, config: RougeConfig) -> list[str]:
    return normalize_tokens(tokenize_words(text), config)


def _check_text(text: str, name: str) -> None:
    if not text or not text.strip():
        raise ValueError(f"{name} text is empty")


def ngram_overlap_score(cand_tokens: Sequence[str], ref_tokens: Sequence[str], n: int) -> RougeScore:
    cand = ngrams(cand_tokens, n)
    ref = ngrams(ref_tokens, n)
    overlap = sum(min(count, ref[g]) for g, count in cand.items())
    return RougeScore.from_counts(
        overlap, max(0, len(cand_tokens) - n + 1), max(0, len(ref_tokens) - n + 1)
    )


def rouge_n(candidate: str, reference: str, n: int, config: RougeConfig | None = None) -> RougeScore:
    """Clipped n-gram overlap between ``candidate`` and ``reference``."""
    config = config or RougeConfig()
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _check_text(candidate, "candidate")
    _check_text(reference, "reference")
    return ngram_overlap_score(rouge_tokens(candidate, config), rouge_tokens(reference, config), n)


def lcs_table(a: Sequence[str], b: Sequence[str]) -> list[list[int]]:
    """Full (len(a)+1) x (len(b)+1) LCS length table."""
    rows = [[0] * (len(b) + 1)]
    for x in a:
        prev = rows[-1]
        cur = [0]
        for j, y in enumerate(b):
            if x == y:
                cur.append(prev[j] + 1)
            else:
                cur.append(cur[j] if cur[j] > prev[j + 1] else prev[j + 1])
        rows.append(cur)
    return rows


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    # tokens absent from the other side can never be part of a common subsequence
    sb = set(b)
    a = [x for x in a if x in sb]
    sa = set(a)
    b = [y for y in b if y in sa]
    if not a:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            if x == y:
                cur.append(prev[j] + 1)
            else:
                cur.append(cur[j] if cur[j] > prev[j + 1] else prev[j + 1])
        prev = cur
    return prev[-1]


def lcs_ref_positions(ref: Sequence[str], cand: Sequence[str]) -> set[int]:
    """Indices into ``ref`` that one LCS of ``ref`` and ``cand`` uses."""
    cand_set = set(cand)
    keep = [i for i, t in enumerate(ref) if t in cand_set]
    if not keep:
        return set()
    ref_f = [ref[i] for i in keep]
    ref_set = set(ref_f)
    cand_f = [t for t in cand if t in ref_set]
    table = lcs_table(ref_f, cand_f)
    hits: set[int] = set()
    i, j = len(ref_f), len(cand_f)
    while i > 0 and j > 0:
        if ref_f[i - 1] == cand_f[j - 1]:
            hits.add(keep[i - 1])
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return hits


def union_lcs_score(
    cand_sents: Sequence[Sequence[str]], ref_sents: Sequence[Sequence[str]]
) -> RougeScore:
    """Summary-level LCS: per reference sentence, union of LCS hits over all candidate sentences.

    Hits are clipped by the remaining token counts on both sides so a token
    is never credited more often than it occurs; this keeps precision <= 1.
    """
    cand_counts = Counter(t for s in cand_sents for t in s)
    ref_counts = Counter(t for s in ref_sents for t in s)
    n_cand = sum(cand_counts.values())
    n_ref = sum(ref_counts.values())
    hits = 0
    for ref in ref_sents:
        union: set[int] = set()
        for cand in cand_sents:
            union |= lcs_ref_positions(ref, cand)
        for i in sorted(union):
            tok = ref[i]
            if cand_counts[tok] > 0 and ref_counts[tok] > 0:
                hits += 1
                cand_counts[tok] -= 1
                ref_counts[tok] -= 1
    return RougeScore.from_counts(hits, n_cand, n_ref)


def rouge_l(candidate: str, reference: str, config: RougeConfig | None = None) -> RougeScore:
    config = config or RougeConfig()
    _check_text(candidate, "candidate")
    _check_text(reference, "reference")
    if config.rouge_l_mode is RougeLMode.WHOLE_TEXT_LCS:
        cand = rouge_tokens(candidate, config)
        ref = rouge_tokens(reference, config)
        return RougeScore.from_counts(lcs_length(cand, ref), len(cand), len(ref))
    cand_sents = [rouge_tokens(s, config) for s in segment_sentences(candidate)]
    ref_sents = [rouge_tokens(s, config) for s in segment_sentences(reference)]
    return union_lcs_score(cand_sents, ref_sents)


def score_all(candidate: str, reference: str, config: RougeConfig | None = None) -> dict[str, RougeScore]:
    """ROUGE-1, ROUGE-2 and ROUGE-L with tokenization shared across the three."""
    config = config or RougeConfig()
    _check_text(candidate, "candidate")
    _check_text(reference, "reference")
    cand_sents = [rouge_tokens(s, config) for s in segment_sentences(candidate)]
    ref_sents = [rouge_tokens(s, config) for s in segment_sentences(reference)]
    cand = [t for s in cand_sents for t in s]
    ref = [t for s in ref_sents for t in s]
    if config.rouge_l_mode is RougeLMode.WHOLE_TEXT_LCS:
        rl = RougeScore.from_counts(lcs_length(cand, ref), len(cand), len(ref))
    else:
        rl = union_lcs_score(cand_sents, ref_sents)
    return {
        "rouge1": ngram_overlap_score(cand, ref, 1),
        "rouge2": ngram_overlap_score(cand, ref, 2),
        "rougeL": rl,
    }
