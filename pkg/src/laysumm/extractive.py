"""Oracle (ROUGE-2 maximizing) and lead-k extractive summaries."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .rouge import RougeConfig, RougeScore, rouge_n, rouge_tokens
from .textproc import segment_sentences

MAX_EXHAUSTIVE_SENTENCES = 15


@dataclass(frozen=True)
class ExtractiveSummary:
    selected_indices: tuple[int, ...]
    text: str
    score: Optional[RougeScore] = None

    def to_record(self, doc_id: str) -> dict:
        return {"id": doc_id, "selected_indices": list(self.selected_indices), "summary": self.text}


def _sentences(source: str) -> list[str]:
    if not source or not source.strip():
        raise ValueError("source text is empty")
    return segment_sentences(source)


def _summary(sentences: list[str], indices, reference: str | None, config: RougeConfig) -> ExtractiveSummary:
    indices = tuple(sorted(indices))
    text = " ".join(sentences[i] for i in indices)
    score = None
    if reference is not None and text:
        score = rouge_n(text, reference, 2, config)
    elif reference is not None:
        score = RougeScore(0.0, 0.0, 0.0)
    return ExtractiveSummary(indices, text, score)


class _GreedyState:
    """Bigram bookkeeping for a selection of sentences kept in source order.

    Adding a sentence contributes its internal bigrams plus the bigrams that
    bridge it to its selected neighbours, and removes the bridge those
    neighbours previously formed with each other.
    """

    def __init__(self, sent_tokens: list[list[str]], ref_bigrams: Counter, n_ref: int):
        self.sent_tokens = sent_tokens
        self.internal = [Counter(zip(t, t[1:])) for t in sent_tokens]
        self.ref = ref_bigrams
        self.n_ref = n_ref
        self.selected: list[int] = []
        self.counts: Counter = Counter()
        self.overlap = 0
        self.n_tokens = 0

    def _neighbours(self, i: int) -> tuple[int | None, int | None]:
        prev = nxt = None
        for j in self.selected:
            if not self.sent_tokens[j]:
                continue
            if j < i:
                prev = j
            elif j > i:
                nxt = j
                break
        return prev, nxt

    def _delta(self, i: int) -> Counter:
        toks = self.sent_tokens[i]
        delta = Counter(self.internal[i])
        if not toks:
            return delta
        prev, nxt = self._neighbours(i)
        if prev is not None:
            delta[(self.sent_tokens[prev][-1], toks[0])] += 1
        if nxt is not None:
            delta[(toks[-1], self.sent_tokens[nxt][0])] += 1
        if prev is not None and nxt is not None:
            delta[(self.sent_tokens[prev][-1], self.sent_tokens[nxt][0])] -= 1
        return delta

    def gain(self, i: int) -> tuple[int, int]:
        """(overlap, token count) the selection would have after adding ``i``."""
        overlap = self.overlap
        for g, d in self._delta(i).items():
            if d == 0 or g not in self.ref:
                continue
            c = self.counts[g]
            r = self.ref[g]
            overlap += min(c + d, r) - min(c, r)
        return overlap, self.n_tokens + len(self.sent_tokens[i])

    def f1(self, overlap: int, n_tokens: int) -> float:
        return RougeScore.from_counts(overlap, max(0, n_tokens - 1), self.n_ref).f1

    def add(self, i: int) -> None:
        self.overlap, self.n_tokens = self.gain(i)
        self.counts.update(self._delta(i))
        self.selected.append(i)
        self.selected.sort()


def oracle_greedy(
    source: str,
    reference: str,
    max_sentences: int | None = None,
    config: RougeConfig | None = None,
) -> ExtractiveSummary:
    """Greedy sentence selection maximizing ROUGE-2 F1 against ``reference``.

    Each round adds the sentence giving the highest F1 (smallest index on
    ties); selection stops once no sentence strictly improves F1 or
    ``max_sentences`` have been chosen.
    """
    config = config or RougeConfig()
    if not reference or not reference.strip():
        raise ValueError("reference text is empty")
    sentences = _sentences(source)
    if max_sentences is None:
        max_sentences = len(sentences)
    if max_sentences < 1:
        raise ValueError("max_sentences must be >= 1")

    ref_tokens = rouge_tokens(reference, config)
    ref_bigrams = Counter(zip(ref_tokens, ref_tokens[1:]))
    state = _GreedyState(
        [rouge_tokens(s, config) for s in sentences], ref_bigrams, max(0, len(ref_tokens) - 1)
    )
    best_f1 = 0.0
    while len(state.selected) < max_sentences:
        best_i = None
        round_best = best_f1
        for i in range(len(sentences)):
            if i in state.selected:
                continue
            f1 = state.f1(*state.gain(i))
            if f1 > round_best:
                round_best, best_i = f1, i
        if best_i is None:
            break
        state.add(best_i)
        best_f1 = round_best
    return _summary(sentences, state.selected, reference, config)


def oracle_exhaustive(
    source: str,
    reference: str,
    max_source_sentences: int = MAX_EXHAUSTIVE_SENTENCES,
    config: RougeConfig | None = None,
) -> ExtractiveSummary:
    """Best ROUGE-2 F1 subset by brute force over all non-empty subsets.

    Ties go to fewer sentences, then the lexicographically smallest index list.
    Exponential in the sentence count, so meant for verification only.
    """
    config = config or RougeConfig()
    if not reference or not reference.strip():
        raise ValueError("reference text is empty")
    sentences = _sentences(source)
    m = len(sentences)
    if m > max_source_sentences:
        raise ValueError(
            f"source has {m} sentences, more than {max_source_sentences}; use oracle_greedy instead"
        )
    best: tuple[int, ...] | None = None
    best_f1 = -1.0
    # combinations() yields by size, then lexicographically, so strict > keeps the tie-break
    for size in range(1, m + 1):
        for subset in combinations(range(m), size):
            text = " ".join(sentences[i] for i in subset)
            if not text.strip():
                continue
            f1 = rouge_n(text, reference, 2, config).f1
            if f1 > best_f1:
                best, best_f1 = subset, f1
    return _summary(sentences, best or (0,), reference, config)


def lead_k(source: str, k: int = 3, reference: str | None = None, config: RougeConfig | None = None) -> ExtractiveSummary:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    sentences = _sentences(source)
    return _summary(sentences, range(min(k, len(sentences))), reference, config or RougeConfig())
