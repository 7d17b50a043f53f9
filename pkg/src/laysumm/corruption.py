"""Denoising pre-training pairs: sentence shuffling and span substitution.

Spans are measured in whitespace tokens, not subword units.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .textproc import segment_sentences

SHUFFLE_RETRIES = 100


@dataclass(frozen=True)
class CorruptionConfig:
    seed: int = 0
    shuffle_sentences: bool = True
    substitute_spans: bool = True
    mask_ratio: float = 0.3
    span_length_mean: float = 3.0
    mask_token: str = "<mask>"

    def __post_init__(self):
        if not 0.0 <= self.mask_ratio <= 1.0:
            raise ValueError(f"mask_ratio must be in [0, 1], got {self.mask_ratio}")
        if not self.span_length_mean > 0:
            raise ValueError(f"span_length_mean must be > 0, got {self.span_length_mean}")
        if not self.mask_token:
            raise ValueError("mask_token must be non-empty")


@dataclass(frozen=True)
class DenoisingPair:
    corrupted: str
    original: str


@dataclass(frozen=True)
class MaskPlan:
    """Masked token spans as half-open ``(start, end)`` intervals plus zero-length insertion points."""

    spans: tuple[tuple[int, int], ...]
    insertions: tuple[int, ...]

    @property
    def masked_tokens(self) -> int:
        return sum(e - s for s, e in self.spans)


def _require_text(text: str) -> None:
    if not text or not text.strip():
        raise ValueError("cannot corrupt empty text")


def shuffle_sentences(text: str, seed: int) -> str:
    """Seeded permutation of the sentences of ``text``, joined by single spaces.

    For two or more sentences the permutation is redrawn until it differs from
    the identity, up to ``SHUFFLE_RETRIES`` draws.
    """
    _require_text(text)
    sentences = segment_sentences(text)
    if len(sentences) < 2:
        return text
    rng = random.Random(seed)
    order = list(range(len(sentences)))
    identity = order[:]
    for _ in range(SHUFFLE_RETRIES):
        rng.shuffle(order)
        if order != identity:
            break
    return " ".join(sentences[i] for i in order)


def mask_budget(n_tokens: int, mask_ratio: float) -> int:
    if n_tokens == 0 or mask_ratio == 0:
        return 0
    return min(n_tokens, max(1, round(mask_ratio * n_tokens)))


def plan_masks(n_tokens: int, config: CorruptionConfig, seed: int | None = None) -> MaskPlan:
    """Sample non-overlapping spans covering ``mask_budget`` tokens.

    Span lengths are Poisson(``span_length_mean``), clipped to the remaining
    budget and to the longest free run. A zero-length draw becomes an
    insertion point between tokens.
    """
    seed = config.seed if seed is None else seed
    rng = np.random.default_rng(seed % 2**64)
    budget = mask_budget(n_tokens, config.mask_ratio)
    masked = [False] * n_tokens
    spans: list[tuple[int, int]] = []
    insertions: set[int] = set()
    remaining = budget
    # zero-length draws do not consume budget, so cap the number of draws
    for _ in range(10 * n_tokens + 100):
        if remaining <= 0:
            break
        length = min(int(rng.poisson(config.span_length_mean)), remaining)
        if length == 0:
            gaps = [
                g for g in range(n_tokens + 1)
                if g not in insertions
                and not (0 < g < n_tokens and masked[g - 1] and masked[g])
            ]
            if gaps:
                insertions.add(gaps[int(rng.integers(len(gaps)))])
            continue
        runs = _free_runs(masked)
        longest = max(e - s for s, e in runs)
        length = min(length, longest)
        starts = [i for s, e in runs for i in range(s, e - length + 1)]
        start = starts[int(rng.integers(len(starts)))]
        for i in range(start, start + length):
            masked[i] = True
        spans.append((start, start + length))
        remaining -= length
    # an insertion swallowed by a later span is dropped
    insertions = {g for g in insertions if not (0 < g < n_tokens and masked[g - 1] and masked[g])}
    return MaskPlan(tuple(sorted(spans)), tuple(sorted(insertions)))


def _free_runs(masked: Sequence[bool]) -> list[tuple[int, int]]:
    runs = []
    start = None
    for i, m in enumerate(masked):
        if not m and start is None:
            start = i
        elif m and start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(masked)))
    return runs


def apply_masks(tokens: Sequence[str], plan: MaskPlan, mask_token: str) -> list[str]:
    span_at = {s: e for s, e in plan.spans}
    inserts = set(plan.insertions)
    out: list[str] = []
    i = 0
    while i <= len(tokens):
        if i in inserts:
            out.append(mask_token)
        if i == len(tokens):
            break
        if i in span_at:
            out.append(mask_token)
            i = span_at[i]
        else:
            out.append(tokens[i])
            i += 1
    return out


def substitute_spans(text: str, config: CorruptionConfig, seed: int | None = None) -> str:
    """Replace sampled token spans with one ``mask_token`` each."""
    _require_text(text)
    tokens = text.split()
    plan = plan_masks(len(tokens), config, seed)
    if not plan.spans and not plan.insertions:
        return text
    return " ".join(apply_masks(tokens, plan, config.mask_token))


def corrupt(text: str, config: CorruptionConfig, seed: int | None = None) -> str:
    seed = config.seed if seed is None else seed
    out = text
    if config.shuffle_sentences:
        out = shuffle_sentences(out, seed)
    if config.substitute_spans and config.mask_ratio > 0:
        out = substitute_spans(out, config, seed)
    return out


def iter_pairs(documents: Iterable[str], config: CorruptionConfig) -> Iterator[DenoisingPair]:
    """Lazily corrupt ``documents``; document ``i`` uses seed ``config.seed + i``."""
    for i, doc in enumerate(documents):
        try:
            yield DenoisingPair(corrupt(doc, config, config.seed + i), doc)
        except ValueError as e:
            raise ValueError(f"document {i}: {e}") from e


def generate_pairs(documents: Sequence[str], config: CorruptionConfig) -> list[DenoisingPair]:
    if not documents:
        raise ValueError("no documents to corrupt")
    return list(iter_pairs(documents, config))

