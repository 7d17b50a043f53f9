"""Loading, length filtering, splitting and per-split statistics for source/target pairs."""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .readability import score_text
from .textproc import tokenize_words

SPLIT_NAMES = ("train", "validation", "test")
DEFAULT_SIZES = (5195, 500, 1000)
STATS_CSV_COLUMNS = ("split", "side", "n", "avg_words", "vocab", "fk", "gunning", "coleman_liau")


class CorpusError(ValueError):
    """Malformed corpus input."""


@dataclass(frozen=True)
class DocumentPair:
    id: str
    source: str
    target: str

    def __post_init__(self):
        if not self.id:
            raise CorpusError("pair id must be non-empty")
        if not self.source.strip() or not self.target.strip():
            raise CorpusError(f"pair {self.id!r} has an empty source or target")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CorpusSplit:
    name: str
    pairs: tuple[DocumentPair, ...]

    def __post_init__(self):
        if self.name not in SPLIT_NAMES:
            raise CorpusError(f"unknown split name {self.name!r}")
        object.__setattr__(self, "pairs", tuple(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def ids(self) -> list[str]:
        return [p.id for p in self.pairs]


def parse_pairs(lines: Iterable[str]) -> list[DocumentPair]:
    pairs: list[DocumentPair] = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusError(f"line {lineno}: malformed JSON ({e.msg})") from e
        if not isinstance(obj, dict):
            raise CorpusError(f"line {lineno}: expected a JSON object")
        for key in ("id", "source", "target"):
            if key not in obj:
                raise CorpusError(f"line {lineno}: missing key {key!r}")
            if not isinstance(obj[key], str):
                raise CorpusError(f"line {lineno}: key {key!r} must be a string")
        doc_id = obj["id"]
        if doc_id in seen:
            raise CorpusError(
                f"duplicate id {doc_id!r} on lines {seen[doc_id]} and {lineno}"
            )
        seen[doc_id] = lineno
        try:
            pairs.append(DocumentPair(doc_id, obj["source"], obj["target"]))
        except CorpusError as e:
            raise CorpusError(f"line {lineno}: {e}") from None
    return pairs


def load_corpus(path: str | Path) -> list[DocumentPair]:
    """Read a JSONL file of ``{"id", "source", "target"}`` objects."""
    with open(path, encoding="utf-8") as f:
        return parse_pairs(f)


def write_pairs(pairs: Iterable[DocumentPair], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for p in pairs:
            f.write(json.dumps(p.to_dict(), ensure_ascii=False) + "\n")


def filter_by_length(
    pairs: Sequence[DocumentPair],
    min_source: int = 300,
    max_source: int = 1000,
    min_target: int = 100,
    max_target: int = 700,
) -> list[DocumentPair]:
    """Keep pairs whose source and target word counts fall inside the inclusive bounds."""
    for lo, hi, side in ((min_source, max_source, "source"), (min_target, max_target, "target")):
        if not 0 < lo <= hi:
            raise ValueError(f"invalid {side} length bounds: [{lo}, {hi}]")
    return [
        p
        for p in pairs
        if min_source <= len(tokenize_words(p.source)) <= max_source
        and min_target <= len(tokenize_words(p.target)) <= max_target
    ]


def split_corpus(
    pairs: Sequence[DocumentPair],
    sizes: tuple[int, int, int] = DEFAULT_SIZES,
    seed: int = 0,
) -> tuple[CorpusSplit, CorpusSplit, CorpusSplit]:
    """Seeded shuffle, then contiguous train/validation/test slices.

    Pairs beyond ``sum(sizes)`` are left unassigned.
    """
    if len(sizes) != 3 or any(s < 0 for s in sizes):
        raise ValueError(f"sizes must be three non-negative counts, got {sizes}")
    if sum(sizes) > len(pairs):
        raise ValueError(f"split sizes {sizes} sum to {sum(sizes)}, corpus has {len(pairs)} pairs")
    order = list(pairs)
    random.Random(seed).shuffle(order)
    out = []
    start = 0
    for name, size in zip(SPLIT_NAMES, sizes):
        out.append(CorpusSplit(name, tuple(order[start : start + size])))
        start += size
    return tuple(out)


@dataclass(frozen=True)
class SideStatistics:
    avg_length_words: float
    vocabulary_size: int
    flesch_kincaid: float
    gunning_fog: float
    coleman_liau: float


@dataclass(frozen=True)
class SplitStatistics:
    split: str
    n_abstracts: int
    source: SideStatistics
    target: SideStatistics

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SplitStatistics":
        return cls(d["split"], d["n_abstracts"], SideStatistics(**d["source"]), SideStatistics(**d["target"]))

    def csv_rows(self) -> list[dict]:
        rows = []
        for side in ("source", "target"):
            s: SideStatistics = getattr(self, side)
            rows.append(
                {
                    "split": self.split,
                    "side": side,
                    "n": self.n_abstracts,
                    "avg_words": f"{s.avg_length_words:.2f}",
                    "vocab": s.vocabulary_size,
                    "fk": f"{s.flesch_kincaid:.2f}",
                    "gunning": f"{s.gunning_fog:.2f}",
                    "coleman_liau": f"{s.coleman_liau:.2f}",
                }
            )
        return rows


def exact_mean(values: Iterable[float]) -> float:
    """Correctly rounded mean, independent of summation order."""
    values = list(values)
    return math.fsum(values) / len(values)


def side_statistics(texts: Sequence[str]) -> SideStatistics:
    vocab: set[str] = set()
    lengths = []
    reports = []
    for text in texts:
        tokens = tokenize_words(text)
        lengths.append(len(tokens))
        vocab.update(t.lower() for t in tokens)
        reports.append(score_text(text))
    return SideStatistics(
        avg_length_words=exact_mean(lengths),
        vocabulary_size=len(vocab),
        flesch_kincaid=exact_mean(r.flesch_kincaid for r in reports),
        gunning_fog=exact_mean(r.gunning_fog for r in reports),
        coleman_liau=exact_mean(r.coleman_liau for r in reports),
    )


def compute_statistics(split: CorpusSplit) -> SplitStatistics:
    if not split.pairs:
        raise ValueError(f"split {split.name!r} is empty")
    return SplitStatistics(
        split=split.name,
        n_abstracts=len(split.pairs),
        source=side_statistics([p.source for p in split.pairs]),
        target=side_statistics([p.target for p in split.pairs]),
    )


def statistics_csv(stats: Iterable[SplitStatistics]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=STATS_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for s in stats:
        writer.writerows(s.csv_rows())
    return buf.getvalue()
