"""Corpus-level evaluation of candidate summaries against a reference split."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .corpus import CorpusError, CorpusSplit, exact_mean
from .readability import score_text
from .rouge import RougeConfig, score_all
from .textproc import tokenize_words

log = logging.getLogger(__name__)

REPORT_CSV_COLUMNS = (
    "system", "n", "rouge1", "rouge2", "rougeL", "flesch_kincaid", "gunning_fog", "coleman_liau",
)


class MissingCandidatesError(ValueError):
    def __init__(self, missing: Sequence[str]):
        self.missing = list(missing)
        super().__init__(f"{len(self.missing)} ids have no candidate summary: {', '.join(self.missing)}")


@dataclass
class CandidateSet:
    system_name: str
    summaries: dict[str, str] = field(default_factory=dict)


def parse_candidates(lines: Iterable[str], system_name: str) -> CandidateSet:
    summaries: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusError(f"line {lineno}: malformed JSON ({e.msg})") from e
        for key in ("id", "summary"):
            if key not in obj:
                raise CorpusError(f"line {lineno}: missing key {key!r}")
        if obj["id"] in summaries:
            raise CorpusError(f"line {lineno}: duplicate id {obj['id']!r}")
        summaries[obj["id"]] = obj["summary"]
    return CandidateSet(system_name, summaries)


def load_candidates(path: str | Path, system_name: str | None = None) -> CandidateSet:
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        return parse_candidates(f, system_name or path.stem)


@dataclass(frozen=True)
class EvaluationReport:
    """Macro-averaged scores for one system. ROUGE values are F1 x 100.

    Readability means cover non-empty candidates only and are ``None`` when
    every candidate is empty.
    """

    system_name: str
    n_evaluated: int
    rouge1: float
    rouge2: float
    rougeL: float
    flesch_kincaid: Optional[float]
    gunning_fog: Optional[float]
    coleman_liau: Optional[float]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "EvaluationReport":
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, s: str) -> "EvaluationReport":
        return cls.from_dict(json.loads(s))

    def csv_row(self) -> dict:
        def fmt(x):
            return "" if x is None else f"{x:.2f}"

        return {
            "system": self.system_name,
            "n": self.n_evaluated,
            "rouge1": fmt(self.rouge1),
            "rouge2": fmt(self.rouge2),
            "rougeL": fmt(self.rougeL),
            "flesch_kincaid": fmt(self.flesch_kincaid),
            "gunning_fog": fmt(self.gunning_fog),
            "coleman_liau": fmt(self.coleman_liau),
        }


def reports_csv(reports: Iterable[EvaluationReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REPORT_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def reports_table(reports: Sequence[EvaluationReport]) -> str:
    header = ("Model", "ROUGE-1", "ROUGE-2", "ROUGE-L", "Flesch-Kincaid", "Gunning", "Coleman-Liau")
    rows = [header]
    for r in reports:
        c = r.csv_row()
        rows.append((r.system_name, c["rouge1"], c["rouge2"], c["rougeL"],
                     c["flesch_kincaid"], c["gunning_fog"], c["coleman_liau"]))
    widths = [max(len(str(row[i])) for row in rows) for i in range(len(header))]
    lines = []
    for k, row in enumerate(rows):
        cells = [str(row[0]).ljust(widths[0])] + [str(v).rjust(w) for v, w in zip(row[1:], widths[1:])]
        lines.append(" | ".join(cells))
        if k == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _score_pair(args):
    candidate, reference, config = args
    if not candidate.strip():
        return 0.0, 0.0, 0.0, None
    scores = score_all(candidate, reference, config)
    try:
        readability = score_text(candidate)
    except ValueError:
        readability = None
    return scores["rouge1"].f1, scores["rouge2"].f1, scores["rougeL"].f1, readability


def evaluate(
    candidates: CandidateSet,
    split: CorpusSplit,
    rouge_config: RougeConfig | None = None,
    workers: int = 1,
) -> EvaluationReport:
    """Score every pair of ``split`` against its candidate and macro-average.

    Raises ``MissingCandidatesError`` listing every split id with no candidate. Candidate
    ids outside the split are logged and ignored.
    """
    rouge_config = rouge_config or RougeConfig()
    missing = [pid for pid in split.ids if pid not in candidates.summaries]
    if missing:
        raise MissingCandidatesError(missing)
    extra = set(candidates.summaries) - set(split.ids)
    if extra:
        log.warning("ignoring %d candidate ids not in split %r: %s",
                    len(extra), split.name, ", ".join(sorted(extra)))
    if not split.pairs:
        raise ValueError(f"split {split.name!r} is empty")

    jobs = [(candidates.summaries[p.id], p.target, rouge_config) for p in split.pairs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_score_pair, jobs, chunksize=32))
    else:
        results = [_score_pair(j) for j in jobs]

    empty = sum(1 for r in results if r[3] is None)
    if empty:
        log.warning("%d candidates have no scorable words; excluded from readability means", empty)
    readable = [r[3] for r in results if r[3] is not None]

    def mean_or_none(values):
        return exact_mean(values) if readable else None

    return EvaluationReport(
        system_name=candidates.system_name,
        n_evaluated=len(results),
        rouge1=100.0 * exact_mean(r[0] for r in results),
        rouge2=100.0 * exact_mean(r[1] for r in results),
        rougeL=100.0 * exact_mean(r[2] for r in results),
        flesch_kincaid=mean_or_none(x.flesch_kincaid for x in readable),
        gunning_fog=mean_or_none(x.gunning_fog for x in readable),
        coleman_liau=mean_or_none(x.coleman_liau for x in readable),
    )


def validate_lengths(candidates: CandidateSet, min_words: int = 100, max_words: int = 700) -> list[str]:
    """Ids whose summaries fall outside ``[min_words, max_words]`` words."""
    return [
        cid
        for cid, text in candidates.summaries.items()
        if not min_words <= len(tokenize_words(text)) <= max_words
    ]
