"""Blinded human-evaluation packets.

Each sampled abstract is shown as SOURCE plus one SUMMARY, which is either
the expert-written target or the system output. The origin is recorded only
in a separate key file. Every abstract lands in exactly two packets, one
packet per evaluator.
"""

from __future__ import annotations

import csv
import io
import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .corpus import CorpusSplit
from .harness import CandidateSet, MissingCandidatesError

EXPERT = "expert"
SLOTS_PER_ABSTRACT = 2
LIKERT = "1 - very poor; 5 - very good"
QUESTIONS = (
    ("Grammaticality", "Do you think the SUMMARY is grammatically correct?"),
    (
        "Meaning preservation",
        "Does the SUMMARY provide all the useful information you think is important from the source?",
    ),
    ("Understandability", "Whether the SUMMARY is simpler to understand than the source?"),
    (
        "Correctness of key information",
        "How do you judge the overall quality of the SUMMARY in terms of its correctness "
        "of the key information compared to the source?",
    ),
)
KEY_COLUMNS = ("label", "abstract_id", "origin", "packets")

_SOURCE_HEADER = "### SOURCE"
_SUMMARY_HEADER = "### SUMMARY"
_QUESTIONS_HEADER = "### Questions"


@dataclass(frozen=True)
class PacketItem:
    label: str
    source: str
    summary: str


@dataclass(frozen=True)
class HumanEvalPacket:
    packet_id: str
    items: tuple[PacketItem, ...]

    def render(self) -> str:
        lines = [
            f"# Evaluation packet {self.packet_id}",
            "",
            "Read each SOURCE and its SUMMARY, then answer the questions by comparing the "
            f"SUMMARY to the SOURCE on a 1-5 scale ({LIKERT}).",
            "",
        ]
        for slot, item in zip("ABCDEFGH", self.items):
            lines += [
                f"## Abstract {slot} ({item.label})",
                "",
                _SOURCE_HEADER,
                "",
                item.source.strip(),
                "",
                _SUMMARY_HEADER,
                "",
                item.summary.strip(),
                "",
                _QUESTIONS_HEADER,
                "",
            ]
            for k, (name, prompt) in enumerate(QUESTIONS, start=1):
                lines.append(f"{k}. **{name}** {prompt}  Rating (1-5): ____")
            lines.append("")
        return "\n".join(lines)


@dataclass(frozen=True)
class KeyEntry:
    label: str
    abstract_id: str
    origin: str
    packets: tuple[str, ...]


def make_human_eval_packets(
    split: CorpusSplit,
    candidates: CandidateSet,
    n_abstracts: int = 2,
    seed: int = 0,
) -> tuple[list[HumanEvalPacket], list[KeyEntry]]:
    """Sample ``n_abstracts`` pairs and lay them out into blinded packets.

    Origins are balanced: half of the sampled abstracts (rounded down) show
    the expert target, the rest show the system summary, in seeded order.
    """
    if not 1 <= n_abstracts <= len(split.pairs):
        raise ValueError(f"n_abstracts must be in [1, {len(split.pairs)}], got {n_abstracts}")
    rng = random.Random(seed)
    chosen = rng.sample(list(split.pairs), n_abstracts)
    origins = [EXPERT] * (n_abstracts // 2) + [candidates.system_name] * (n_abstracts - n_abstracts // 2)
    rng.shuffle(origins)

    missing = [p.id for p, o in zip(chosen, origins) if o != EXPERT and p.id not in candidates.summaries]
    if missing:
        raise MissingCandidatesError(missing)

    labels: list[str] = []
    while len(labels) < n_abstracts:
        label = f"item-{rng.getrandbits(32):08x}"
        if label not in labels:
            labels.append(label)

    items = [
        PacketItem(label, pair.source, pair.target if origin == EXPERT else candidates.summaries[pair.id])
        for label, pair, origin in zip(labels, chosen, origins)
    ]
    # packet k gets abstracts k and k+1 (cyclic), so each abstract fills two slots
    if n_abstracts == 1:
        layout = [(0,), (0,)]
    else:
        layout = [(k, (k + 1) % n_abstracts) for k in range(n_abstracts)]
    width = max(2, len(str(len(layout))))
    packets = [
        HumanEvalPacket(f"packet-{k + 1:0{width}d}", tuple(items[i] for i in idx))
        for k, idx in enumerate(layout)
    ]
    key = []
    for i, (label, pair, origin) in enumerate(zip(labels, chosen, origins)):
        in_packets = tuple(p.packet_id for p, idx in zip(packets, layout) if i in idx)
        key.append(KeyEntry(label, pair.id, origin, in_packets))
    return packets, key


def key_csv(key: Sequence[KeyEntry]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(KEY_COLUMNS)
    for e in key:
        writer.writerow([e.label, e.abstract_id, e.origin, ";".join(e.packets)])
    return buf.getvalue()


def write_packets(packets: Sequence[HumanEvalPacket], key: Sequence[KeyEntry], outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for p in packets:
        path = outdir / f"{p.packet_id}.md"
        path.write_text(p.render(), encoding="utf-8")
        written.append(path)
    key_path = outdir / "key.csv"
    key_path.write_text(key_csv(key), encoding="utf-8")
    written.append(key_path)
    return written


def _template_text(rendered: str) -> str:
    """Packet text with the SOURCE/SUMMARY bodies removed."""
    out = []
    skipping = False
    for line in rendered.splitlines():
        if line in (_SOURCE_HEADER, _SUMMARY_HEADER):
            skipping = True
            continue
        if line.startswith("#"):
            skipping = False
        if not skipping:
            out.append(line)
    return "\n".join(out)


def find_leaks(rendered: str, forbidden: Sequence[str], include_bodies: bool = False) -> list[str]:
    """Forbidden terms found in a rendered packet (case-insensitive, whole words).

    By default only the packet scaffolding is searched, since the abstracts
    themselves may legitimately use words like "target".
    """
    text = rendered if include_bodies else _template_text(rendered)
    hits = []
    for term in forbidden:
        if term and re.search(rf"(?<!\w){re.escape(term)}(?!\w)", text, flags=re.IGNORECASE):
            hits.append(term)
    return hits


def origin_terms(key: Sequence[KeyEntry]) -> list[str]:
    terms = {"target", "generated", "expert", "system", "model", "reference"}
    terms.update(e.origin for e in key)
    return sorted(terms)
