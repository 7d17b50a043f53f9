import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laysumm.corpus import (
    CorpusError,
    CorpusSplit,
    DocumentPair,
    compute_statistics,
    filter_by_length,
    load_corpus,
    split_corpus,
    statistics_csv,
    SplitStatistics,
)


def words(n, word="word"):
    return " ".join([word] * n) + "."


# (source words, target words, in range with default bounds)
FILTER_FIXTURE = [
    (299, 150, False),
    (300, 100, True),
    (1000, 700, True),
    (1001, 300, False),
    (500, 99, False),
    (500, 701, False),
    (650, 374, True),
    (714, 371, True),
    (200, 50, False),
    (1200, 800, False),
]


def filter_pairs():
    return [DocumentPair(f"cd{i:03d}", words(s), words(t)) for i, (s, t, _) in enumerate(FILTER_FIXTURE)]


def write_jsonl(path, objs):
    path.write_text("".join(json.dumps(o) + "\n" for o in objs), encoding="utf-8")
    return path


def test_load_corpus_in_order(tmp_path):
    objs = [{"id": f"cd{i}", "source": f"src {i}.", "target": f"tgt {i}."} for i in range(3)]
    pairs = load_corpus(write_jsonl(tmp_path / "c.jsonl", objs))
    assert [p.id for p in pairs] == ["cd0", "cd1", "cd2"]
    assert pairs[1].source == "src 1."


def test_load_corpus_missing_key_cites_line(tmp_path):
    objs = [{"id": "a", "source": "s", "target": "t"}, {"id": "b", "source": "s"}]
    with pytest.raises(CorpusError, match=r"line 2: missing key 'target'"):
        load_corpus(write_jsonl(tmp_path / "c.jsonl", objs))


def test_load_corpus_duplicate_id(tmp_path):
    objs = [{"id": "cd001", "source": "s", "target": "t"}] + [
        {"id": f"x{i}", "source": "s", "target": "t"} for i in range(2)
    ] + [{"id": "cd001", "source": "s2", "target": "t2"}]
    with pytest.raises(CorpusError, match="cd001.*lines 1 and 4"):
        load_corpus(write_jsonl(tmp_path / "c.jsonl", objs))


def test_load_corpus_malformed_json(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text('{"id": "a", "source": "s", "target": "t"}\n{"id": oops}\n')
    with pytest.raises(CorpusError, match="line 2"):
        load_corpus(p)


def test_empty_side_rejected(tmp_path):
    with pytest.raises(CorpusError, match="line 1"):
        load_corpus(write_jsonl(tmp_path / "c.jsonl", [{"id": "a", "source": "  ", "target": "t"}]))


def test_filter_fixture_keeps_exactly_in_range():
    kept = filter_by_length(filter_pairs())
    expected = [f"cd{i:03d}" for i, (_, _, ok) in enumerate(FILTER_FIXTURE) if ok]
    assert len(expected) == 4
    assert [p.id for p in kept] == expected


def test_filter_boundaries():
    assert filter_by_length([DocumentPair("a", words(299), words(150))]) == []
    kept = filter_by_length([DocumentPair("a", words(300), words(100))])
    assert [p.id for p in kept] == ["a"]


@pytest.mark.parametrize("bounds", [(0, 10, 1, 2), (10, 5, 1, 2), (1, 2, 3, 2)])
def test_filter_invalid_bounds(bounds):
    with pytest.raises(ValueError):
        filter_by_length(filter_pairs(), *bounds)


def test_filter_idempotent():
    once = filter_by_length(filter_pairs())
    assert filter_by_length(once) == once


def ten_pairs():
    return [DocumentPair(f"id{i}", f"Source {i}.", f"Target {i}.") for i in range(10)]


def test_split_deterministic():
    a = split_corpus(ten_pairs(), (8, 1, 1), seed=7)
    b = split_corpus(ten_pairs(), (8, 1, 1), seed=7)
    assert a == b
    assert [len(s) for s in a] == [8, 1, 1]
    assert [s.name for s in a] == ["train", "validation", "test"]


def test_split_too_large():
    with pytest.raises(ValueError):
        split_corpus(ten_pairs(), (9, 1, 1), seed=0)


@settings(max_examples=100)
@given(st.integers(0, 40), st.integers(0, 2**32), st.data())
def test_split_partitions(n, seed, data):
    pairs = [DocumentPair(f"id{i}", "s.", "t.") for i in range(n)]
    tr = data.draw(st.integers(0, n))
    va = data.draw(st.integers(0, n - tr))
    te = data.draw(st.integers(0, n - tr - va))
    splits = split_corpus(pairs, (tr, va, te), seed)
    ids = [set(s.ids) for s in splits]
    assert sum(len(x) for x in ids) == tr + va + te
    assert not (ids[0] & ids[1] or ids[0] & ids[2] or ids[1] & ids[2])
    assert set().union(*ids) <= {p.id for p in pairs}


def test_statistics_hand_example():
    split = CorpusSplit("train", (DocumentPair("a", "The cat sat. The dog ran.", "The cat sat."),))
    stats = compute_statistics(split)
    assert stats.n_abstracts == 1
    assert stats.source.avg_length_words == 6
    assert stats.source.vocabulary_size == 5
    assert stats.target.vocabulary_size == 3


def test_statistics_identical_documents_share_vocabulary():
    pair = DocumentPair("a", "Probiotics help children. They reduce diarrhoea.", "Probiotics help.")
    one = compute_statistics(CorpusSplit("test", (pair,)))
    two = compute_statistics(CorpusSplit("test", (pair, DocumentPair("b", pair.source, pair.target))))
    assert two.source.vocabulary_size == one.source.vocabulary_size
    assert two.source.flesch_kincaid == one.source.flesch_kincaid


def test_statistics_empty_split():
    with pytest.raises(ValueError):
        compute_statistics(CorpusSplit("test", ()))


def _random_pairs(rng, n):
    from oracles import random_document

    return [
        DocumentPair(f"id{i}", random_document(rng, rng.randint(2, 6)), random_document(rng, rng.randint(1, 3)))
        for i in range(n)
    ]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_statistics_permutation_invariant_and_vocab_monotone(seed):
    rng = random.Random(seed)
    pairs = _random_pairs(rng, 8)
    shuffled = pairs[:]
    rng.shuffle(shuffled)
    full = compute_statistics(CorpusSplit("train", pairs))
    assert compute_statistics(CorpusSplit("train", shuffled)) == full
    sub = compute_statistics(CorpusSplit("train", pairs[:3]))
    assert sub.source.vocabulary_size <= full.source.vocabulary_size
    assert full.source.avg_length_words > 0


def test_statistics_serialization():
    split = CorpusSplit("validation", tuple(_random_pairs(random.Random(1), 3)))
    stats = compute_statistics(split)
    assert SplitStatistics.from_dict(json.loads(json.dumps(stats.to_dict()))) == stats
    lines = statistics_csv([stats]).splitlines()
    assert lines[0] == "split,side,n,avg_words,vocab,fk,gunning,coleman_liau"
    assert lines[1].startswith("validation,source,3,")
    assert lines[2].startswith("validation,target,3,")
