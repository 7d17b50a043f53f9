import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laysumm.rouge import (
    RougeConfig,
    RougeLMode,
    RougeScore,
    lcs_length,
    rouge_l,
    rouge_n,
    score_all,
    union_lcs_score,
)
from oracles import dp_lcs, f1_fraction, naive_clipped_overlap

RAW = RougeConfig(stemming=False, lowercase=False)
WHOLE = RougeConfig(stemming=False, lowercase=False, rouge_l_mode="whole_text_lcs")

tokens = st.lists(st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=30)


def test_identity_all_n():
    t = "Probiotics reduce the risk of diarrhoea in children. Evidence is moderate."
    for n in range(1, 11):
        s = rouge_n(t, t, n)
        assert (s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0)
    for mode in RougeLMode:
        assert rouge_l(t, t, RougeConfig(rouge_l_mode=mode)).f1 == 1.0


def test_disjoint_is_zero():
    s = rouge_n("alpha beta gamma", "delta epsilon", 1)
    assert (s.precision, s.recall, s.f1) == (0.0, 0.0, 0.0)
    assert rouge_l("alpha beta gamma", "delta epsilon").f1 == 0.0


def test_hand_unigram_example():
    s = rouge_n("the cat sat", "the cat ran", 1, RougeConfig(stemming=False))
    assert s.precision == pytest.approx(2 / 3)
    assert s.recall == pytest.approx(2 / 3)
    assert s.f1 == pytest.approx(2 / 3)


def test_hand_lcs_example():
    s = rouge_l("a b c d", "a c b d", WHOLE)
    assert (s.precision, s.recall, s.f1) == (0.75, 0.75, 0.75)


def test_stemming_and_lowercase_switches():
    cand, ref = "Trials Running", "trial running"
    assert rouge_n(cand, ref, 1).f1 == 1.0
    assert rouge_n(cand, ref, 1, RougeConfig(stemming=False)).f1 == 0.5
    assert rouge_n(cand, ref, 1, RougeConfig(stemming=False, lowercase=False)).f1 == 0.0


def test_errors():
    with pytest.raises(ValueError):
        rouge_n("", "x", 1)
    with pytest.raises(ValueError):
        rouge_n("x", "  ", 1)
    with pytest.raises(ValueError):
        rouge_n("x", "x", 0)
    with pytest.raises(ValueError):
        rouge_l("x", "")
    with pytest.raises(ValueError):
        RougeConfig(rouge_l_mode="bogus")


def test_fewer_tokens_than_n():
    s = rouge_n("one", "one two", 2)
    assert (s.precision, s.recall, s.f1) == (0.0, 0.0, 0.0)


def test_summary_level_union_example():
    # classic worked example for union LCS: ref sentence w1..w5, two candidate sentences
    ref = [["w1", "w2", "w3", "w4", "w5"]]
    cand = [["w1", "w2", "w6", "w7", "w8"], ["w1", "w3", "w8", "w9", "w5"]]
    s = union_lcs_score(cand, ref)
    # union of {w1,w2} and {w1,w3,w5} = 4 reference tokens
    assert s.recall == pytest.approx(4 / 5)
    assert s.precision == pytest.approx(4 / 10)


def test_summary_level_clipping_keeps_precision_bounded():
    # one candidate token matched by two reference sentences is only credited once
    s = rouge_l("x.", "x. x.", RougeConfig(stemming=False))
    assert s.precision == 1.0
    assert s.recall == 0.5


def test_score_all_matches_individual_calls():
    cand = "Vaccines reduced influenza in adults. Pain was lower."
    ref = "In adults, vaccination reduced influenza. Evidence on pain was low."
    for cfg in (RougeConfig(), WHOLE):
        both = score_all(cand, ref, cfg)
        assert both["rouge1"] == rouge_n(cand, ref, 1, cfg)
        assert both["rouge2"] == rouge_n(cand, ref, 2, cfg)
        assert both["rougeL"] == rouge_l(cand, ref, cfg)


@settings(max_examples=400)
@given(tokens, tokens, st.integers(1, 3))
def test_rouge_n_equals_naive_oracle(c, r, n):
    s = rouge_n(" ".join(c), " ".join(r), n, RAW)
    overlap, nc, nr = naive_clipped_overlap(c, r, n)
    assert s.precision == (overlap / nc if nc else 0.0)
    assert s.recall == (overlap / nr if nr else 0.0)
    assert s.f1 == float(f1_fraction(overlap, nc, nr))


@settings(max_examples=400)
@given(tokens, tokens)
def test_whole_text_rouge_l_equals_dp_oracle(c, r):
    s = rouge_l(" ".join(c), " ".join(r), WHOLE)
    lcs = dp_lcs(c, r)
    assert lcs_length(c, r) == lcs
    assert s.precision == lcs / len(c)
    assert s.recall == lcs / len(r)
    assert s.f1 == float(f1_fraction(lcs, len(c), len(r)))


def test_random_ten_token_pairs_match_dp():
    rng = random.Random(10)
    for _ in range(500):
        a = [rng.choice("abcdef") for _ in range(10)]
        b = [rng.choice("abcdef") for _ in range(10)]
        assert lcs_length(a, b) == dp_lcs(a, b)


@settings(max_examples=300)
@given(tokens, st.integers(1, 4))
def test_identity_whenever_enough_tokens(t, n):
    text = " ".join(t)
    if len(t) >= n:
        assert rouge_n(text, text, n, RAW).f1 == 1.0


sentences = st.lists(tokens.map(lambda ws: " ".join(ws) + "."), min_size=1, max_size=4).map(" ".join)


@settings(max_examples=300)
@given(sentences, sentences, st.sampled_from(list(RougeLMode)))
def test_scores_bounded_and_f1_between_p_and_r(c, r, mode):
    cfg = RougeConfig(stemming=False, rouge_l_mode=mode)
    for s in (rouge_n(c, r, 1, cfg), rouge_n(c, r, 2, cfg), rouge_l(c, r, cfg)):
        for v in (s.precision, s.recall, s.f1):
            assert 0.0 <= v <= 1.0
        assert min(s.precision, s.recall) - 1e-12 <= s.f1 <= max(s.precision, s.recall) + 1e-12
        if s.precision + s.recall > 0:
            assert s.f1 == pytest.approx(2 * s.precision * s.recall / (s.precision + s.recall), abs=1e-12)


def test_from_counts_zero():
    assert RougeScore.from_counts(0, 0, 0) == RougeScore(0.0, 0.0, 0.0)
