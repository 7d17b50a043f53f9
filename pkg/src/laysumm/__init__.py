"""Corpus, metric and baseline tooling for plain-language summarization of biomedical reviews."""

from .corpus import CorpusSplit, DocumentPair, compute_statistics, filter_by_length, load_corpus, split_corpus
from .corruption import CorruptionConfig, DenoisingPair, generate_pairs, shuffle_sentences, substitute_spans
from .extractive import ExtractiveSummary, lead_k, oracle_exhaustive, oracle_greedy
from .harness import CandidateSet, EvaluationReport, evaluate, validate_lengths
from .humaneval import make_human_eval_packets
from .readability import ReadabilityCounts, ReadabilityReport, coleman_liau, flesch_kincaid, gunning_fog, score_text
from .rouge import RougeConfig, RougeLMode, RougeScore, rouge_l, rouge_n
from .textproc import TokenizedText, count_syllables, is_complex_word, ngrams, segment_sentences, tokenize_words

__version__ = "0.1.0"
