"""
Настольные версии экспериментов: игрушечная грамматика, пресет desk.

Модели обучаются один раз на модуль; весь модуль помечен slow.
"""

import pytest

from combine.loglinear import LogLinearCombo
from combine.tuning import tune_weights
from config import BENCH_BEAMS
from core.bag import bag_of_words
from core.toy_grammar import generate_toy_corpus
from core.vocabulary import build_vocab
from evaluation.benchmark import BenchConfig, benchmark_decode
from evaluation.bleu import corpus_bleu
from neural.training import TrainingConfig, train_model
from ngram_lm.training import train_ngram
from ngram_lm.unigrams import unigram_table_from_corpus
from scorers.neural import NeuralScorer
from scorers.ngram import NGramScorer
from search.batch import decode_corpus
from search.hypothesis import BeamConfig

pytestmark = pytest.mark.slow

SEEDS = (1, 2, 3)


def join_sentences(sentences, width):
    """Склеить подряд идущие предложения по width в одну строку."""
    return [sum(sentences[i:i + width], []) for i in range(0, len(sentences) - width + 1, width)]


def decode_and_score(scorer, bags, references, beam_size, heuristic='none', unigrams=None):
    """(BLEU, средний s лучших гипотез)."""
    results = decode_corpus(bags, scorer, BeamConfig(beam_size=beam_size, heuristic=heuristic), unigrams)
    hypotheses = [scorer.vocab.decode(result.best.prefix) for result in results]
    mean_score = sum(result.best.score for result in results) / len(results)
    return corpus_bleu(hypotheses, references).bleu, mean_score


@pytest.fixture(scope='module')
def desk():
    train = generate_toy_corpus(2000, seed=101)
    dev = generate_toy_corpus(100, seed=102)
    test = generate_toy_corpus(200, seed=103)
    vocab = build_vocab(train, 200)
    return {
        'vocab': vocab,
        'train': [vocab.encode(s) for s in train],
        'dev': [vocab.encode(s) for s in dev],
        'test': [vocab.encode(s) for s in test],
        'dev_refs': dev,
        'test_refs': test,
    }


@pytest.fixture(scope='module')
def desk_models(desk):
    """seed -> {'rnnlm': (scorer, history), 'bag2seq': (scorer, history)}."""
    models = {}
    for seed in SEEDS:
        config = TrainingConfig(epochs=4, learning_rate=0.5, seed=seed)
        models[seed] = {}
        for arch in ('rnnlm', 'bag2seq'):
            params, history = train_model(arch, desk['train'], desk['vocab'], config, desk['dev'])
            models[seed][arch] = (NeuralScorer(params, desk['vocab'], name=arch), history)
    return models


class TestSmallBeam:
    def test_bag2seq_uses_the_bag(self, desk_models):
        for seed in SEEDS:
            rnnlm_ppl = desk_models[seed]['rnnlm'][1].records[-1].dev_perplexity
            bag2seq_ppl = desk_models[seed]['bag2seq'][1].records[-1].dev_perplexity
            assert bag2seq_ppl < rnnlm_ppl, seed

    def test_bag2seq_beats_rnnlm_at_beam_5(self, desk, desk_models):
        bags = [bag_of_words(s) for s in desk['test']]
        wins = 0
        for seed in SEEDS:
            rnnlm_bleu, _ = decode_and_score(desk_models[seed]['rnnlm'][0], bags, desk['test_refs'], 5)
            bag2seq_bleu, _ = decode_and_score(desk_models[seed]['bag2seq'][0], bags, desk['test_refs'], 5)
            wins += bag2seq_bleu > rnnlm_bleu
        assert wins >= 2

    def test_f_helps_rnnlm_at_beam_5(self, desk, desk_models):
        bags = [bag_of_words(s) for s in desk['test']]
        unigrams = unigram_table_from_corpus(desk['train'], len(desk['vocab']))
        wins = 0
        for seed in SEEDS:
            rnnlm = desk_models[seed]['rnnlm'][0]
            plain, _ = decode_and_score(rnnlm, bags, desk['test_refs'], 5)
            with_f, _ = decode_and_score(rnnlm, bags, desk['test_refs'], 5, 'f', unigrams)
            wins += with_f > plain
        assert wins >= 2


class TestHeuristicG:
    def test_g_beats_none_for_ngram_at_beam_64(self, desk):
        # Одиночные игрушечные предложения луч 64 упорядочивает почти точно,
        # поэтому строки склеены по три предложения
        vocab = desk['vocab']
        model = train_ngram(join_sentences(desk['train'], 3), len(vocab), vocab.bos_id, vocab.eos_id,
                            vocab.unk_id, order=3, smoothing='witten_bell')
        scorer = NGramScorer(model, vocab, name='tri')
        references = join_sentences(generate_toy_corpus(501, seed=104), 3)
        bags = [bag_of_words(vocab.encode(reference)) for reference in references]

        none_bleu, none_score = decode_and_score(scorer, bags, references, 64, 'none')
        g_bleu, g_score = decode_and_score(scorer, bags, references, 64, 'g')
        assert g_bleu >= none_bleu + 1.0
        assert g_score >= none_score


class TestCombination:
    def test_tuned_combination_keeps_up_with_best_member(self, desk, desk_models):
        rnnlm, bag2seq = desk_models[1]['rnnlm'][0], desk_models[1]['bag2seq'][0]
        dev_bags = [bag_of_words(s) for s in desk['dev']]
        tuned = tune_weights(LogLinearCombo([rnnlm, bag2seq]), dev_bags, desk['dev_refs'],
                             BeamConfig(beam_size=5), budget=12, seed=1)
        assert tuned.bleu >= tuned.baseline_bleu

        bags = [bag_of_words(s) for s in desk['test']]
        singles = [decode_and_score(scorer, bags, desk['test_refs'], 5)[0] for scorer in (rnnlm, bag2seq)]
        combined, _ = decode_and_score(LogLinearCombo([rnnlm, bag2seq], tuned.weights), bags, desk['test_refs'], 5)
        assert combined >= max(singles) - 0.2


class TestSpeed:
    def test_time_grows_with_beam_and_combination_is_faster(self, desk, desk_models):
        rnnlm, bag2seq = desk_models[1]['rnnlm'][0], desk_models[1]['bag2seq'][0]
        combo = LogLinearCombo([rnnlm, bag2seq])
        bags = [bag_of_words(line) for line in join_sentences(desk['test'][:16], 2)]
        configurations = [BenchConfig(scorer, BeamConfig(beam_size=beam_size))
                          for scorer in (rnnlm, combo) for beam_size in BENCH_BEAMS]
        report = benchmark_decode(bags, configurations)

        assert all(row.error is None for row in report.rows)
        for name, points in report.series().items():
            seconds = [s for _, s in points]
            assert all(a < b for a, b in zip(seconds, seconds[1:])), (name, seconds)
        assert 2 * report.seconds(combo.name, 64) <= report.seconds(rnnlm.name, 512)


class TestMemorization:
    def test_bag2seq_recovers_training_sentences_greedily(self):
        # Раздельные служебные слова: правильный порядок однозначен по мешку
        sentences = generate_toy_corpus(500, seed=11, shared_function_words=False)
        vocab = build_vocab(sentences, 200)
        corpus = [vocab.encode(s) for s in sentences]
        params, _ = train_model('bag2seq', corpus, vocab, TrainingConfig(epochs=15, learning_rate=0.5, seed=1))
        scorer = NeuralScorer(params, vocab)

        results = decode_corpus([bag_of_words(s) for s in corpus], scorer, BeamConfig(beam_size=1))
        recovered = sum(list(result.best.prefix) == sentence for result, sentence in zip(results, corpus))
        assert recovered >= 0.9 * len(corpus)
