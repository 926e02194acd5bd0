import math

import numpy as np
import pytest

from combine.loglinear import LogLinearCombo
from core.bag import Bag, bag_of_words
from core.toy_grammar import generate_toy_corpus
from evaluation.search_errors import measure_search_errors
from ngram_lm.unigrams import UnigramTable, unigram_table_from_model
from scorers.ngram import NGramScorer
from search.batch import decode_corpus
from search.beam import beam_search
from search.exhaustive import distinct_permutations, exhaustive_decode
from search.heuristics import EstimateTable, heuristic_f, heuristic_g, update_estimates
from search.hypothesis import BeamConfig, Hypothesis, constrained_candidates
from search.recombination import recombine
from utils.errors import DecodeError, SearchInvariantError

HUGE_BEAM = 10000


@pytest.fixture
def abc_scorer(abc_bigram, abc_vocab):
    return NGramScorer(abc_bigram, abc_vocab, name='bi')


@pytest.fixture(scope='module')
def short_bags(toy_corpus):
    bags = [bag_of_words(sentence) for sentence in toy_corpus if len(sentence) <= 6]
    return bags[:4]


@pytest.fixture(scope='module')
def toy_unigrams(toy_trigram):
    return unigram_table_from_model(toy_trigram)


@pytest.fixture(scope='module')
def held_out_corpus(toy_vocab):
    return [toy_vocab.encode(tokens) for tokens in generate_toy_corpus(1000, seed=21)]


@pytest.fixture(scope='module')
def oracle_bags(toy_vocab):
    sentences = [toy_vocab.encode(tokens) for tokens in generate_toy_corpus(600, seed=23)]
    return [bag_of_words(sentence) for sentence in sentences if len(sentence) <= 7][:200]


@pytest.fixture(scope='module')
def all_scorers(toy_scorer, toy_neural_scorers):
    scorers = [toy_scorer] + [toy_neural_scorers[arch] for arch in ('nplm', 'rnnlm', 'bag2seq')]
    scorers.append(LogLinearCombo([toy_neural_scorers['rnnlm'], toy_neural_scorers['bag2seq']], [1.0, 0.5]))
    return scorers


class TestPermutations:
    def test_repeated_words(self):
        assert list(distinct_permutations(bag_of_words([3, 3, 4]))) == [(3, 3, 4), (3, 4, 3), (4, 3, 3)]

    def test_distinct_words(self):
        permutations = list(distinct_permutations(bag_of_words([3, 4, 5])))
        assert len(permutations) == 6
        assert permutations == sorted(permutations)

    def test_empty_bag(self):
        assert list(distinct_permutations(Bag())) == [()]


class TestHandComputedBigram:
    def test_two_word_bag_ranking(self, abc_scorer):
        result = beam_search(bag_of_words([3, 4]), abc_scorer, BeamConfig(beam_size=2))
        assert [hyp.prefix for hyp in result.hypotheses] == [(3, 4), (4, 3)]
        # a b: P(a|<s>) P(b|a) P(</s>|b); b a: P(b|<s>) P(a|b) P(</s>|a)
        np.testing.assert_allclose(result.hypotheses[0].score,
                                   math.log(158 / 325) + math.log(93 / 260) + math.log(103 / 260), rtol=1e-9)
        np.testing.assert_allclose(result.hypotheses[1].score,
                                   math.log(93 / 325) + math.log(7 / 65) + math.log(19 / 130), rtol=1e-9)

    def test_exhaustive_agrees(self, abc_scorer):
        best = exhaustive_decode(bag_of_words([3, 4]), abc_scorer)
        assert best.prefix == (3, 4)

    def test_single_word_bag(self, abc_scorer):
        result = beam_search(bag_of_words([5]), abc_scorer, BeamConfig(beam_size=3))
        assert [hyp.prefix for hyp in result.hypotheses] == [(5,)]
        assert result.best.complete

    def test_renormalized_single_word_keeps_only_end_of_sentence(self, abc_scorer, abc_bigram):
        result = beam_search(bag_of_words([4]), abc_scorer, BeamConfig(renormalize=True))
        np.testing.assert_allclose(result.best.score, abc_bigram.logprob(1, [4]), rtol=1e-12)


class TestBeamAgainstOracle:
    @pytest.mark.parametrize('heuristic', ['none', 'f', 'g'])
    @pytest.mark.parametrize('renormalize', [False, True])
    def test_unpruned_beam_matches_exhaustive(self, short_bags, toy_scorer, toy_unigrams, heuristic, renormalize):
        config = BeamConfig(beam_size=HUGE_BEAM, heuristic=heuristic, renormalize=renormalize)
        for bag in short_bags:
            best = beam_search(bag, toy_scorer, config, toy_unigrams).best
            oracle = exhaustive_decode(bag, toy_scorer, renormalize=renormalize)
            assert best.prefix == oracle.prefix
            assert best.score == oracle.score

    def test_recombination_with_trigram_context_is_exact(self, short_bags, toy_scorer):
        config = BeamConfig(beam_size=HUGE_BEAM, recombination=True, recombination_k=2)
        for bag in short_bags:
            result = beam_search(bag, toy_scorer, config)
            oracle = exhaustive_decode(bag, toy_scorer)
            np.testing.assert_allclose(result.best.score, oracle.score, atol=1e-9)
            assert result.stats.recombined > 0

    def test_no_search_errors_without_pruning(self, short_bags, toy_scorer):
        report = measure_search_errors(short_bags, toy_scorer, BeamConfig(beam_size=HUGE_BEAM))
        assert report.search_errors == 0
        assert report.bags == len(short_bags)
        assert report.rate == 0.0


class TestBeamOutputs:
    @pytest.mark.parametrize('beam_size', [1, 3, 10])
    def test_outputs_are_permutations(self, toy_corpus, toy_scorer, beam_size):
        for sentence in toy_corpus[:5]:
            bag = bag_of_words(sentence)
            result = beam_search(bag, toy_scorer, BeamConfig(beam_size=beam_size))
            assert 1 <= len(result.hypotheses) <= beam_size
            for hyp in result.hypotheses:
                assert bag_of_words(hyp.prefix) == bag

    def test_nbest_sorted_and_distinct(self, toy_corpus, toy_scorer):
        result = beam_search(bag_of_words(toy_corpus[0]), toy_scorer, BeamConfig(beam_size=8))
        scores = [hyp.score for hyp in result.hypotheses]
        assert scores == sorted(scores, reverse=True)
        prefixes = [hyp.prefix for hyp in result.hypotheses]
        assert len(set(prefixes)) == len(prefixes)

    def test_deterministic(self, toy_corpus, toy_scorer):
        bag = bag_of_words(toy_corpus[2])
        first = beam_search(bag, toy_scorer, BeamConfig(beam_size=4))
        second = beam_search(bag, toy_scorer, BeamConfig(beam_size=4))
        assert [h.prefix for h in first.hypotheses] == [h.prefix for h in second.hypotheses]

    def test_g_is_an_upper_bound(self, toy_corpus, toy_scorer):
        for sentence in toy_corpus[:5]:
            result = beam_search(bag_of_words(sentence), toy_scorer, BeamConfig(beam_size=5, heuristic='g'))
            assert result.stats.max_upper_bound_gap <= 1e-12

    def test_f_vanishes_on_complete_hypotheses(self, toy_corpus, toy_scorer, toy_unigrams):
        result = beam_search(bag_of_words(toy_corpus[0]), toy_scorer, BeamConfig(beam_size=5, heuristic='f'),
                             toy_unigrams)
        assert result.stats.max_f_residual == 0.0

    def test_empty_bag_rejected(self, toy_scorer):
        with pytest.raises(ValueError):
            beam_search(Bag(), toy_scorer)

    def test_f_needs_unigrams(self, toy_scorer):
        with pytest.raises(ValueError):
            beam_search(bag_of_words([3, 4]), toy_scorer, BeamConfig(heuristic='f'))

    @pytest.mark.parametrize('config', [BeamConfig(beam_size=0), BeamConfig(heuristic='h'),
                                        BeamConfig(recombination_k=-1)])
    def test_invalid_config(self, toy_scorer, config):
        with pytest.raises(ValueError):
            beam_search(bag_of_words([3, 4]), toy_scorer, config)


class TestInvariantsAtScale:
    @pytest.mark.slow
    def test_every_output_is_a_permutation(self, held_out_corpus, all_scorers, toy_unigrams):
        beams = (1, 5, 64)
        decoded = 0
        for index, sentence in enumerate(held_out_corpus):
            bag = bag_of_words(sentence)
            beam_size = beams[index % len(beams)]
            for scorer in all_scorers:
                for heuristic in ('none', 'f', 'g'):
                    config = BeamConfig(beam_size=beam_size, heuristic=heuristic)
                    result = beam_search(bag, scorer, config, toy_unigrams)
                    for hyp in result.hypotheses:
                        assert bag_of_words(hyp.prefix) == bag, (index, scorer.name, heuristic, beam_size)
                    if heuristic == 'g':
                        assert result.stats.max_upper_bound_gap <= 1e-9
                    if heuristic == 'f':
                        assert result.stats.max_f_residual == 0.0
                    decoded += 1
        assert decoded == 1000 * len(all_scorers) * 3

    def test_g_bound_for_every_scorer(self, held_out_corpus, all_scorers):
        config = BeamConfig(beam_size=5, heuristic='g')
        for scorer in all_scorers:
            gaps = [beam_search(bag_of_words(sentence), scorer, config).stats.max_upper_bound_gap
                    for sentence in held_out_corpus[:200]]
            assert max(gaps) <= 1e-9, scorer.name

    @pytest.mark.slow
    def test_bigram_oracle_with_recombination(self, oracle_bags, toy_bigram_scorer):
        assert len(oracle_bags) == 200
        config = BeamConfig(beam_size=512, recombination=True, recombination_k=1)
        report = measure_search_errors(oracle_bags, toy_bigram_scorer, config)
        assert report.bags == 200
        assert report.rate <= 0.01

    @pytest.mark.slow
    def test_bigram_oracle_when_beam_holds_every_permutation(self, oracle_bags, toy_bigram_scorer):
        report = measure_search_errors(oracle_bags, toy_bigram_scorer, BeamConfig(beam_size=math.factorial(7)))
        assert report.bags == 200
        assert report.search_errors == 0

    @pytest.mark.slow
    def test_mean_score_grows_with_beam(self, held_out_corpus, toy_scorer):
        bags = [bag_of_words(sentence) for sentence in held_out_corpus[:100]]
        means = []
        for beam_size in (1, 5, 64, 512):
            results = decode_corpus(bags, toy_scorer, BeamConfig(beam_size=beam_size))
            means.append(sum(result.best.score for result in results) / len(results))
        for smaller, larger in zip(means, means[1:]):
            assert larger >= smaller - 1e-9, means


class TestExhaustive:
    def test_bag_too_large(self, toy_scorer):
        with pytest.raises(ValueError):
            exhaustive_decode(bag_of_words(range(3, 12)), toy_scorer)

    def test_empty_bag(self, toy_scorer):
        with pytest.raises(ValueError):
            exhaustive_decode(Bag(), toy_scorer)


class TestHeuristics:
    def test_estimates_keep_maximum(self):
        estimates = EstimateTable()
        update_estimates(estimates, {3: 0.3})
        np.testing.assert_allclose(estimates.probability(3), 0.3)
        update_estimates(estimates, {3: 0.2})
        np.testing.assert_allclose(estimates.probability(3), 0.3)
        update_estimates(estimates, {3: 0.5, 4: 0.0})
        np.testing.assert_allclose(estimates.probability(3), 0.5)
        assert estimates.probability(4) == 0.0
        assert len(estimates) == 1

    @pytest.mark.parametrize('probability', [-0.1, 1.5])
    def test_estimates_reject_non_probabilities(self, probability):
        with pytest.raises(ValueError):
            update_estimates(EstimateTable(), {3: probability})

    def test_g_counts_repeated_words(self):
        estimates = EstimateTable()
        update_estimates(estimates, {3: 0.4})
        hyp = Hypothesis((3, 3), Bag(), -5.0)
        np.testing.assert_allclose(heuristic_g(hyp, estimates), 2 * math.log(0.4))

    def test_g_of_empty_prefix(self):
        assert heuristic_g(Hypothesis((), bag_of_words([3]), 0.0), EstimateTable()) == 0.0

    def test_g_without_estimate(self):
        with pytest.raises(SearchInvariantError):
            heuristic_g(Hypothesis((3,), Bag(), -1.0), EstimateTable())

    def test_f_sums_remaining_unigrams(self):
        unigrams = UnigramTable({3: -1.0}, floor=-5.0)
        hyp = Hypothesis((4,), bag_of_words([3, 3]), -1.0)
        assert heuristic_f(hyp, unigrams) == -2.0
        assert heuristic_f(hyp, unigrams, weight=0.5) == -1.0
        assert heuristic_f(Hypothesis((4, 3, 3), Bag(), -3.0), unigrams) == 0.0

    def test_f_uses_floor_for_unseen(self):
        unigrams = UnigramTable({3: -1.0}, floor=-5.0)
        assert heuristic_f(Hypothesis((), bag_of_words([3, 7]), 0.0), unigrams) == -6.0


class TestRecombination:
    def test_keeps_best_score(self):
        better = Hypothesis((3, 4), bag_of_words([5]), -3.0)
        worse = Hypothesis((4, 3), bag_of_words([5]), -3.5)
        assert recombine([worse, better], k=0) == [better]

    def test_different_tails_survive(self):
        first = Hypothesis((3, 4), bag_of_words([5]), -3.0)
        second = Hypothesis((4, 3), bag_of_words([5]), -3.5)
        assert recombine([first, second], k=1) == [first, second]

    def test_tie_goes_to_smaller_prefix(self):
        first = Hypothesis((4, 3, 5), bag_of_words([6]), -2.0)
        second = Hypothesis((3, 4, 5), bag_of_words([6]), -2.0)
        assert recombine([first, second], k=1) == [second]
        assert recombine([second, first], k=1) == [second]

    def test_different_remaining_bags_never_merge(self):
        first = Hypothesis((5, 4), bag_of_words([3]), -1.0)
        second = Hypothesis((3, 4), bag_of_words([5]), -2.0)
        assert len(recombine([first, second], k=1)) == 2

    def test_candidates_of_complete_hypothesis(self):
        assert constrained_candidates(Hypothesis((), bag_of_words([4, 3, 4]), 0.0)) == [3, 4]
        with pytest.raises(ValueError):
            constrained_candidates(Hypothesis((3,), Bag(), -1.0))


class TestDecodeCorpus:
    def test_threads_preserve_order(self, toy_corpus, toy_scorer):
        bags = [bag_of_words(sentence) for sentence in toy_corpus[:6]]
        config = BeamConfig(beam_size=3)
        serial = decode_corpus(bags, toy_scorer, config, workers=1)
        parallel = decode_corpus(bags, toy_scorer, config, workers=2)
        assert [r.best.prefix for r in serial] == [r.best.prefix for r in parallel]
        assert [r.best.score for r in serial] == [r.best.score for r in parallel]

    @pytest.mark.parametrize('workers', [1, 2])
    def test_error_names_sentence(self, toy_corpus, toy_scorer, workers):
        bags = [bag_of_words(toy_corpus[0]), Bag(), bag_of_words(toy_corpus[1])]
        with pytest.raises(DecodeError) as info:
            decode_corpus(bags, toy_scorer, BeamConfig(beam_size=2), workers=workers)
        assert info.value.sentence_index == 1
        assert info.value.exit_code == 1

    def test_workers_must_be_positive(self, toy_scorer):
        with pytest.raises(ValueError):
            decode_corpus([bag_of_words([3])], toy_scorer, workers=0)
