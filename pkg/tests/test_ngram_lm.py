import math

import numpy as np
import pytest

from core.vocabulary import Vocabulary
from ngram_lm.arpa import export_arpa, import_arpa, read_arpa, write_arpa
from ngram_lm.model import perplexity
from ngram_lm.training import count_ngrams, train_ngram
from ngram_lm.unigrams import unigram_table_from_corpus, unigram_table_from_model
from utils.errors import ArpaFormatError, DataError, SmoothingError, VocabularyMismatchError


def _total_mass(model, history, vocab_size):
    return sum(10.0 ** model.logprob10(w, history) for w in range(vocab_size))


class TestCounting:
    def test_padding_and_marginals(self, abc_corpus):
        counts = count_ngrams(abc_corpus, 2, 0, 1)
        assert counts[1][(0, 3)] == 2
        assert counts[1][(4, 1)] == 1
        assert counts[0][(1,)] == 3
        assert sum(counts[0].values()) == sum(counts[1].values())


class TestWittenBell:
    def test_golden_conditional(self, abc_bigram):
        # P(c|b) = (1 + 2 * P_wb(c)) / 4, P_wb(c) = (2 + 4/5) / 13
        np.testing.assert_allclose(10.0 ** abc_bigram.logprob10(5, [4]), 93 / 260, rtol=1e-12)

    def test_unseen_bigram_backs_off(self, abc_bigram):
        # P(a|b) = gamma(b) * P_wb(a) = 1/2 * 14/65
        np.testing.assert_allclose(10.0 ** abc_bigram.logprob10(3, [4]), 7 / 65, rtol=1e-12)

    @pytest.mark.parametrize('history', [[0], [3], [4], [5], [2], []])
    def test_distributions_normalize(self, abc_bigram, history):
        np.testing.assert_allclose(_total_mass(abc_bigram, history, 6), 1.0, atol=1e-9)

    def test_trigram_normalizes_on_toy_corpus(self, toy_trigram, toy_vocab, toy_corpus):
        sentence = toy_corpus[0]
        for i in range(len(sentence)):
            history = [toy_vocab.bos_id] * 2 + sentence[:i]
            np.testing.assert_allclose(_total_mass(toy_trigram, history, len(toy_vocab)), 1.0, atol=1e-9)
        unseen = [toy_vocab.unk_id, toy_vocab.id_of('.')]
        np.testing.assert_allclose(_total_mass(toy_trigram, unseen, len(toy_vocab)), 1.0, atol=1e-9)


class TestSmoothingChoice:
    def test_kneser_ney_rejects_tiny_corpus(self, abc_vocab, abc_corpus):
        with pytest.raises(SmoothingError, match='witten_bell'):
            train_ngram(abc_corpus, len(abc_vocab), 0, 1, 2, order=2, smoothing='kneser_ney')

    def test_auto_falls_back_to_witten_bell(self, abc_vocab, abc_corpus):
        model = train_ngram(abc_corpus, len(abc_vocab), 0, 1, 2, order=2, smoothing='auto')
        assert model.smoothing == 'witten_bell'

    def test_auto_model_normalizes(self, toy_corpus, toy_vocab):
        model = train_ngram(toy_corpus, len(toy_vocab), toy_vocab.bos_id, toy_vocab.eos_id, toy_vocab.unk_id,
                            order=3, smoothing='auto')
        history = [toy_vocab.bos_id, toy_vocab.bos_id]
        np.testing.assert_allclose(_total_mass(model, history, len(toy_vocab)), 1.0, atol=1e-9)

    def test_empty_corpus(self):
        with pytest.raises(DataError):
            train_ngram([], 6, 0, 1, 2, order=2)

    def test_bad_order(self, abc_corpus):
        with pytest.raises(ValueError):
            train_ngram(abc_corpus, 6, 0, 1, 2, order=0)


class TestPerplexity:
    def test_held_out_with_unknown_is_finite(self, abc_bigram):
        value = perplexity(abc_bigram, [[3, 2, 5], [5, 4]])
        assert math.isfinite(value)
        assert value > 1.0

    def test_training_perplexity_below_uniform(self, toy_trigram, toy_corpus, toy_vocab):
        assert perplexity(toy_trigram, toy_corpus) < len(toy_vocab)


class TestArpa:
    def test_round_trip_preserves_scores(self, toy_trigram, toy_vocab, toy_corpus, tmp_path):
        path = str(tmp_path / 'tri.arpa')
        write_arpa(toy_trigram, toy_vocab, path)
        loaded = read_arpa(path, toy_vocab)
        assert loaded.order == 3
        assert loaded.counts() == toy_trigram.counts()
        sentence = toy_corpus[1]
        history = [toy_vocab.bos_id] * 2 + sentence[:2]
        for w in range(len(toy_vocab)):
            np.testing.assert_allclose(loaded.logprob10(w, history), toy_trigram.logprob10(w, history),
                                       atol=1e-9)
        np.testing.assert_allclose(perplexity(loaded, toy_corpus[:20]), perplexity(toy_trigram, toy_corpus[:20]),
                                   rtol=1e-8)

    def test_header_counts_and_fingerprint(self, abc_bigram, abc_vocab):
        text = export_arpa(abc_bigram, abc_vocab)
        assert text.startswith('# vocabulary-sha256: ' + abc_vocab.fingerprint())
        assert '\\data\\' in text
        assert text.rstrip().endswith('\\end\\')

    def test_fingerprint_mismatch(self, abc_bigram, abc_vocab):
        text = export_arpa(abc_bigram, abc_vocab)
        other = Vocabulary(['<s>', '</s>', '<unk>', 'a', 'b', 'd'])
        with pytest.raises(VocabularyMismatchError):
            import_arpa(text, other)

    def test_foreign_file_without_fingerprint(self, abc_vocab):
        text = '\n'.join([
            '\\data\\', 'ngram 1=3', '',
            '\\1-grams:', '-0.5\t</s>', '-99\t<s>\t-0.3', '-0.2\ta', '',
            '\\end\\', '',
        ])
        model = import_arpa(text, abc_vocab)
        assert model.order == 1
        np.testing.assert_allclose(model.logprob10(3, []), -0.2)
        assert model.logprob10(5, []) == model.floor

    def test_missing_end_marker(self, abc_bigram, abc_vocab):
        text = export_arpa(abc_bigram, abc_vocab).replace('\\end\\', '')
        with pytest.raises(ArpaFormatError):
            import_arpa(text, abc_vocab)

    def test_declared_count_mismatch(self, abc_bigram, abc_vocab):
        text = export_arpa(abc_bigram, abc_vocab)
        broken = text.replace(f"ngram 2={abc_bigram.counts()[1]}", f"ngram 2={abc_bigram.counts()[1] + 1}")
        with pytest.raises(ArpaFormatError):
            import_arpa(broken, abc_vocab)


class TestUnigrams:
    def test_from_corpus(self, abc_corpus):
        table = unigram_table_from_corpus(abc_corpus, 6)
        np.testing.assert_allclose(table(3), math.log(1 / 3))
        np.testing.assert_allclose(table(2), -math.log(60))

    def test_from_model_uses_unknown_as_floor(self, abc_bigram):
        table = unigram_table_from_model(abc_bigram)
        assert 0 not in table.logp
        assert table.floor == table(2)
        np.testing.assert_allclose(math.exp(table(5)), 14 / 65, rtol=1e-9)

    def test_empty_corpus(self):
        with pytest.raises(DataError):
            unigram_table_from_corpus([[]], 6)


class TestMaximumLikelihood:
    def test_deterministic_continuation(self, abc_vocab):
        corpus = [[3, 4]] * 100
        model = train_ngram(corpus, len(abc_vocab), 0, 1, 2, order=2, smoothing='mle')
        np.testing.assert_allclose(10.0 ** model.logprob10(4, [3]), 1.0, rtol=1e-12)

    def test_split_continuation(self, abc_vocab, abc_corpus):
        model = train_ngram(abc_corpus[:2], len(abc_vocab), 0, 1, 2, order=2, smoothing='mle')
        np.testing.assert_allclose(10.0 ** model.logprob10(4, [3]), 0.5, rtol=1e-12)
        np.testing.assert_allclose(10.0 ** model.logprob10(5, [3]), 0.5, rtol=1e-12)


def test_unigrams_of_repeated_word():
    table = unigram_table_from_corpus([[3, 3, 4]], 6)
    np.testing.assert_allclose(math.exp(table(3)), 2 / 3)
    np.testing.assert_allclose(math.exp(table(4)), 1 / 3)
