import pytest

from core.toy_grammar import generate_toy_corpus
from core.vocabulary import Vocabulary, build_vocab
from neural.training import TrainingConfig, train_model
from ngram_lm.training import train_ngram
from scorers.neural import NeuralScorer
from scorers.ngram import NGramScorer


@pytest.fixture
def abc_vocab():
    """<s>=0, </s>=1, <unk>=2, a=3, b=4, c=5."""
    return Vocabulary(['<s>', '</s>', '<unk>', 'a', 'b', 'c'])


@pytest.fixture
def abc_corpus(abc_vocab):
    return [abc_vocab.encode(line.split()) for line in ('a b', 'a c', 'b c')]


@pytest.fixture
def abc_bigram(abc_vocab, abc_corpus):
    return train_ngram(abc_corpus, len(abc_vocab), abc_vocab.bos_id, abc_vocab.eos_id, abc_vocab.unk_id,
                       order=2, smoothing='witten_bell')


@pytest.fixture(scope='session')
def toy_sentences():
    return generate_toy_corpus(300, seed=7)


@pytest.fixture(scope='session')
def toy_vocab(toy_sentences):
    return build_vocab(toy_sentences, 1000)


@pytest.fixture(scope='session')
def toy_corpus(toy_sentences, toy_vocab):
    return [toy_vocab.encode(tokens) for tokens in toy_sentences]


@pytest.fixture(scope='session')
def toy_trigram(toy_corpus, toy_vocab):
    return train_ngram(toy_corpus, len(toy_vocab), toy_vocab.bos_id, toy_vocab.eos_id, toy_vocab.unk_id,
                       order=3, smoothing='witten_bell')


@pytest.fixture(scope='session')
def toy_scorer(toy_trigram, toy_vocab):
    return NGramScorer(toy_trigram, toy_vocab, name='tri')


@pytest.fixture(scope='session')
def toy_bigram_scorer(toy_corpus, toy_vocab):
    model = train_ngram(toy_corpus, len(toy_vocab), toy_vocab.bos_id, toy_vocab.eos_id, toy_vocab.unk_id,
                        order=2, smoothing='witten_bell')
    return NGramScorer(model, toy_vocab, name='bi')


@pytest.fixture(scope='session')
def toy_neural_scorers(toy_corpus, toy_vocab):
    """Маленькие nplm, rnnlm и bag2seq после одной эпохи на игрушечном корпусе."""
    config = TrainingConfig(embed=8, hidden=16, attention=8, context=2, epochs=1, learning_rate=0.5, seed=2)
    scorers = {}
    for arch in ('nplm', 'rnnlm', 'bag2seq'):
        params, _ = train_model(arch, toy_corpus[:100], toy_vocab, config)
        scorers[arch] = NeuralScorer(params, toy_vocab, name=arch)
    return scorers
