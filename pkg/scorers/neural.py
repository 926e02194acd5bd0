"""
Скорер поверх обученной нейросети (nplm, rnnlm, bag2seq).
"""

from core.bag import Bag, sorted_bag_sequence
from core.vocabulary import Vocabulary
from neural.params import ModelParams
from neural.training import build_model
from scorers.base import Scorer
from utils.errors import VocabularyMismatchError


class NeuralScorer(Scorer):
    def __init__(self, params: ModelParams, vocab: Vocabulary, name: str = None):
        if params.vocab_fingerprint and params.vocab_fingerprint != vocab.fingerprint():
            raise VocabularyMismatchError(f"{params.arch} model was trained over a different vocabulary")
        if params.dims['vocab'] != len(vocab):
            raise VocabularyMismatchError(
                f"{params.arch} model expects |V|={params.dims['vocab']}, vocabulary has {len(vocab)}"
            )
        self.params = params
        self.model = build_model(params)
        self.vocab = vocab
        self.name = name or params.arch

    @property
    def arch(self) -> str:
        return self.params.arch

    def initial_state(self, bag: Bag = None):
        if self.arch == 'bag2seq':
            if not bag:
                raise ValueError("bag2seq scorer needs a non-empty bag")
            return self.model.initial_state(sorted_bag_sequence(bag, self.vocab))
        return self.model.initial_state()

    def step_batch(self, states, words):
        return self.model.step_batch(states, words)
