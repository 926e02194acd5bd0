"""
Скорер поверх back-off n-gram модели.
"""

from typing import List, Sequence, Tuple

import numpy as np

from core.bag import Bag
from core.vocabulary import Vocabulary
from ngram_lm.model import NGramModel
from scorers.base import Scorer

NGramState = Tuple[int, ...]


class NGramScorer(Scorer):
    """
    Состояние - последние n-1 поглощённых токенов (пустой кортеж в начале).
    """

    def __init__(self, model: NGramModel, vocab: Vocabulary, name: str = 'ngram'):
        if model.vocab_size != len(vocab):
            raise ValueError(f"n-gram model expects |V|={model.vocab_size}, vocabulary has {len(vocab)}")
        self.model = model
        self.vocab = vocab
        self.name = name
        self.width = model.order - 1

    def initial_state(self, bag: Bag = None) -> NGramState:
        return ()

    def advance(self, state: NGramState, word: int) -> NGramState:
        if self.width == 0:
            return ()
        return (tuple(state) + (word,))[-self.width:]

    def _scores(self, state: NGramState, candidates: Sequence[int]) -> np.ndarray:
        return np.array([self.model.logprob(w, state) for w in candidates], dtype=np.float64)

    def step_batch(self, states, words) -> Tuple[np.ndarray, List[NGramState]]:
        new_states = [self.advance(state, word) for state, word in zip(states, words)]
        everything = range(len(self.vocab))
        return np.stack([self._scores(state, everything) for state in new_states]), new_states

    def step_candidates_batch(self, states, words, candidates):
        new_states = [self.advance(state, word) for state, word in zip(states, words)]
        return [self._scores(state, c) for state, c in zip(new_states, candidates)], new_states
