"""
Общий контракт скореров, которыми пользуется поиск.

Все значения - натуральные логарифмы. Состояние - неизменяемое значение:
шаг возвращает новое состояние и не трогает старое, поэтому одно состояние
можно продолжать несколькими словами.

Порядок шагов одинаков для всех скореров: initial_state(bag) ещё не видел
ничего, первым шагом подаётся <s>, а распределение после шага - это
распределение следующей позиции. После последнего слова мешка делается
шаг, в котором читается P(</s>).
"""

from abc import ABC, abstractmethod
from typing import Any, List, Sequence, Tuple

import numpy as np

from core.bag import Bag
from core.vocabulary import Vocabulary

State = Any


class Scorer(ABC):
    """
    Базовый скорер.

    Attributes:
        name: Имя для отчётов и файла весов
        vocab: Словарь, над которым определено распределение
    """

    name: str = 'scorer'
    vocab: Vocabulary

    @abstractmethod
    def initial_state(self, bag: Bag) -> State:
        """Состояние пустого префикса (мешок нужен только bag2seq)."""

    @abstractmethod
    def step_batch(self, states: Sequence[State], words: Sequence[int]) -> Tuple[np.ndarray, List[State]]:
        """
        Продвинуть каждое состояние на своё слово.

        Returns:
            (log-распределения (B, |V|), новые состояния)
        """

    def step(self, state: State, word: int) -> Tuple[np.ndarray, State]:
        logp, states = self.step_batch([state], [word])
        return logp[0], states[0]

    def step_candidates(self, state: State, word: int, candidates: Sequence[int]) -> Tuple[np.ndarray, State]:
        scores, states = self.step_candidates_batch([state], [word], [candidates])
        return scores[0], states[0]

    def step_candidates_batch(self, states: Sequence[State], words: Sequence[int],
                              candidates: Sequence[Sequence[int]]) -> Tuple[List[np.ndarray], List[State]]:
        """
        Как step_batch, но возвращает только оценки кандидатов каждого состояния.
        """
        logp, new_states = self.step_batch(states, words)
        return [logp[i, list(c)] for i, c in enumerate(candidates)], new_states
