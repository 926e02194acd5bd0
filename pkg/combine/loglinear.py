"""
Лог-линейная комбинация скореров: score(w) = sum_m lambda_m * log P_m(w | state_m).

Комбинация сама является скорером, её состояние - кортеж состояний
участников. Перенормировки нет: для ранжирования нужны только
относительные оценки.
"""

import math
from typing import List, Sequence, Tuple

import numpy as np

from core.bag import Bag
from scorers.base import Scorer
from utils.errors import VocabularyMismatchError

ComboState = Tuple


class LogLinearCombo(Scorer):
    """
    Attributes:
        members: Скореры
        weights: Веса lambda (конечные, неотрицательные)
    """

    def __init__(self, members: Sequence[Scorer], weights: Sequence[float] = None):
        if not members:
            raise ValueError("log-linear combination needs at least one member")
        weights = [1.0] * len(members) if weights is None else [float(w) for w in weights]
        if len(weights) != len(members):
            raise ValueError(f"got {len(weights)} weights for {len(members)} members")
        for weight in weights:
            if not math.isfinite(weight) or weight < 0:
                raise ValueError(f"combination weights must be finite and non-negative, got {weight}")
        fingerprint = members[0].vocab.fingerprint()
        for member in members[1:]:
            if member.vocab.fingerprint() != fingerprint:
                raise VocabularyMismatchError(
                    f"scorers {members[0].name!r} and {member.name!r} use different vocabularies"
                )
        self.members = list(members)
        self.weights = tuple(weights)
        self.vocab = members[0].vocab
        self.name = '+'.join(member.name for member in members)

    def with_weights(self, weights: Sequence[float]) -> 'LogLinearCombo':
        return LogLinearCombo(self.members, weights)

    def _check(self, states: Sequence[ComboState]):
        for state in states:
            if len(state) != len(self.members):
                raise ValueError(f"expected {len(self.members)} member states, got {len(state)}")

    def initial_state(self, bag: Bag = None) -> ComboState:
        return tuple(member.initial_state(bag) for member in self.members)

    def step_batch(self, states, words):
        self._check(states)
        total = None
        per_member = []
        for m, (member, weight) in enumerate(zip(self.members, self.weights)):
            logp, new = member.step_batch([state[m] for state in states], words)
            total = weight * logp if total is None else total + weight * logp
            per_member.append(new)
        return total, [tuple(column) for column in zip(*per_member)]

    def step_candidates_batch(self, states, words, candidates):
        self._check(states)
        totals: List[np.ndarray] = [np.zeros(len(c)) for c in candidates]
        per_member = []
        for m, (member, weight) in enumerate(zip(self.members, self.weights)):
            scores, new = member.step_candidates_batch([state[m] for state in states], words, candidates)
            for i, member_scores in enumerate(scores):
                totals[i] = totals[i] + weight * member_scores
            per_member.append(new)
        return totals, [tuple(column) for column in zip(*per_member)]


def combined_step(combo: LogLinearCombo, states: ComboState, word: int, candidates: Sequence[int] = None):
    """
    Один шаг комбинации.

    Args:
        combo: Комбинация
        states: По состоянию на участника
        word: Поглощаемое слово
        candidates: Кандидаты; None - весь словарь

    Returns:
        (комбинированные log-оценки, новые состояния участников)
    """
    if candidates is None:
        return combo.step(tuple(states), word)
    return combo.step_candidates(tuple(states), word, candidates)


def ensemble(members: Sequence[Scorer]) -> LogLinearCombo:
    """Ансамбль моделей одной архитектуры с равными весами 1/M."""
    if not members:
        raise ValueError("ensemble needs at least one member")
    return LogLinearCombo(members, [1.0 / len(members)] * len(members))
