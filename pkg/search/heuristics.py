"""
Оценки для ранжирования частичных гипотез.

f - униграммная оценка будущей стоимости оставшихся слов.
g - поправка на префикс: сумма log P_hat(w) по словам префикса, где P_hat(w)
лучшая вероятность w, встреченная поиском в этом предложении. S = s - g <= 0.
"""

import math
from typing import Dict, Mapping

from ngram_lm.unigrams import UnigramTable
from search.hypothesis import Hypothesis
from utils.errors import SearchInvariantError


class EstimateTable:
    """
    P_hat по типам слов; хранится в log-домене, чтобы не терять малые значения.

    Новая таблица на каждое предложение; значения только растут.
    """

    def __init__(self):
        self.best_log: Dict[int, float] = {}

    def update_log(self, scores: Mapping[int, float]):
        for token_id, logp in scores.items():
            if logp > self.best_log.get(token_id, -math.inf):
                self.best_log[token_id] = logp

    def probability(self, token_id: int) -> float:
        return math.exp(self.best_log.get(token_id, -math.inf))

    def log_estimate(self, token_id: int) -> float:
        try:
            return self.best_log[token_id]
        except KeyError:
            raise SearchInvariantError(f"no estimate for token {token_id} in a scored prefix")

    def __len__(self) -> int:
        return len(self.best_log)


def update_estimates(estimates: EstimateTable, candidate_scores: Mapping[int, float]):
    """
    best[w] := max(best[w], p) для вероятностей кандидатов.

    Raises:
        ValueError: Вероятность вне [0, 1]
    """
    logs = {}
    for token_id, probability in candidate_scores.items():
        if not 0.0 <= probability <= 1.0:
            raise ValueError(f"probability out of range for token {token_id}: {probability}")
        logs[token_id] = math.log(probability) if probability > 0 else -math.inf
    estimates.update_log(logs)


def heuristic_g(hyp: Hypothesis, estimates: EstimateTable) -> float:
    """Сумма log P_hat по токенам префикса (повторы считаются по вхождениям)."""
    return sum(estimates.log_estimate(token_id) for token_id in hyp.prefix)


def heuristic_f(hyp: Hypothesis, unigrams: UnigramTable, weight: float = 1.0) -> float:
    """weight * сумма униграммных log p по оставшимся токенам; 0 для полной гипотезы."""
    return weight * sum(unigrams(token_id) * count for token_id, count in hyp.remaining.counts.items())
