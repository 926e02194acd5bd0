"""
Таблица униграмм для эвристики будущей стоимости f(.).
"""

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence

from config import ARPA_LOG_ZERO, UNIGRAM_FLOOR_FACTOR
from ngram_lm.model import LN_10, NGramModel
from utils.errors import DataError


@dataclass(frozen=True)
class UnigramTable:
    """
    Униграммные log-вероятности (натуральный логарифм).

    Attributes:
        logp: id -> ln p
        floor: ln p для невиденных id
    """

    logp: Dict[int, float]
    floor: float

    def __call__(self, token_id: int) -> float:
        return self.logp.get(token_id, self.floor)


def _floor(vocab_size: int, min_logp: float) -> float:
    floor = -math.log(UNIGRAM_FLOOR_FACTOR * vocab_size)
    # На большом корпусе 1/(10|V|) может оказаться выше редкого слова
    return min(floor, min_logp + math.log(0.1))


def unigram_table_from_corpus(corpus: Iterable[Sequence[int]], vocab_size: int) -> UnigramTable:
    """
    Относительные частоты слов корпуса (без сентинелов).

    Args:
        corpus: Предложения как id
        vocab_size: |V| для вычисления пола

    Returns:
        UnigramTable: Таблица с полом log(1/(10|V|))
    """
    counts = Counter()
    for sentence in corpus:
        counts.update(sentence)
    total = sum(counts.values())
    if total == 0:
        raise DataError("cannot estimate unigram probabilities from an empty corpus")
    logp = {token_id: math.log(count / total) for token_id, count in counts.items()}
    return UnigramTable(logp, _floor(vocab_size, min(logp.values())))


def unigram_table_from_model(model: NGramModel) -> UnigramTable:
    """
    Уровень униграмм обученной модели.

    Записи с ARPA-нулём (например, <s>) в таблицу не попадают. Пол равен
    вероятности unk, если она есть.
    """
    logp = {
        token_id: logp10 * LN_10
        for token_id, logp10 in model.unigram_logprobs10().items()
        if logp10 > ARPA_LOG_ZERO
    }
    if not logp:
        raise DataError("n-gram model has no unigram entries")
    if model.unk_id in logp:
        return UnigramTable(logp, logp[model.unk_id])
    return UnigramTable(logp, _floor(model.vocab_size, min(logp.values())))
