"""
Back-off n-gram модель в представлении ARPA (log10).
"""

import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from config import ARPA_LOG_ZERO

NGram = Tuple[int, ...]
# n-грамма -> (log10 вероятность, log10 back-off вес)
NGramTable = Dict[NGram, Tuple[float, float]]

LN_10 = math.log(10.0)


class NGramModel:
    """
    Неизменяемая после построения back-off модель.

    entries[k] хранит (k+1)-граммы. Back-off вес контекста h лежит в записи
    самой n-граммы h (как в ARPA); для контекстов из одних <s> есть
    записи-заглушки с вероятностью ARPA_LOG_ZERO.
    """

    def __init__(self, order: int, entries: List[NGramTable], bos_id: int, eos_id: int,
                 unk_id: int, vocab_size: int, floor: float = ARPA_LOG_ZERO,
                 smoothing: str = 'unknown'):
        if order < 1:
            raise ValueError(f"n-gram order must be >= 1, got {order}")
        if len(entries) != order:
            raise ValueError(f"expected {order} n-gram tables, got {len(entries)}")
        self.order = order
        self.entries = entries
        self.bos_id = bos_id
        self.eos_id = eos_id
        self.unk_id = unk_id
        self.vocab_size = vocab_size
        self.floor = floor
        self.smoothing = smoothing

    def context_of(self, history: Sequence[int]) -> NGram:
        """Последние n-1 токенов истории (короткая история дополняется <s>)."""
        width = self.order - 1
        if width == 0:
            return ()
        context = tuple(history[-width:])
        if len(context) < width:
            context = (self.bos_id,) * (width - len(context)) + context
        return context

    def logprob10(self, word: int, history: Sequence[int]) -> float:
        """
        log10 P(word | history) с рекурсивным back-off.

        Args:
            word: Id предсказываемого слова
            history: Предыдущие токены (можно с <s> в начале)

        Returns:
            float: Конечное значение log10
        """
        return self._score(word, self.context_of(history))

    def _score(self, word: int, context: NGram) -> float:
        backoff = 0.0
        while True:
            entry = self.entries[len(context)].get(context + (word,))
            if entry is not None:
                return backoff + entry[0]
            if not context:
                return backoff + self.floor
            context_entry = self.entries[len(context) - 1].get(context)
            if context_entry is not None:
                backoff += context_entry[1]
            context = context[1:]

    def logprob(self, word: int, history: Sequence[int]) -> float:
        """Натуральный логарифм P(word | history)."""
        return self.logprob10(word, history) * LN_10

    def sentence_logprob10(self, sentence: Sequence[int], include_eos: bool = True) -> float:
        """log10 вероятность предложения (с </s> в конце)."""
        history: List[int] = [self.bos_id] * max(self.order - 1, 1)
        total = 0.0
        targets = list(sentence) + ([self.eos_id] if include_eos else [])
        for word in targets:
            total += self.logprob10(word, history)
            history.append(word)
        return total

    def unigram_logprobs10(self) -> Dict[int, float]:
        """Уровень униграмм: id -> log10 p."""
        return {ngram[0]: entry[0] for ngram, entry in self.entries[0].items()}

    def counts(self) -> List[int]:
        return [len(table) for table in self.entries]

    def get(self, ngram: NGram) -> Optional[Tuple[float, float]]:
        if not 1 <= len(ngram) <= self.order:
            return None
        return self.entries[len(ngram) - 1].get(ngram)


def perplexity(model: NGramModel, corpus: Iterable[Sequence[int]]) -> float:
    """
    Перплексия на корпусе (предсказания всех слов и </s>).

    Args:
        model: n-gram модель
        corpus: Предложения как последовательности id

    Returns:
        float: 10 ** (-средний log10 на токен)
    """
    total = 0.0
    tokens = 0
    for sentence in corpus:
        total += model.sentence_logprob10(sentence)
        tokens += len(sentence) + 1
    if tokens == 0:
        raise ValueError("perplexity of an empty corpus is undefined")
    return 10.0 ** (-total / tokens)
