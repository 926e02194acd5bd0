"""
Обучение n-gram модели: подсчёт, сглаживание, перевод в back-off форму.
"""

import logging
import math
from collections import Counter, defaultdict
from typing import Dict, List, Sequence, Tuple

from config import ARPA_LOG_ZERO, NGRAM_ORDER, NGRAM_SMOOTHING, SMOOTHING_METHODS
from ngram_lm.model import NGram, NGramModel, NGramTable
from utils.errors import DataError, SmoothingError

logger = logging.getLogger(__name__)


def count_ngrams(corpus: Sequence[Sequence[int]], order: int, bos_id: int, eos_id: int) -> List[Counter]:
    """
    Счётчики n-грамм всех порядков.

    Предложение дополняется n-1 символами <s> слева и одним </s> справа;
    считаются только события, предсказывающие слово или </s>, поэтому
    счётчики порядка k являются маргиналами порядка k+1.

    Returns:
        List[Counter]: counts[k] - (k+1)-граммы
    """
    counts = [Counter() for _ in range(order)]
    for sentence in corpus:
        padded = [bos_id] * (order - 1) + list(sentence) + [eos_id]
        for i in range(order - 1, len(padded)):
            for k in range(order):
                counts[k][tuple(padded[i - k:i + 1])] += 1
    return counts


def _continuation_counts(higher: Counter) -> Counter:
    """N1+(* h w): число различных левых расширений."""
    continuation = Counter()
    for ngram in higher:
        continuation[ngram[1:]] += 1
    return continuation


def _kn_discounts(counts: Counter, level: int) -> Tuple[float, float, float]:
    """
    Скидки модифицированного Кнезера-Нея (Chen & Goodman).

    Raises:
        SmoothingError: Если оценка скидок не определена на этих данных
    """
    of_counts = Counter(value for value in counts.values() if value <= 4)
    n1, n2, n3, n4 = (of_counts.get(i, 0) for i in (1, 2, 3, 4))
    if min(n1, n2, n3, n4) == 0:
        raise SmoothingError(
            f"Kneser-Ney discounts undefined for {level + 1}-grams "
            f"(count-of-counts n1..n4 = {n1}, {n2}, {n3}, {n4}); "
            f"use smoothing=witten_bell (or auto) for small corpora"
        )
    y = n1 / (n1 + 2 * n2)
    discounts = (1 - 2 * y * n2 / n1, 2 - 3 * y * n3 / n2, 3 - 4 * y * n4 / n3)
    for k, d in enumerate(discounts, start=1):
        if not 0 < d <= k:
            raise SmoothingError(
                f"Kneser-Ney discount D{k} = {d:.4f} out of range for {level + 1}-grams; "
                f"use smoothing=witten_bell (or auto) for small corpora"
            )
    return discounts


def _log10(value: float) -> float:
    return math.log10(value) if value > 0 else ARPA_LOG_ZERO


def _smoothed_levels(counts: List[Counter], smoothing: str, vocab_size: int,
                     bos_id: int) -> Tuple[List[Dict[NGram, float]], List[Dict[NGram, float]]]:
    """
    Интерполированные вероятности всех виденных n-грамм и веса gamma контекстов.

    Returns:
        (probs, gammas): probs[k][ngram] - P(w|h), gammas[k][h] - масса для
        младшего порядка в контексте h длины k
    """
    order = len(counts)
    if smoothing == 'kneser_ney':
        effective = [_continuation_counts(counts[k + 1]) for k in range(order - 1)] + [counts[-1]]
    else:
        effective = counts

    predictable = [w for w in range(vocab_size) if w != bos_id]
    uniform = 1.0 / len(predictable)

    probs: List[Dict[NGram, float]] = []
    gammas: List[Dict[NGram, float]] = []
    for level in range(order):
        level_counts = effective[level]
        totals: Dict[NGram, int] = defaultdict(int)
        by_count: Dict[NGram, List[int]] = defaultdict(lambda: [0, 0, 0])
        for ngram, value in level_counts.items():
            context = ngram[:-1]
            totals[context] += value
            by_count[context][min(value, 3) - 1] += 1

        if smoothing == 'kneser_ney':
            discounts = _kn_discounts(level_counts, level)

        gamma: Dict[NGram, float] = {}
        for context, total in totals.items():
            n1, n2, n3 = by_count[context]
            if smoothing == 'mle':
                gamma[context] = 0.0
            elif smoothing == 'witten_bell':
                types = n1 + n2 + n3
                gamma[context] = types / (total + types)
            else:
                gamma[context] = (discounts[0] * n1 + discounts[1] * n2 + discounts[2] * n3) / total

        def lower(ngram: NGram) -> float:
            if level == 0:
                return uniform
            return probs[level - 1][ngram[1:]]

        level_probs: Dict[NGram, float] = {}
        for ngram, value in level_counts.items():
            context = ngram[:-1]
            total = totals[context]
            if smoothing == 'mle':
                level_probs[ngram] = value / total
            elif smoothing == 'witten_bell':
                types = sum(by_count[context])
                level_probs[ngram] = (value + types * lower(ngram)) / (total + types)
            else:
                discount = discounts[min(value, 3) - 1]
                level_probs[ngram] = (value - discount) / total + gamma[context] * lower(ngram)

        if level == 0 and smoothing != 'mle':
            # Невиденные слова получают массу равномерного распределения
            for w in predictable:
                if (w,) not in level_probs:
                    level_probs[(w,)] = gamma[()] * uniform

        probs.append(level_probs)
        gammas.append(gamma)
    return probs, gammas


def _to_backoff(probs: List[Dict[NGram, float]], gammas: List[Dict[NGram, float]]) -> List[NGramTable]:
    """Перевести интерполированную модель в ARPA-представление."""
    order = len(probs)
    entries: List[NGramTable] = []
    for level in range(order):
        next_gammas = gammas[level + 1] if level + 1 < order else {}
        table: NGramTable = {}
        for ngram, p in probs[level].items():
            bow = _log10(next_gammas[ngram]) if ngram in next_gammas else 0.0
            table[ngram] = (_log10(p), bow)
        entries.append(table)

    # Контексты, которые не являются событиями (только цепочки <s>), получают заглушки
    for level in range(1, order):
        for context, gamma in gammas[level].items():
            if context not in entries[level - 1]:
                entries[level - 1][context] = (ARPA_LOG_ZERO, _log10(gamma))
    return entries


def train_ngram(corpus: Sequence[Sequence[int]], vocab_size: int, bos_id: int, eos_id: int,
                unk_id: int, order: int = NGRAM_ORDER, smoothing: str = NGRAM_SMOOTHING) -> NGramModel:
    """
    Обучить back-off n-gram модель.

    Args:
        corpus: Предложения (id без сентинелов)
        vocab_size: |V|
        bos_id: Id <s>
        eos_id: Id </s>
        unk_id: Id основного unk
        order: Порядок n
        smoothing: mle, witten_bell, kneser_ney или auto (KN с откатом на WB)

    Returns:
        NGramModel: Нормированная модель

    Raises:
        SmoothingError: kneser_ney неприменим к корпусу
    """
    if order < 1:
        raise ValueError(f"n-gram order must be >= 1, got {order}")
    if smoothing not in SMOOTHING_METHODS:
        raise ValueError(f"unknown smoothing {smoothing!r}, expected one of {', '.join(SMOOTHING_METHODS)}")
    if not corpus:
        raise DataError("cannot train an n-gram model on an empty corpus")

    counts = count_ngrams(corpus, order, bos_id, eos_id)
    logger.info(f"🔢 [NGRAM] Порядок {order}, n-граммы: {[len(c) for c in counts]}")

    method = smoothing
    if smoothing == 'auto':
        method = 'kneser_ney'
        try:
            probs, gammas = _smoothed_levels(counts, method, vocab_size, bos_id)
        except SmoothingError as e:
            logger.warning(f"⚠️ [NGRAM] {e}; переключаюсь на Witten-Bell")
            method = 'witten_bell'
            probs, gammas = _smoothed_levels(counts, method, vocab_size, bos_id)
    else:
        probs, gammas = _smoothed_levels(counts, method, vocab_size, bos_id)

    model = NGramModel(order, _to_backoff(probs, gammas), bos_id, eos_id, unk_id,
                       vocab_size, smoothing=method)
    logger.info(f"✅ [NGRAM] Модель готова ({method})")
    return model
