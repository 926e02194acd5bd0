"""
Декодирование корпуса мешков пулом потоков с сохранением порядка.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence

from config import WORKERS
from core.bag import Bag
from ngram_lm.unigrams import UnigramTable
from scorers.base import Scorer
from search.beam import beam_search
from search.hypothesis import BeamConfig, SearchResult
from utils.errors import DecodeError

logger = logging.getLogger(__name__)


def decode_corpus(bags: Sequence[Bag], scorer: Scorer, config: BeamConfig = None,
                  unigrams: UnigramTable = None, workers: int = WORKERS) -> List[SearchResult]:
    """
    Упорядочить каждый мешок.

    Args:
        bags: Мешки (по одному на предложение)
        scorer: Общий скорер (только чтение)
        config: Настройки луча
        unigrams: Униграммы для эвристики f
        workers: Число потоков

    Returns:
        List[SearchResult]: В порядке входа

    Raises:
        DecodeError: Ошибка на конкретном предложении (с его индексом)
    """
    config = config or BeamConfig()
    config.validate()
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")

    def job(index: int) -> SearchResult:
        try:
            return beam_search(bags[index], scorer, config, unigrams)
        except Exception as e:
            raise DecodeError(index, e) from e

    if workers == 1:
        results = [job(i) for i in range(len(bags))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, range(len(bags))))
    logger.info(f"🔎 [DECODE] {len(bags)} мешков, луч {config.beam_size}, эвристика {config.heuristic}")
    return results
