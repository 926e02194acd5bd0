"""
Доля ошибок поиска: луч нашёл перестановку хуже оптимальной по модели.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

from config import MAX_EXHAUSTIVE_BAG
from core.bag import Bag
from ngram_lm.unigrams import UnigramTable
from scorers.base import Scorer
from search.beam import beam_search
from search.exhaustive import exhaustive_decode
from search.hypothesis import BeamConfig

logger = logging.getLogger(__name__)

SCORE_TOLERANCE = 1e-9


@dataclass
class SearchErrorReport:
    bags: int
    search_errors: int
    skipped: int
    mean_score_gap: float

    @property
    def rate(self) -> float:
        return self.search_errors / self.bags if self.bags else 0.0


def measure_search_errors(bags: Sequence[Bag], scorer: Scorer, config: BeamConfig = None,
                          unigrams: UnigramTable = None) -> SearchErrorReport:
    """
    Сравнить 1-best луча с оракулом на мешках не больше MAX_EXHAUSTIVE_BAG.

    Более длинные мешки пропускаются и считаются в skipped.
    """
    config = config or BeamConfig()
    checked = errors = skipped = 0
    gap_total = 0.0
    for bag in bags:
        if bag.size > MAX_EXHAUSTIVE_BAG:
            skipped += 1
            continue
        beam_best = beam_search(bag, scorer, config, unigrams).best
        oracle = exhaustive_decode(bag, scorer, renormalize=config.renormalize)
        gap = oracle.score - beam_best.score
        checked += 1
        if gap > SCORE_TOLERANCE:
            errors += 1
            gap_total += gap
    report = SearchErrorReport(checked, errors, skipped, gap_total / errors if errors else 0.0)
    logger.info(f"🔎 [SEARCH] ошибки поиска: {errors}/{checked} ({100.0 * report.rate:.1f}%), "
                f"пропущено {skipped}")
    return report
