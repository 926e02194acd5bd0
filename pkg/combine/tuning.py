"""
Подбор весов лог-линейной комбинации по dev BLEU без производных.

lambda_1 закреплён на 1 (ранжирование не меняется от общего масштаба),
остальные веса ищутся в [0, 10] методом BOBYQA (pybobyqa), начиная с
единиц. Если бюджет меньше, чем нужно BOBYQA для интерполяции, или
pybobyqa завершился с ошибкой, работает покоординатный поиск по сетке.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pybobyqa

from config import SEED, TUNE_BEAM, TUNE_BOUNDS, TUNE_BUDGET, WORKERS
from combine.loglinear import LogLinearCombo
from core.bag import Bag
from evaluation.bleu import corpus_bleu
from ngram_lm.unigrams import UnigramTable
from search.batch import decode_corpus
from search.hypothesis import BeamConfig
from utils.errors import DecodeError

logger = logging.getLogger(__name__)

LINE_SEARCH_GRID = (0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0)
BOBYQA_RHOBEG = 1.0


@dataclass
class TuneResult:
    """
    Attributes:
        weights: Лучшие найденные веса (lambda_1 = 1)
        bleu: Их dev BLEU
        baseline_bleu: dev BLEU стартовой точки (все единицы)
        trajectory: Лучший BLEU после каждой оценки (не убывает)
        evaluations: Число декодирований dev
        iterations: Итерации оптимизатора
        method: bobyqa, line_search или single
    """

    weights: Tuple[float, ...]
    bleu: float
    baseline_bleu: float
    trajectory: List[float] = field(default_factory=list)
    evaluations: int = 0
    iterations: int = 0
    method: str = 'bobyqa'


class _Objective:
    """dev BLEU от свободных весов с кэшем и ведением лучшей точки."""

    def __init__(self, evaluate: Callable[[Tuple[float, ...]], float], budget: int):
        self.evaluate = evaluate
        self.budget = budget
        self.cache: Dict[Tuple[float, ...], float] = {}
        self.trajectory: List[float] = []
        self.best: Optional[Tuple[Tuple[float, ...], float]] = None

    @property
    def exhausted(self) -> bool:
        return len(self.trajectory) >= self.budget

    def __call__(self, free: Sequence[float]) -> float:
        lo, hi = TUNE_BOUNDS
        weights = (1.0,) + tuple(round(float(np.clip(w, lo, hi)), 10) for w in free)
        if weights in self.cache:
            return self.cache[weights]
        if self.exhausted:
            # Вне бюджета новые точки не декодируются
            return self.best[1] if self.best else 0.0
        bleu = self.evaluate(weights)
        self.cache[weights] = bleu
        if self.best is None or bleu > self.best[1]:
            self.best = (weights, bleu)
        self.trajectory.append(self.best[1])
        logger.info(f"🎯 [TUNE] #{len(self.trajectory)} lambda={list(weights)} BLEU {bleu:.2f} "
                    f"(лучший {self.best[1]:.2f})")
        return bleu


def _bobyqa(objective: _Objective, dim: int, budget: int, seed: int) -> int:
    lo, hi = TUNE_BOUNDS
    np.random.seed(seed)
    result = pybobyqa.solve(
        lambda x: -objective(x),
        x0=np.ones(dim),
        bounds=(np.full(dim, lo), np.full(dim, hi)),
        maxfun=budget,
        rhobeg=BOBYQA_RHOBEG,
        scaling_within_bounds=False,
        objfun_has_noise=True,
        seek_global_minimum=False,
        do_logging=False,
        print_progress=False,
    )
    if result.flag in (result.EXIT_INPUT_ERROR, result.EXIT_LINALG_ERROR):
        raise RuntimeError(result.msg)
    return result.nf


def _line_search(objective: _Objective, dim: int) -> int:
    point = [1.0] * dim
    current = objective(point)
    passes = 0
    improved = True
    while improved and not objective.exhausted:
        improved = False
        passes += 1
        for i in range(dim):
            for value in LINE_SEARCH_GRID:
                if objective.exhausted:
                    break
                candidate = point[:i] + [value] + point[i + 1:]
                bleu = objective(candidate)
                if bleu > current:
                    point, current, improved = candidate, bleu, True
    return passes


def tune_weights(combo: LogLinearCombo, dev_bags: Sequence[Bag], references: Sequence[Sequence[str]],
                 config: BeamConfig = None, budget: int = TUNE_BUDGET, unigrams: UnigramTable = None,
                 seed: int = SEED, workers: int = WORKERS) -> TuneResult:
    """
    Максимизировать dev BLEU по весам комбинации.

    Args:
        combo: Комбинация (её веса игнорируются)
        dev_bags: Dev мешки
        references: Эталонные предложения (токены)
        config: Настройки луча; по умолчанию уменьшенный луч TUNE_BEAM
        budget: Максимум декодирований dev
        unigrams: Униграммы для эвристики f
        seed: Seed оптимизатора
        workers: Потоки декодирования

    Returns:
        TuneResult: Лучшие веса не хуже стартовых

    Raises:
        ValueError: Пустой dev или budget < 1
        DecodeError: Ошибка декодирования с индексом предложения
    """
    if not dev_bags:
        raise ValueError("tuning needs at least one dev sentence")
    if len(dev_bags) != len(references):
        raise ValueError(f"{len(dev_bags)} dev bags for {len(references)} references")
    if budget < 1:
        raise ValueError(f"tuning budget must be >= 1, got {budget}")
    config = config or BeamConfig(beam_size=TUNE_BEAM)
    vocab = combo.vocab

    def evaluate(weights: Tuple[float, ...]) -> float:
        results = decode_corpus(dev_bags, combo.with_weights(weights), config, unigrams, workers)
        return corpus_bleu([vocab.decode(r.best.prefix) for r in results], references).bleu

    objective = _Objective(evaluate, budget)
    dim = len(combo.members) - 1
    if dim == 0:
        bleu = objective([])
        return TuneResult((1.0,), bleu, bleu, list(objective.trajectory), 1, 0, 'single')

    baseline = objective([1.0] * dim)
    method = 'bobyqa'
    iterations = 0
    # BOBYQA нужно 2M+1 точек интерполяции и хотя бы один шаг после них
    if budget >= 2 * dim + 2:
        try:
            iterations = _bobyqa(objective, dim, budget, seed)
        except DecodeError:
            raise
        except Exception as e:
            logger.warning(f"⚠️ [TUNE] pybobyqa не сработал ({e}), переключаюсь на покоординатный поиск")
            method = 'line_search'
    else:
        method = 'line_search'
    if method == 'line_search' and not objective.exhausted:
        iterations = _line_search(objective, dim)

    weights, bleu = objective.best
    logger.info(f"✅ [TUNE] {method}: lambda={list(weights)}, BLEU {baseline:.2f} -> {bleu:.2f} "
                f"за {len(objective.trajectory)} оценок")
    return TuneResult(weights, bleu, baseline, list(objective.trajectory), len(objective.trajectory),
                      iterations, method)
