"""
Гипотеза поиска и настройки луча.
"""

from dataclasses import dataclass, field
from typing import Any, List, NamedTuple, Tuple

from config import BEAM_SIZE, F_WEIGHT, HEURISTIC, HEURISTICS, RECOMBINATION_K
from core.bag import Bag


@dataclass(frozen=True)
class Hypothesis:
    """
    Частичная перестановка мешка.

    Attributes:
        prefix: Уже расставленные слова
        remaining: Ещё не использованные слова
        score: s - сумма log-условных вероятностей префикса (и </s> у финальных)
        state: Состояние скорера, ещё не поглотившее последний токен префикса
    """

    prefix: Tuple[int, ...]
    remaining: Bag
    score: float
    state: Any = field(default=None, compare=False, repr=False)

    @property
    def complete(self) -> bool:
        return not self.remaining

    def last_token(self, bos_id: int) -> int:
        return self.prefix[-1] if self.prefix else bos_id


def constrained_candidates(hyp: Hypothesis) -> List[int]:
    """
    Типы слов, которые ещё можно поставить.

    Raises:
        ValueError: Гипотеза уже полная
    """
    if hyp.complete:
        raise ValueError("complete hypothesis has no candidates")
    return hyp.remaining.types()


@dataclass
class BeamConfig:
    """
    Настройки поиска.

    Attributes:
        beam_size: n лучших гипотез на каждом шаге
        heuristic: none, f или g
        recombination: Объединять гипотезы с общей сигнатурой
        recombination_k: Длина контекста сигнатуры
        f_weight: Множитель униграммной оценки будущего
        renormalize: Перенормировать условные вероятности по кандидатам
    """

    beam_size: int = BEAM_SIZE
    heuristic: str = HEURISTIC
    recombination: bool = False
    recombination_k: int = RECOMBINATION_K
    f_weight: float = F_WEIGHT
    renormalize: bool = False

    def validate(self):
        if self.beam_size < 1:
            raise ValueError(f"beam size must be >= 1, got {self.beam_size}")
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"unknown heuristic {self.heuristic!r}, expected one of {HEURISTICS}")
        if self.recombination_k < 0:
            raise ValueError(f"recombination context must be >= 0, got {self.recombination_k}")


@dataclass
class SearchStats:
    """
    Счётчики одного поиска.

    max_upper_bound_gap - максимум s - g по живым гипотезам (режим g),
    max_f_residual - максимум S_f - s по финальным гипотезам (режим f).
    """

    expansions: int = 0
    recombined: int = 0
    pruned: int = 0
    max_upper_bound_gap: float = float('-inf')
    max_f_residual: float = float('-inf')

    def merge(self, other: 'SearchStats'):
        self.expansions += other.expansions
        self.recombined += other.recombined
        self.pruned += other.pruned
        self.max_upper_bound_gap = max(self.max_upper_bound_gap, other.max_upper_bound_gap)
        self.max_f_residual = max(self.max_f_residual, other.max_f_residual)


class SearchResult(NamedTuple):
    hypotheses: List[Hypothesis]
    stats: SearchStats

    @property
    def best(self) -> Hypothesis:
        return self.hypotheses[0]
