"""
Загрузка скореров по спецификациям "имя:путь[:вес]".

Тип артефакта определяется по содержимому: бинарный контейнер нейросети
начинается с сигнатуры, всё остальное читается как ARPA.
"""

import logging
import os
from dataclasses import dataclass
from typing import List, Optional, Sequence

from combine.loglinear import LogLinearCombo
from combine.weights import apply_weights, read_weights
from core.corpus import load_corpus
from core.vocabulary import Vocabulary
from neural.serialization import is_model_file, load_params
from ngram_lm.arpa import read_arpa
from ngram_lm.unigrams import UnigramTable, unigram_table_from_corpus, unigram_table_from_model
from scorers.base import Scorer
from scorers.neural import NeuralScorer
from scorers.ngram import NGramScorer
from utils.errors import ConfigError, DataError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScorerSpec:
    name: str
    path: str
    weight: float = 1.0


def parse_scorer_spec(text: str) -> ScorerSpec:
    """
    Разобрать "имя:путь[:вес]".

    Raises:
        ConfigError: Нет имени или пути, вес не число или отрицательный
    """
    name, sep, rest = text.strip().partition(':')
    if not sep or not name or not rest:
        raise ConfigError(f"scorer spec must look like name:path[:weight], got {text!r}")
    path, weight = rest, 1.0
    head, sep, tail = rest.rpartition(':')
    if sep and head:
        try:
            weight = float(tail)
            path = head
        except ValueError:
            pass
    if weight < 0:
        raise ConfigError(f"scorer weight must be non-negative, got {weight} in {text!r}")
    return ScorerSpec(name, path, weight)


def parse_scorer_list(text: str) -> List[ScorerSpec]:
    specs = [parse_scorer_spec(part) for part in text.split(',') if part.strip()]
    if not specs:
        raise ConfigError("at least one scorer is required")
    return specs


def load_scorer(spec: ScorerSpec, vocab: Vocabulary) -> Scorer:
    if not os.path.isfile(spec.path):
        raise DataError(f"model artifact not found: {spec.path}")
    if is_model_file(spec.path):
        return NeuralScorer(load_params(spec.path), vocab, spec.name)
    return NGramScorer(read_arpa(spec.path, vocab), vocab, spec.name)


def load_combo(specs: Sequence[ScorerSpec], vocab: Vocabulary, weights_path: Optional[str] = None) -> LogLinearCombo:
    """
    Загрузить скореры в комбинацию; файл весов важнее весов из спецификаций.
    """
    members = [load_scorer(spec, vocab) for spec in specs]
    weights = [spec.weight for spec in specs]
    if weights_path:
        weights = apply_weights([spec.name for spec in specs], read_weights(weights_path))
    combo = LogLinearCombo(members, weights)
    logger.info(f"🧩 [SCORERS] {combo.name}, веса {list(combo.weights)}")
    return combo


def load_unigrams(path: str, vocab: Vocabulary) -> UnigramTable:
    """Униграммы для эвристики f: из ARPA модели или из корпуса."""
    if path.endswith('.arpa'):
        return unigram_table_from_model(read_arpa(path, vocab))
    return unigram_table_from_corpus(load_corpus(path, vocab), len(vocab))


def unigrams_from_combo(combo: LogLinearCombo) -> Optional[UnigramTable]:
    """Униграммы первой n-gram модели комбинации, если она есть."""
    for member in combo.members:
        if isinstance(member, NGramScorer):
            return unigram_table_from_model(member.model)
    return None
