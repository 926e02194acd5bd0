"""
Контейнер параметров нейросетевой модели.
"""

from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from neural.layers import uniform_init

ARCHITECTURES = ('nplm', 'rnnlm', 'bag2seq')

Shape = Tuple[int, ...]


class Example(NamedTuple):
    """
    Обучающий пример.

    Attributes:
        source: Отсортированный мешок (только для bag2seq, иначе пусто)
        target: Предложение без сентинелов
    """

    source: List[int]
    target: List[int]


@dataclass
class ModelParams:
    """
    Параметры модели.

    Attributes:
        arch: nplm, rnnlm или bag2seq
        dims: Размерности и служебные id (vocab, embed, hidden, ..., bos, eos)
        tensors: Тензоры в объявленном архитектурой порядке
        vocab_fingerprint: SHA-256 словаря (hex), пусто если неизвестен
    """

    arch: str
    dims: Dict[str, int]
    tensors: 'OrderedDict[str, np.ndarray]' = field(default_factory=OrderedDict)
    vocab_fingerprint: str = ''

    def __getitem__(self, name: str) -> np.ndarray:
        return self.tensors[name]

    def copy(self) -> 'ModelParams':
        tensors = OrderedDict((name, value.copy()) for name, value in self.tensors.items())
        return ModelParams(self.arch, dict(self.dims), tensors, self.vocab_fingerprint)

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(value)) for value in self.tensors.values())


def init_params(arch: str, dims: Dict[str, int], shapes: Sequence[Tuple[str, Shape]],
                rng: np.random.Generator, scale: float, vocab_fingerprint: str = '',
                scale_overrides: Optional[Dict[str, float]] = None) -> ModelParams:
    """
    Равномерная инициализация в [-scale, scale] в объявленном порядке.

    Args:
        arch: Архитектура
        dims: Размерности
        shapes: Пары (имя, форма)
        rng: Генератор (детерминированный по seed)
        scale: Граница интервала
        vocab_fingerprint: Отпечаток словаря
        scale_overrides: Своя граница для отдельных тензоров

    Returns:
        ModelParams: Новые параметры (float64)
    """
    if arch not in ARCHITECTURES:
        raise ValueError(f"unknown architecture {arch!r}")
    for name, value in dims.items():
        if value <= 0 and name not in ('bos', 'eos'):
            raise ValueError(f"dimension {name} must be positive, got {value}")
    overrides = scale_overrides or {}
    tensors = OrderedDict((name, uniform_init(rng, shape, overrides.get(name, scale))) for name, shape in shapes)
    return ModelParams(arch, dict(dims), tensors, vocab_fingerprint)


def zeros_like(params: ModelParams) -> 'OrderedDict[str, np.ndarray]':
    return OrderedDict((name, np.zeros_like(value)) for name, value in params.tensors.items())
