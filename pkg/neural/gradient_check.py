"""
Проверка аналитических градиентов центральными конечными разностями.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from neural.params import ARCHITECTURES, Example, ModelParams, init_params
from neural.training import MODEL_CLASSES, build_model

logger = logging.getLogger(__name__)

FINITE_DIFFERENCE_STEP = 1e-4
# Абсолютный пол знаменателя: почти нулевые компоненты сравниваются по модулю
RELATIVE_ERROR_FLOOR = 1e-4

TINY_DIMS = {'vocab': 8, 'embed': 4, 'hidden': 5, 'attention': 5, 'context': 2, 'bos': 0, 'eos': 1}
# Вместе покрывают все обычные слова 3..7 (id 2 - unk)
TINY_SENTENCES = ([3, 4, 5, 6, 7], [7, 5, 3, 3])


@dataclass
class GradientCheckResult:
    max_relative_error: float
    per_tensor: Dict[str, float] = field(default_factory=dict)
    zero_gradient_tensors: List[str] = field(default_factory=list)


def relative_error(analytic: float, numeric: float) -> float:
    return abs(analytic - numeric) / max(abs(analytic) + abs(numeric), RELATIVE_ERROR_FLOOR)


def _tiny_params(arch: str, seed: int, init_scale: float) -> ModelParams:
    dims = {name: value for name, value in TINY_DIMS.items()
            if name in ('vocab', 'embed', 'hidden', 'bos', 'eos')
            or (name == 'attention' and arch == 'bag2seq')
            or (name == 'context' and arch == 'nplm')}
    rng = np.random.default_rng(seed)
    return init_params(arch, dims, MODEL_CLASSES[arch].tensor_shapes(dims), rng, init_scale)


def _tiny_examples(arch: str, sentences: Sequence[Sequence[int]]) -> List[Example]:
    return [Example(sorted(s) if arch == 'bag2seq' else [], list(s)) for s in sentences]


def gradient_check_report(arch: str, seed: int = 1, init_scale: float = 0.3,
                          params: Optional[ModelParams] = None,
                          examples: Optional[Sequence[Example]] = None) -> GradientCheckResult:
    """
    Сравнить аналитические и численные градиенты суммарной потери по всем тензорам.

    Args:
        arch: Архитектура
        seed: Seed инициализации
        init_scale: Граница инициализации (больше обычной, чтобы градиенты были заметны)
        params: Готовые параметры вместо tiny-инициализации
        examples: Примеры вместо стандартного tiny-батча

    Returns:
        GradientCheckResult: Ошибки по тензорам и тензоры без градиента
    """
    if arch not in ARCHITECTURES:
        raise ValueError(f"unknown architecture {arch!r}")
    params = params.copy() if params is not None else _tiny_params(arch, seed, init_scale)
    examples = list(examples) if examples is not None else _tiny_examples(arch, TINY_SENTENCES)
    model = build_model(params)

    analytic = {name: np.zeros_like(value) for name, value in params.tensors.items()}
    for example in examples:
        _, grads = model.loss_and_grads(example)
        for name, grad in grads.items():
            analytic[name] += grad

    def total_loss() -> float:
        return sum(model.loss_and_grads(example, compute_grads=False)[0] for example in examples)

    result = GradientCheckResult(0.0)
    for name, tensor in params.tensors.items():
        worst = 0.0
        flat = tensor.reshape(-1)
        grad = analytic[name].reshape(-1)
        for i in range(flat.size):
            original = flat[i]
            flat[i] = original + FINITE_DIFFERENCE_STEP
            plus = total_loss()
            flat[i] = original - FINITE_DIFFERENCE_STEP
            minus = total_loss()
            flat[i] = original
            numeric = (plus - minus) / (2.0 * FINITE_DIFFERENCE_STEP)
            worst = max(worst, relative_error(grad[i], numeric))
        result.per_tensor[name] = worst
        if not np.any(grad):
            result.zero_gradient_tensors.append(name)
        logger.debug(f"🔍 [GRADCHECK] {arch}.{name}: max rel error {worst:.2e}")

    result.max_relative_error = max(result.per_tensor.values())
    logger.info(f"🔍 [GRADCHECK] {arch}: max rel error {result.max_relative_error:.2e}")
    return result


def gradient_check(arch: str, seed: int = 1) -> float:
    """Максимальная относительная ошибка градиента на tiny-конфигурации."""
    return gradient_check_report(arch, seed).max_relative_error
