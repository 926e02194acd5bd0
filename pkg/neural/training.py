"""
Обучение нейросетевых моделей: SGD с обрезкой нормы градиента.

Одна эпоха - проход по перемешанному корпусу, шаг после каждого
предложения. Если dev-перплексия lr_patience эпох подряд почти не
улучшалась, шаг делится пополам, но не опускается ниже
LR_FLOOR_FRACTION от начального.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from config import (DEFAULT_PRESET, DIMENSION_PRESETS, ENCODER_INIT_SCALE, GRAD_CLIP, INIT_SCALE, LEARNING_RATE,
                    LR_FLOOR_FRACTION, LR_PATIENCE, LR_STALL_TOLERANCE, NPLM_CONTEXT, SEED, TRAIN_EPOCHS)
from core.bag import bag_of_words, sorted_bag_sequence
from core.vocabulary import Vocabulary
from neural.bag2seq import Bag2Seq
from neural.nplm import Nplm
from neural.params import ARCHITECTURES, Example, ModelParams, init_params
from neural.rnnlm import RnnLm
from utils.errors import DataError, TrainingDivergenceError

logger = logging.getLogger(__name__)

MODEL_CLASSES = {
    'nplm': Nplm,
    'rnnlm': RnnLm,
    'bag2seq': Bag2Seq,
}


def build_model(params: ModelParams):
    """Обёртка архитектуры над параметрами."""
    return MODEL_CLASSES[params.arch](params)


@dataclass
class TrainingConfig:
    """
    Гиперпараметры обучения.

    attention и encoder_init_scale используются только bag2seq, context - только nplm.
    """

    embed: int = DIMENSION_PRESETS[DEFAULT_PRESET]['embed']
    hidden: int = DIMENSION_PRESETS[DEFAULT_PRESET]['hidden']
    attention: int = DIMENSION_PRESETS[DEFAULT_PRESET]['attention']
    context: int = NPLM_CONTEXT
    epochs: int = TRAIN_EPOCHS
    learning_rate: float = LEARNING_RATE
    clip: float = GRAD_CLIP
    init_scale: float = INIT_SCALE
    encoder_init_scale: float = ENCODER_INIT_SCALE
    lr_patience: int = LR_PATIENCE
    seed: int = SEED

    def validate(self):
        for name in ('embed', 'hidden', 'attention', 'context', 'epochs', 'lr_patience'):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if min(self.learning_rate, self.clip, self.init_scale, self.encoder_init_scale) <= 0:
            raise ValueError("learning_rate, clip, init_scale and encoder_init_scale must be positive")


@dataclass
class EpochRecord:
    epoch: int
    learning_rate: float
    train_loss: float
    dev_perplexity: float


@dataclass
class TrainingHistory:
    records: List[EpochRecord] = field(default_factory=list)
    initial_dev_perplexity: float = math.inf

    def to_tsv(self) -> str:
        lines = ['epoch\tlearning_rate\ttrain_loss\tdev_perplexity']
        for r in self.records:
            lines.append(f"{r.epoch}\t{r.learning_rate:.6g}\t{r.train_loss:.6f}\t{r.dev_perplexity:.6f}")
        return '\n'.join(lines) + '\n'


def make_examples(arch: str, sentences: Sequence[Sequence[int]], vocab: Vocabulary) -> List[Example]:
    """
    Примеры для архитектуры: для bag2seq source - отсортированный мешок.
    """
    examples = []
    for sentence in sentences:
        source = sorted_bag_sequence(bag_of_words(sentence), vocab) if arch == 'bag2seq' else []
        examples.append(Example(source, list(sentence)))
    return examples


def model_dims(arch: str, vocab: Vocabulary, config: TrainingConfig) -> Dict[str, int]:
    dims = {
        'vocab': len(vocab),
        'embed': config.embed,
        'hidden': config.hidden,
        'bos': vocab.bos_id,
        'eos': vocab.eos_id,
    }
    if arch == 'bag2seq':
        dims['attention'] = config.attention
    if arch == 'nplm':
        dims['context'] = config.context
    return dims


class LearningRateSchedule:
    """
    Деление шага пополам после patience эпох без заметного улучшения dev.
    """

    def __init__(self, initial: float, patience: int, baseline: float = math.inf,
                 floor_fraction: float = LR_FLOOR_FRACTION):
        self.rate = initial
        self.floor = initial * floor_fraction
        self.patience = patience
        self.best = baseline
        self.stalled = 0

    def observe(self, dev_perplexity: float) -> float:
        """Учесть dev-перплексию эпохи, вернуть шаг для следующей."""
        if dev_perplexity > self.best * (1.0 - LR_STALL_TOLERANCE):
            self.stalled += 1
        else:
            self.stalled = 0
        self.best = min(self.best, dev_perplexity)
        if self.stalled >= self.patience:
            self.rate = max(self.rate / 2.0, self.floor)
            self.stalled = 0
        return self.rate


def clip_gradients(grads: Dict[str, np.ndarray], max_norm: float) -> float:
    """
    Обрезать глобальную L2-норму градиентов на месте.

    Returns:
        float: Норма до обрезки
    """
    norm = math.sqrt(sum(float(np.sum(g * g)) for g in grads.values()))
    if norm > max_norm:
        scale = max_norm / norm
        for g in grads.values():
            g *= scale
    return norm


def corpus_perplexity(params: ModelParams, examples: Sequence[Example]) -> float:
    """
    exp(средняя по токенам кросс-энтропия), токены включают </s>.
    """
    model = build_model(params)
    total = 0.0
    tokens = 0
    for example in examples:
        loss, _ = model.loss_and_grads(example, compute_grads=False)
        n = len(example.target) + 1
        total += loss * n
        tokens += n
    if tokens == 0:
        raise DataError("cannot compute perplexity of an empty corpus")
    return math.exp(total / tokens)


def train_model(arch: str, sentences: Sequence[Sequence[int]], vocab: Vocabulary,
                config: Optional[TrainingConfig] = None,
                dev_sentences: Optional[Sequence[Sequence[int]]] = None):
    """
    Обучить модель.

    Args:
        arch: nplm, rnnlm или bag2seq
        sentences: Обучающий корпус (id)
        vocab: Словарь
        config: Гиперпараметры
        dev_sentences: Dev корпус; по умолчанию используется обучающий

    Returns:
        (ModelParams, TrainingHistory)

    Raises:
        TrainingDivergenceError: Потеря стала не конечной
    """
    config = config or TrainingConfig()
    if arch not in ARCHITECTURES:
        raise ValueError(f"unknown architecture {arch!r}, expected one of {ARCHITECTURES}")
    config.validate()
    if not sentences:
        raise DataError("training corpus is empty")

    train = make_examples(arch, sentences, vocab)
    if arch == 'bag2seq' and any(not example.source for example in train):
        raise DataError("bag2seq cannot be trained on empty sentences")
    dev = make_examples(arch, dev_sentences, vocab) if dev_sentences else train

    rng = np.random.default_rng(config.seed)
    dims = model_dims(arch, vocab, config)
    overrides = {name: config.encoder_init_scale for name in getattr(MODEL_CLASSES[arch], 'encoder_tensors', ())}
    params = init_params(arch, dims, MODEL_CLASSES[arch].tensor_shapes(dims), rng,
                         config.init_scale, vocab.fingerprint(), overrides)
    model = build_model(params)

    history = TrainingHistory(initial_dev_perplexity=corpus_perplexity(params, dev))
    logger.info(f"🏋️ [TRAIN] {arch}: {len(train)} предложений, |V|={len(vocab)}, "
                f"начальная dev ppl {history.initial_dev_perplexity:.2f}")

    schedule = LearningRateSchedule(config.learning_rate, config.lr_patience, history.initial_dev_perplexity)
    learning_rate = schedule.rate
    for epoch in range(1, config.epochs + 1):
        total_loss = 0.0
        for index in rng.permutation(len(train)):
            loss, grads = model.loss_and_grads(train[index])
            if not math.isfinite(loss):
                raise TrainingDivergenceError(epoch, int(index), learning_rate, loss)
            total_loss += loss
            clip_gradients(grads, config.clip)
            for name, grad in grads.items():
                params.tensors[name] -= learning_rate * grad

        if not params.is_finite():
            raise TrainingDivergenceError(epoch, len(train) - 1, learning_rate, math.nan)
        dev_ppl = corpus_perplexity(params, dev)
        if not math.isfinite(dev_ppl):
            raise TrainingDivergenceError(epoch, len(train) - 1, learning_rate, dev_ppl)

        record = EpochRecord(epoch, learning_rate, total_loss / len(train), dev_ppl)
        history.records.append(record)
        logger.info(f"✅ [TRAIN] epoch {epoch}: lr {learning_rate:.4g}, "
                    f"train loss {record.train_loss:.4f}, dev ppl {dev_ppl:.2f}")

        next_rate = schedule.observe(dev_ppl)
        if next_rate < learning_rate:
            logger.debug(f"📉 [TRAIN] dev ppl не улучшается {config.lr_patience} эп., шаг уменьшен до {next_rate:.4g}")
        learning_rate = next_rate

    return params, history
