"""
Конфигурация эксперимента: значения по умолчанию <- key=value файл <- флаги.

Неизвестные ключи отклоняются, пути проверяются до начала работы, итоговая
конфигурация сохраняется рядом с основным результатом как <output>.config.
"""

import logging
import os
from dataclasses import dataclass
from typing import Any, Callable, Dict, Mapping, Optional

from config import (BEAM_SIZE, BENCH_BEAMS, DEFAULT_PRESET, ENCODER_INIT_SCALE, F_WEIGHT, GRAD_CLIP, HEURISTIC,
                    INIT_SCALE, LEARNING_RATE, LR_PATIENCE, NGRAM_ORDER, NGRAM_SMOOTHING, NPLM_CONTEXT,
                    RECOMBINATION_K, SEED, TRAIN_EPOCHS, TUNE_BEAM, TUNE_BUDGET, WORKERS)
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_SUFFIX = '.config'


def parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ('1', 'true', 'yes', 'on'):
        return True
    if value in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(f"not a boolean: {text!r}")


@dataclass(frozen=True)
class Setting:
    """
    Attributes:
        parse: Преобразование из строки
        default: Значение по умолчанию (None - не задано)
        required: Должно быть задано
        path: 'in' - файл должен существовать, 'out' - должна существовать папка
    """

    parse: Callable[[str], Any]
    default: Any = None
    required: bool = False
    path: Optional[str] = None


def _in(required: bool = True) -> Setting:
    return Setting(str, required=required, path='in')


def _out(required: bool = True) -> Setting:
    return Setting(str, required=required, path='out')


_SEARCH = {
    'beam': Setting(int, BEAM_SIZE),
    'heuristic': Setting(str, HEURISTIC),
    'recombination': Setting(parse_bool, False),
    'recombination_k': Setting(int, RECOMBINATION_K),
    'f_weight': Setting(float, F_WEIGHT),
    'renormalize': Setting(parse_bool, False),
    'unigrams': _in(required=False),
    'workers': Setting(int, WORKERS),
}

COMMAND_SETTINGS: Dict[str, Dict[str, Setting]] = {
    'vocab': {
        'train': _in(),
        'output': _out(),
        'size': Setting(int, 10000),
        'ptb': Setting(parse_bool, False),
    },
    'toy': {
        'output': _out(),
        'size': Setting(int, 2000),
        'seed': Setting(int, SEED),
        'shared_function_words': Setting(parse_bool, True),
    },
    'train': {
        'kind': Setting(str, required=True),
        'train': _in(),
        'dev': _in(required=False),
        'vocab': _in(),
        'output': _out(),
        'order': Setting(int, NGRAM_ORDER),
        'smoothing': Setting(str, NGRAM_SMOOTHING),
        'preset': Setting(str, DEFAULT_PRESET),
        'embed': Setting(int),
        'hidden': Setting(int),
        'attention': Setting(int),
        'context': Setting(int, NPLM_CONTEXT),
        'epochs': Setting(int, TRAIN_EPOCHS),
        'learning_rate': Setting(float, LEARNING_RATE),
        'clip': Setting(float, GRAD_CLIP),
        'init_scale': Setting(float, INIT_SCALE),
        'encoder_init_scale': Setting(float, ENCODER_INIT_SCALE),
        'lr_patience': Setting(int, LR_PATIENCE),
        'seed': Setting(int, SEED),
    },
    'shuffle': {
        'input': _in(),
        'output': _out(),
        'mode': Setting(str, 'random'),
        'seed': Setting(int, SEED),
    },
    'decode': {
        'input': _in(),
        'output': _out(),
        'vocab': _in(),
        'scorers': Setting(str, required=True),
        'weights': _in(required=False),
        'nbest': _out(required=False),
        'stats': Setting(parse_bool, False),
        **_SEARCH,
    },
    'tune': {
        'dev_bags': _in(),
        'dev_refs': _in(),
        'vocab': _in(),
        'scorers': Setting(str, required=True),
        'output': _out(),
        'budget': Setting(int, TUNE_BUDGET),
        'seed': Setting(int, SEED),
        **_SEARCH,
        'beam': Setting(int, TUNE_BEAM),
    },
    'eval': {
        'hypotheses': _in(),
        'references': _in(),
        'output': _out(required=False),
    },
    'bench': {
        'input': _in(),
        'vocab': _in(),
        'scorers': Setting(str, required=True),
        'output': _out(),
        'beams': Setting(str, ','.join(map(str, BENCH_BEAMS))),
        'heuristics': Setting(str, 'none'),
        'sentences': Setting(int),
        'plot': _out(required=False),
        **{k: v for k, v in _SEARCH.items() if k not in ('beam', 'heuristic')},
        'workers': Setting(int, 1),
    },
}


def _format_value(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return str(value)


def parse_config_text(text: str, source: str = '<config>') -> Dict[str, str]:
    """Строки key=value; пустые строки и # комментарии пропускаются."""
    values = {}
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        key, sep, value = stripped.partition('=')
        if not sep or not key.strip():
            raise ConfigError(f"{source}:{number}: expected key=value, got {line!r}")
        values[key.strip()] = value.strip()
    return values


class ExperimentConfig:
    """
    Итоговые настройки одной команды.

    Доступ по ключу: config['beam'].
    """

    def __init__(self, command: str, values: Dict[str, Any]):
        self.command = command
        self.values = values

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    def get(self, key: str, default: Any = None) -> Any:
        value = self.values.get(key)
        return default if value is None else value

    @classmethod
    def resolve(cls, command: str, config_path: Optional[str] = None,
                overrides: Optional[Mapping[str, Any]] = None) -> 'ExperimentConfig':
        """
        Собрать конфигурацию команды.

        Args:
            command: Имя подкоманды
            config_path: Файл key=value
            overrides: Значения флагов (None - флаг не задан)

        Raises:
            ConfigError: Неизвестный ключ, неверное значение, нет обязательного ключа или файла
        """
        if command not in COMMAND_SETTINGS:
            raise ConfigError(f"unknown command {command!r}")
        settings = COMMAND_SETTINGS[command]
        values = {key: setting.default for key, setting in settings.items()}

        if config_path:
            if not os.path.isfile(config_path):
                raise ConfigError(f"config file not found: {config_path}")
            with open(config_path, 'r', encoding='utf-8') as f:
                for key, text in parse_config_text(f.read(), config_path).items():
                    if key not in settings:
                        raise ConfigError(f"{config_path}: unknown key {key!r} for command {command}")
                    if text == '':
                        values[key] = None
                        continue
                    try:
                        values[key] = settings[key].parse(text)
                    except ValueError as e:
                        raise ConfigError(f"{config_path}: bad value for {key}: {e}")

        for key, value in (overrides or {}).items():
            if value is None:
                continue
            if key not in settings:
                raise ConfigError(f"unknown option {key!r} for command {command}")
            values[key] = value

        config = cls(command, values)
        config.validate()
        return config

    def validate(self):
        settings = COMMAND_SETTINGS[self.command]
        for key, setting in settings.items():
            value = self.values.get(key)
            if value is None:
                if setting.required:
                    raise ConfigError(f"{self.command}: missing required setting {key!r}")
                continue
            if setting.path == 'in' and not os.path.isfile(value):
                raise ConfigError(f"{self.command}: {key} file not found: {value}")
            if setting.path == 'out':
                parent = os.path.dirname(os.path.abspath(value))
                if not os.path.isdir(parent):
                    raise ConfigError(f"{self.command}: output directory does not exist: {parent}")

    def to_text(self) -> str:
        return ''.join(f"{key}={_format_value(self.values[key])}\n" for key in sorted(self.values))

    def save_next_to(self, output_path: Optional[str]) -> Optional[str]:
        """Записать <output>.config; без основного результата ничего не пишется."""
        if not output_path:
            return None
        path = output_path + CONFIG_SUFFIX
        with open(path, 'w', encoding='utf-8') as f:
            f.write(self.to_text())
        logger.info(f"💾 [CONFIG] конфигурация сохранена в {path}")
        return path


def overrides_from_args(command: str, args) -> Dict[str, Any]:
    """Значения флагов argparse, относящиеся к настройкам команды."""
    return {key: getattr(args, key) for key in COMMAND_SETTINGS[command] if hasattr(args, key)}
