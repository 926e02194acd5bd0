"""
Файл весов: по строке "имя<TAB>lambda" на участника комбинации.
"""

import logging
import math
from typing import Dict, List, Sequence, Tuple

from utils.errors import ConfigError

logger = logging.getLogger(__name__)


def format_weights(names: Sequence[str], weights: Sequence[float]) -> str:
    return ''.join(f"{name}\t{weight:.10g}\n" for name, weight in zip(names, weights))


def write_weights(path: str, names: Sequence[str], weights: Sequence[float]):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_weights(names, weights))
    logger.info(f"💾 [WEIGHTS] {path}: {dict(zip(names, weights))}")


def parse_weights(text: str, source: str = '<weights>') -> List[Tuple[str, float]]:
    entries = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith('#'):
            continue
        fields = line.split('\t') if '\t' in line else line.split()
        if len(fields) != 2:
            raise ConfigError(f"{source}:{number}: expected 'name<TAB>weight', got {line!r}")
        try:
            weight = float(fields[1])
        except ValueError:
            raise ConfigError(f"{source}:{number}: weight is not a number: {fields[1]!r}")
        if not math.isfinite(weight) or weight < 0:
            raise ConfigError(f"{source}:{number}: weight must be finite and non-negative")
        entries.append((fields[0].strip(), weight))
    return entries


def read_weights(path: str) -> List[Tuple[str, float]]:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_weights(f.read(), path)


def apply_weights(names: Sequence[str], entries: Sequence[Tuple[str, float]]) -> List[float]:
    """
    Разложить веса из файла по скорерам.

    Повторяющиеся имена (ансамбли) сопоставляются по порядку появления.

    Raises:
        ConfigError: Число или имена записей не совпадают со скорерами
    """
    if len(entries) != len(names):
        raise ConfigError(f"weights file has {len(entries)} entries for {len(names)} scorers")
    by_name: Dict[str, List[float]] = {}
    for name, weight in entries:
        by_name.setdefault(name, []).append(weight)
    weights = []
    for name in names:
        if not by_name.get(name):
            raise ConfigError(f"weights file has no entry for scorer {name!r}")
        weights.append(by_name[name].pop(0))
    return weights
