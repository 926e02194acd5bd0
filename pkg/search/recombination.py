"""
Рекомбинация гипотез с одинаковыми (остатком мешка, последними k словами).

Для n-gram скорера при k = n-1 объединение точное; для нейросетей это
приближение.
"""

from typing import Dict, List, Sequence, Tuple

from search.hypothesis import Hypothesis


def signature(hyp: Hypothesis, k: int) -> Tuple:
    tail = hyp.prefix[-k:] if k > 0 else ()
    return hyp.remaining.key, tail


def _better(a: Hypothesis, b: Hypothesis) -> bool:
    return a.score > b.score or (a.score == b.score and a.prefix < b.prefix)


def recombine(candidates: Sequence[Hypothesis], k: int) -> List[Hypothesis]:
    """
    Оставить по одной гипотезе с максимальным s на сигнатуру.

    При равных s побеждает лексикографически меньший префикс. Порядок
    выживших совпадает с порядком первого появления сигнатур.
    """
    survivors: Dict[Tuple, Hypothesis] = {}
    for hyp in candidates:
        key = signature(hyp, k)
        current = survivors.get(key)
        if current is None or _better(hyp, current):
            survivors[key] = hyp
    return list(survivors.values())
