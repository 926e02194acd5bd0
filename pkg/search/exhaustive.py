"""
Полный перебор перестановок мешка - оракул для измерения ошибок поиска.
"""

from typing import Iterator, Optional, Tuple

import numpy as np

from config import MAX_EXHAUSTIVE_BAG
from core.bag import Bag
from scorers.base import Scorer
from search.hypothesis import Hypothesis


def distinct_permutations(bag: Bag) -> Iterator[Tuple[int, ...]]:
    """Различные перестановки мультимножества в лексикографическом порядке id."""
    if not bag:
        yield ()
        return
    for token_id in bag.types():
        for rest in distinct_permutations(bag.remove(token_id)):
            yield (token_id,) + rest


def exhaustive_decode(bag: Bag, scorer: Scorer, renormalize: bool = False,
                      max_size: int = MAX_EXHAUSTIVE_BAG) -> Hypothesis:
    """
    Перестановка с максимальным s (включая </s>).

    Префиксы общие, поэтому каждый узел дерева перебора стоит один шаг
    скорера. При равных s побеждает лексикографически меньшая.

    Raises:
        ValueError: Пустой мешок или мешок больше max_size
    """
    if not bag:
        raise ValueError("cannot order an empty bag")
    if bag.size > max_size:
        raise ValueError(f"exhaustive search is limited to bags of {max_size} tokens, got {bag.size}")

    bos = scorer.vocab.bos_id
    eos = scorer.vocab.eos_id
    best: Optional[Hypothesis] = None

    def visit(hyp: Hypothesis):
        nonlocal best
        if hyp.complete:
            scores, state = scorer.step_candidates(hyp.state, hyp.prefix[-1], [eos])
            final = Hypothesis(hyp.prefix, hyp.remaining, hyp.score + float(scores[0]), state)
            if best is None or final.score > best.score:
                best = final
            return
        types = hyp.remaining.types()
        scores, state = scorer.step_candidates(hyp.state, hyp.last_token(bos), types)
        if renormalize:
            scores = scores - np.logaddexp.reduce(scores)
        for token_id, logp in zip(types, scores):
            visit(Hypothesis(hyp.prefix + (token_id,), hyp.remaining.remove(token_id),
                             hyp.score + float(logp), state))

    visit(Hypothesis((), bag, 0.0, scorer.initial_state(bag)))
    return best
