"""
Лучевой поиск по перестановкам мешка слов.

На шаге t каждая гипотеза луча один раз продвигает состояние скорера на
свой последний токен и получает оценки всех оставшихся типов слов. Из
потомков после (необязательной) рекомбинации остаются n лучших по
S = s (none), s + f (f) или s - g (g). Когда мешок пуст, к s добавляется
log P(</s>) и гипотезы ранжируются по s.
"""

import logging
from typing import List, Optional

import numpy as np

from core.bag import Bag
from ngram_lm.unigrams import UnigramTable
from scorers.base import Scorer
from search.heuristics import EstimateTable, heuristic_f, heuristic_g
from search.hypothesis import BeamConfig, Hypothesis, SearchResult, SearchStats, constrained_candidates
from search.recombination import recombine

logger = logging.getLogger(__name__)


def _expand(beam: List[Hypothesis], scorer: Scorer, renormalize: bool,
            estimates: Optional[EstimateTable]) -> List[Hypothesis]:
    bos = scorer.vocab.bos_id
    candidates = [constrained_candidates(hyp) for hyp in beam]
    scores, states = scorer.step_candidates_batch(
        [hyp.state for hyp in beam], [hyp.last_token(bos) for hyp in beam], candidates
    )
    children = []
    for hyp, types, type_scores, state in zip(beam, candidates, scores, states):
        if renormalize:
            type_scores = type_scores - np.logaddexp.reduce(type_scores)
        if estimates is not None:
            estimates.update_log(dict(zip(types, type_scores)))
        for token_id, logp in zip(types, type_scores):
            children.append(Hypothesis(hyp.prefix + (token_id,), hyp.remaining.remove(token_id),
                                       hyp.score + float(logp), state))
    return children


def _finalize(hypotheses: List[Hypothesis], scorer: Scorer) -> List[Hypothesis]:
    eos = scorer.vocab.eos_id
    scores, states = scorer.step_candidates_batch(
        [hyp.state for hyp in hypotheses], [hyp.prefix[-1] for hyp in hypotheses], [[eos]] * len(hypotheses)
    )
    return [Hypothesis(hyp.prefix, hyp.remaining, hyp.score + float(s[0]), state)
            for hyp, s, state in zip(hypotheses, scores, states)]


def beam_search(bag: Bag, scorer: Scorer, config: BeamConfig = None,
                unigrams: UnigramTable = None) -> SearchResult:
    """
    Упорядочить мешок.

    Args:
        bag: Непустой мешок слов
        scorer: Скорер (в том числе LogLinearCombo)
        config: Настройки луча
        unigrams: Униграммы для эвристики f

    Returns:
        SearchResult: До beam_size полных перестановок по убыванию s и статистика

    Raises:
        ValueError: Пустой мешок, неверные настройки или нет униграмм для f
    """
    config = config or BeamConfig()
    config.validate()
    if not bag:
        raise ValueError("cannot order an empty bag")
    if config.heuristic == 'f' and unigrams is None:
        raise ValueError("heuristic f needs a unigram table")

    stats = SearchStats()
    estimates = EstimateTable() if config.heuristic == 'g' else None
    beam = [Hypothesis((), bag, 0.0, scorer.initial_state(bag))]

    for step in range(bag.size):
        children = _expand(beam, scorer, config.renormalize, estimates)
        stats.expansions += len(children)
        if config.recombination:
            merged = recombine(children, config.recombination_k)
            stats.recombined += len(children) - len(merged)
            children = merged

        if config.heuristic == 'f':
            ranking = [hyp.score + heuristic_f(hyp, unigrams, config.f_weight) for hyp in children]
        elif config.heuristic == 'g':
            ranking = [hyp.score - heuristic_g(hyp, estimates) for hyp in children]
            stats.max_upper_bound_gap = max(stats.max_upper_bound_gap, max(ranking))
        else:
            ranking = [hyp.score for hyp in children]

        if step == bag.size - 1:
            beam = children
            break
        order = sorted(range(len(children)), key=lambda i: (-ranking[i], children[i].prefix))
        beam = [children[i] for i in order[:config.beam_size]]
        stats.pruned += len(children) - len(beam)

    finals = _finalize(beam, scorer)
    if config.heuristic == 'f':
        stats.max_f_residual = max(heuristic_f(hyp, unigrams, config.f_weight) for hyp in finals)
    finals.sort(key=lambda hyp: (-hyp.score, hyp.prefix))
    stats.pruned += max(0, len(finals) - config.beam_size)
    finals = finals[:config.beam_size]
    logger.debug(f"🔎 [SEARCH] |bag|={bag.size}: best s={finals[0].score:.4f}, "
                 f"expansions {stats.expansions}, recombined {stats.recombined}")
    return SearchResult(finals, stats)
