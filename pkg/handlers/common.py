"""
Общие флаги и помощники подкоманд.
"""

import argparse
from typing import List, Optional, Sequence

from config import HEURISTICS
from core.bag import Bag, bag_of_words
from core.vocabulary import Vocabulary
from ngram_lm.unigrams import UnigramTable
from scorers.loader import load_unigrams, unigrams_from_combo
from search.hypothesis import BeamConfig
from utils.errors import ConfigError
from utils.experiment import ExperimentConfig, overrides_from_args


def add_config_argument(parser: argparse.ArgumentParser):
    parser.add_argument('--config', help='key=value файл настроек (флаги важнее)')


def add_search_arguments(parser: argparse.ArgumentParser, beam: bool = True):
    """Флаги поиска; все по умолчанию None, чтобы не перекрывать файл настроек."""
    if beam:
        parser.add_argument('--beam', type=int, help='размер луча')
        parser.add_argument('--heuristic', choices=HEURISTICS, help='эвристика ранжирования')
    parser.add_argument('--recombination', action='store_true', default=None, help='рекомбинация гипотез')
    parser.add_argument('--recombination-k', dest='recombination_k', type=int, help='контекст рекомбинации')
    parser.add_argument('--f-weight', dest='f_weight', type=float, help='вес униграммной оценки f')
    parser.add_argument('--renormalize', action='store_true', default=None,
                        help='перенормировать вероятности по кандидатам')
    parser.add_argument('--unigrams', help='ARPA модель или корпус для эвристики f')
    parser.add_argument('--workers', type=int, help='число потоков декодирования')


def resolve(command: str, args) -> ExperimentConfig:
    return ExperimentConfig.resolve(command, getattr(args, 'config', None), overrides_from_args(command, args))


def beam_config_from(cfg: ExperimentConfig, beam: Optional[int] = None,
                     heuristic: Optional[str] = None) -> BeamConfig:
    config = BeamConfig(
        beam_size=beam if beam is not None else cfg['beam'],
        heuristic=heuristic if heuristic is not None else cfg['heuristic'],
        recombination=cfg['recombination'],
        recombination_k=cfg['recombination_k'],
        f_weight=cfg['f_weight'],
        renormalize=cfg['renormalize'],
    )
    try:
        config.validate()
    except ValueError as e:
        raise ConfigError(str(e))
    return config


def unigrams_for(cfg: ExperimentConfig, combo, vocab: Vocabulary,
                 heuristics: Sequence[str]) -> Optional[UnigramTable]:
    """Униграммы, если хоть одна конфигурация использует f."""
    if 'f' not in heuristics:
        return None
    if cfg.get('unigrams'):
        return load_unigrams(cfg['unigrams'], vocab)
    table = unigrams_from_combo(combo)
    if table is None:
        raise ConfigError("heuristic f needs --unigrams (an ARPA model or a corpus) or an n-gram scorer")
    return table


def bags_from_lines(lines: Sequence[Sequence[str]], vocab: Vocabulary) -> List[Bag]:
    return [bag_of_words(vocab.encode(tokens)) for tokens in lines]
