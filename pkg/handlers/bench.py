import logging
from typing import List

from config import HEURISTICS
from core.corpus import read_token_lines
from core.vocabulary import Vocabulary
from evaluation.benchmark import BenchConfig, benchmark_decode, plot_timing
from handlers.common import add_config_argument, add_search_arguments, bags_from_lines, beam_config_from, resolve, \
    unigrams_for
from scorers.loader import load_combo, parse_scorer_list
from utils.errors import ConfigError
from utils.messages import format_timing_report

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('bench', help='время декодирования в зависимости от луча')
    add_config_argument(parser)
    parser.add_argument('--input', help='мешки')
    parser.add_argument('--vocab', help='файл словаря')
    parser.add_argument('--scorers', help='наборы скореров через ";", внутри набора через ","')
    parser.add_argument('--output', help='TSV с замерами')
    parser.add_argument('--beams', help='лучи через запятую (по умолчанию 1,5,64,512)')
    parser.add_argument('--heuristics', help='эвристики через запятую')
    parser.add_argument('--sentences', type=int, help='взять первые N мешков')
    parser.add_argument('--plot', help='PNG с графиком')
    add_search_arguments(parser, beam=False)
    parser.set_defaults(handler=cmd_bench)


def _int_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise ConfigError("at least one beam size is required")
    return values


def cmd_bench(args) -> int:
    """
    Замерить все сочетания (набор скореров x луч x эвристика).
    """
    cfg = resolve('bench', args)
    vocab = Vocabulary.load(cfg['vocab'])
    beams = _int_list(cfg['beams'])
    heuristics = [h.strip() for h in cfg['heuristics'].split(',') if h.strip()]
    for heuristic in heuristics:
        if heuristic not in HEURISTICS:
            raise ConfigError(f"unknown heuristic {heuristic!r}")

    lines = [tokens for tokens in read_token_lines(cfg['input']) if tokens]
    if cfg.get('sentences'):
        lines = lines[:cfg['sentences']]
    bags = bags_from_lines(lines, vocab)

    configurations = []
    for scorer_set in cfg['scorers'].split(';'):
        if not scorer_set.strip():
            continue
        combo = load_combo(parse_scorer_list(scorer_set), vocab)
        unigrams = unigrams_for(cfg, combo, vocab, heuristics)
        for heuristic in heuristics:
            for beam in beams:
                configurations.append(BenchConfig(combo, beam_config_from(cfg, beam, heuristic), unigrams))

    report = benchmark_decode(bags, configurations, workers=cfg['workers'])
    with open(cfg['output'], 'w', encoding='utf-8') as f:
        f.write(report.to_tsv())
    if cfg.get('plot'):
        plot_timing(report, cfg['plot'])
    cfg.save_next_to(cfg['output'])
    print(format_timing_report(report))
    return 0
