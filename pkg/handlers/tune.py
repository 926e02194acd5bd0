import logging

from combine.tuning import tune_weights
from combine.weights import write_weights
from core.corpus import read_token_lines
from core.vocabulary import Vocabulary
from handlers.common import (add_config_argument, add_search_arguments, bags_from_lines, beam_config_from,
                             resolve, unigrams_for)
from scorers.loader import load_combo, parse_scorer_list
from utils.errors import DataError
from utils.messages import format_tune_result

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('tune', help='подобрать веса комбинации по dev BLEU')
    add_config_argument(parser)
    parser.add_argument('--dev-bags', dest='dev_bags', help='dev мешки')
    parser.add_argument('--dev-refs', dest='dev_refs', help='dev эталоны')
    parser.add_argument('--vocab', help='файл словаря')
    parser.add_argument('--scorers', help='имя:путь[:вес] через запятую')
    parser.add_argument('--output', help='файл весов')
    parser.add_argument('--budget', type=int, help='максимум декодирований dev')
    parser.add_argument('--seed', type=int)
    add_search_arguments(parser)
    parser.set_defaults(handler=cmd_tune)


def cmd_tune(args) -> int:
    cfg = resolve('tune', args)
    vocab = Vocabulary.load(cfg['vocab'])
    specs = parse_scorer_list(cfg['scorers'])
    combo = load_combo(specs, vocab)
    beam = beam_config_from(cfg)
    unigrams = unigrams_for(cfg, combo, vocab, [beam.heuristic])

    bag_lines = read_token_lines(cfg['dev_bags'])
    ref_lines = read_token_lines(cfg['dev_refs'])
    if len(bag_lines) != len(ref_lines):
        raise DataError(f"{cfg['dev_bags']} has {len(bag_lines)} lines, {cfg['dev_refs']} has {len(ref_lines)}")
    pairs = [(bag, ref) for bag, ref in zip(bag_lines, ref_lines) if bag]
    bags = bags_from_lines([bag for bag, _ in pairs], vocab)
    # Эталоны проходят через словарь, чтобы OOV сравнивались как unk
    references = [vocab.decode(vocab.encode(ref)) for _, ref in pairs]

    result = tune_weights(combo, bags, references, beam, cfg['budget'], unigrams, cfg['seed'], cfg['workers'])
    names = [spec.name for spec in specs]
    write_weights(cfg['output'], names, result.weights)
    cfg.save_next_to(cfg['output'])
    print(format_tune_result(names, result))
    return 0
