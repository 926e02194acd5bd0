import logging
from collections import Counter, defaultdict, deque
from typing import List, Sequence

from core.corpus import read_token_lines, write_lines
from core.vocabulary import Vocabulary
from handlers.common import (add_config_argument, add_search_arguments, bags_from_lines, beam_config_from,
                             resolve, unigrams_for)
from scorers.loader import load_combo, parse_scorer_list
from search.batch import decode_corpus
from search.hypothesis import SearchStats
from utils.errors import SearchInvariantError
from utils.messages import format_search_stats

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('decode', help='упорядочить мешки слов')
    add_config_argument(parser)
    parser.add_argument('--input', help='мешки, по одному в строке')
    parser.add_argument('--output', help='упорядоченные предложения')
    parser.add_argument('--vocab', help='файл словаря')
    parser.add_argument('--scorers', help='имя:путь[:вес] через запятую')
    parser.add_argument('--weights', help='файл весов (важнее весов в --scorers)')
    parser.add_argument('--nbest', help='файл n-best: "rank ||| sequence ||| s"')
    parser.add_argument('--stats', action='store_true', default=None, help='вывести статистику поиска')
    add_search_arguments(parser)
    parser.set_defaults(handler=cmd_decode)


def restore_surface(ordered_ids: Sequence[int], tokens: Sequence[str], vocab: Vocabulary) -> List[str]:
    """
    Вернуть исходные формы: слова вне словаря (unk) встают на места unk
    в порядке появления во входе.
    """
    by_id = defaultdict(deque)
    for token in tokens:
        by_id[vocab.id_of(token)].append(token)
    return [by_id[token_id].popleft() for token_id in ordered_ids]


def cmd_decode(args) -> int:
    """
    Декодировать файл мешков.

    Каждая строка результата проверяется на то, что это перестановка входа.
    """
    cfg = resolve('decode', args)
    vocab = Vocabulary.load(cfg['vocab'])
    combo = load_combo(parse_scorer_list(cfg['scorers']), vocab, cfg.get('weights'))
    beam = beam_config_from(cfg)
    unigrams = unigrams_for(cfg, combo, vocab, [beam.heuristic])

    lines = read_token_lines(cfg['input'])
    indices = [i for i, tokens in enumerate(lines) if tokens]
    bags = bags_from_lines([lines[i] for i in indices], vocab)
    results = decode_corpus(bags, combo, beam, unigrams, cfg['workers'])

    outputs: List[List[str]] = [[] for _ in lines]
    nbest_blocks = [[] for _ in lines]
    stats = SearchStats()
    for index, result in zip(indices, results):
        stats.merge(result.stats)
        for rank, hyp in enumerate(result.hypotheses, start=1):
            words = restore_surface(hyp.prefix, lines[index], vocab)
            if rank == 1:
                outputs[index] = words
            nbest_blocks[index].append(f"{rank} ||| {' '.join(words)} ||| {hyp.score:.6f}")

    for number, (tokens, words) in enumerate(zip(lines, outputs), start=1):
        if Counter(tokens) != Counter(words):
            raise SearchInvariantError(f"line {number}: output is not a permutation of the input bag")

    write_lines(cfg['output'], outputs)
    if cfg.get('nbest'):
        with open(cfg['nbest'], 'w', encoding='utf-8') as f:
            # Блоки предложений разделены пустой строкой
            f.write('\n'.join(''.join(line + '\n' for line in block) for block in nbest_blocks))
    cfg.save_next_to(cfg['output'])
    logger.info(f"✅ [DECODE] {len(lines)} строк -> {cfg['output']}")
    print(f"✅ Упорядочено строк: {len(lines)} -> {cfg['output']}")
    if cfg['stats']:
        print(format_search_stats(stats))
    return 0
