import logging
import random
from typing import List, Sequence

from core.corpus import read_token_lines, write_lines
from handlers.common import add_config_argument, resolve
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

SHUFFLE_MODES = ('random', 'sorted')


def register(subparsers):
    parser = subparsers.add_parser('shuffle', help='превратить предложения в мешки слов')
    add_config_argument(parser)
    parser.add_argument('--input', help='предложения')
    parser.add_argument('--output', help='мешки')
    parser.add_argument('--mode', choices=SHUFFLE_MODES, help='random (с seed) или sorted')
    parser.add_argument('--seed', type=int)
    parser.set_defaults(handler=cmd_shuffle)


def shuffle_lines(sentences: Sequence[Sequence[str]], mode: str, seed: int) -> List[List[str]]:
    """
    Перестановка каждой строки.

    sorted - по кодовым точкам; random - один генератор на весь файл.
    """
    if mode == 'sorted':
        return [sorted(tokens) for tokens in sentences]
    if mode != 'random':
        raise ConfigError(f"unknown shuffle mode {mode!r}, expected one of {SHUFFLE_MODES}")
    rng = random.Random(seed)
    bags = []
    for tokens in sentences:
        bag = list(tokens)
        rng.shuffle(bag)
        bags.append(bag)
    return bags


def cmd_shuffle(args) -> int:
    cfg = resolve('shuffle', args)
    bags = shuffle_lines(read_token_lines(cfg['input']), cfg['mode'], cfg['seed'])
    write_lines(cfg['output'], bags)
    cfg.save_next_to(cfg['output'])
    logger.info(f"🔀 [SHUFFLE] {len(bags)} строк ({cfg['mode']}) -> {cfg['output']}")
    print(f"✅ Мешки сохранены: {cfg['output']} ({len(bags)} строк)")
    return 0
