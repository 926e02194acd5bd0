import logging

from core.corpus import write_lines
from core.toy_grammar import generate_toy_corpus
from handlers.common import add_config_argument, resolve

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('toy', help='сгенерировать корпус игрушечной грамматики')
    add_config_argument(parser)
    parser.add_argument('--output', help='куда записать предложения')
    parser.add_argument('--size', type=int, help='число предложений')
    parser.add_argument('--seed', type=int, help='seed генератора')
    parser.add_argument('--disjoint', dest='shared_function_words', action='store_false', default=None,
                        help='разные служебные слова в разных слотах (порядок однозначен по мешку)')
    parser.set_defaults(handler=cmd_toy)


def cmd_toy(args) -> int:
    cfg = resolve('toy', args)
    if cfg['size'] < 1:
        raise ValueError(f"size must be >= 1, got {cfg['size']}")
    sentences = generate_toy_corpus(cfg['size'], seed=cfg['seed'],
                                    shared_function_words=cfg['shared_function_words'])
    write_lines(cfg['output'], sentences)
    cfg.save_next_to(cfg['output'])
    logger.info(f"🧸 [TOY] {len(sentences)} предложений записано в {cfg['output']}")
    print(f"✅ Корпус сохранён: {cfg['output']} ({len(sentences)} предложений)")
    return 0
