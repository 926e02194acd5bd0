import logging

from core.corpus import read_token_lines
from core.vocabulary import build_vocab
from handlers.common import add_config_argument, resolve
from utils.messages import format_vocab_summary

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('vocab', help='построить словарь по обучающему корпусу')
    add_config_argument(parser)
    parser.add_argument('--train', help='обучающий корпус')
    parser.add_argument('--output', help='файл словаря')
    parser.add_argument('--size', type=int, help='размер словаря вместе со служебными токенами')
    parser.add_argument('--ptb', action='store_true', default=None, help='два unk-токена (PTB)')
    parser.set_defaults(handler=cmd_vocab)


def cmd_vocab(args) -> int:
    """
    Построить и сохранить словарь.
    """
    cfg = resolve('vocab', args)
    logger.info(f"📚 [VOCAB] Строю словарь по {cfg['train']}")
    vocab = build_vocab(read_token_lines(cfg['train']), cfg['size'], ptb=cfg['ptb'])
    vocab.save(cfg['output'])
    cfg.save_next_to(cfg['output'])
    print(format_vocab_summary(cfg['output'], len(vocab), vocab.reserved_tokens))
    return 0
