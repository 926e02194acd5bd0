import logging

from core.corpus import read_token_lines
from evaluation.bleu import corpus_bleu
from handlers.common import add_config_argument, resolve
from utils.errors import DataError
from utils.messages import format_bleu_report

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('eval', help='корпусный BLEU')
    add_config_argument(parser)
    parser.add_argument('hypotheses', nargs='?', help='гипотезы')
    parser.add_argument('references', nargs='?', help='эталоны')
    parser.add_argument('--output', help='файл для отчёта')
    parser.set_defaults(handler=cmd_eval)


def cmd_eval(args) -> int:
    cfg = resolve('eval', args)
    hypotheses = read_token_lines(cfg['hypotheses'])
    references = read_token_lines(cfg['references'])
    if len(hypotheses) != len(references):
        raise DataError(f"{cfg['hypotheses']} has {len(hypotheses)} lines, "
                        f"{cfg['references']} has {len(references)}")
    report = corpus_bleu(hypotheses, references)
    text = format_bleu_report(report)
    if cfg.get('output'):
        with open(cfg['output'], 'w', encoding='utf-8') as f:
            f.write(text + '\n')
        cfg.save_next_to(cfg['output'])
    logger.info(f"📏 [EVAL] {report.summary_line()}")
    print(text)
    return 0
