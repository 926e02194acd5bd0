import argparse
import logging
import sys
from typing import List, Optional

from config import EXIT_INTERNAL
from handlers import COMMANDS
from utils.errors import exit_code_for, sanitize_error_message
from utils.logging_setup import setup_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='wordorder',
        description='Восстановление порядка слов: n-gram и нейросетевые модели, лучевой поиск, BLEU',
    )
    parser.add_argument('--verbose', '-v', action='store_true', help='подробный лог (DEBUG)')
    parser.add_argument('--log-file', dest='log_file', action='store_true', help='дублировать лог в файл')
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Точка входа CLI.

    Returns:
        int: Код выхода (0 - успех, 1 - usage, 2 - данные, 3 - внутренняя ошибка)
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, 'handler', None):
        parser.print_help(sys.stderr)
        return exit_code_for(ValueError('no command'))

    log_path = setup_logging(verbose=args.verbose, log_to_file=args.log_file)
    if log_path:
        logger.info(f"📝 [MAIN] Лог пишется в {log_path}")
    logger.debug(f"🚀 [MAIN] Команда: {args.command}")

    try:
        return args.handler(args)
    except KeyboardInterrupt:
        logger.warning("👋 [MAIN] Прервано пользователем")
        return EXIT_INTERNAL
    except Exception as e:
        logger.debug("❌ [MAIN] Трейсбек:", exc_info=True)
        print(f"❌ {sanitize_error_message(e)}", file=sys.stderr)
        return exit_code_for(e)


if __name__ == '__main__':
    sys.exit(main())
