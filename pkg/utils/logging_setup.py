import logging
import os
from datetime import datetime
from typing import Optional

from config import DEBUG, LOG_DIR

DEBUG_FORMAT = '%(asctime)s - [%(name)s] - %(levelname)s - %(message)s'
DEFAULT_FORMAT = '%(asctime)s - [%(levelname)s] - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(verbose: bool = False, log_to_file: bool = False) -> Optional[str]:
    """
    Настроить логирование один раз на процесс.

    Args:
        verbose: Уровень DEBUG и формат с именем логгера
        log_to_file: Дополнительно писать в файл в LOG_DIR

    Returns:
        Optional[str]: Путь к лог-файлу, если он создан
    """
    debug = verbose or DEBUG
    fmt = DEBUG_FORMAT if debug else DEFAULT_FORMAT
    handlers = [logging.StreamHandler()]
    log_path = None
    if log_to_file:
        os.makedirs(LOG_DIR, exist_ok=True)
        log_path = os.path.join(LOG_DIR, f"wordorder_{datetime.now():%Y%m%d_%H%M%S}.log")
        handlers.append(logging.FileHandler(log_path, encoding='utf-8'))
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.INFO,
        format=fmt,
        datefmt=DATE_FORMAT,
        handlers=handlers,
        force=True,
    )
    return log_path
