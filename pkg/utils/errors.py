"""
Исключения тулкита и безопасное форматирование ошибок для CLI.
"""

import re
from typing import Optional

from config import EXIT_DATA, EXIT_INTERNAL, EXIT_USAGE


class WordOrderError(Exception):
    """Базовое исключение тулкита."""

    exit_code = EXIT_INTERNAL


class ConfigError(WordOrderError):
    """Неверная конфигурация эксперимента (неизвестный ключ, нет файла и т.д.)."""

    exit_code = EXIT_USAGE


class DataError(WordOrderError):
    """Проблема с входными данными или артефактами."""

    exit_code = EXIT_DATA


class CorpusFormatError(DataError):
    """Ошибка в корпусе с указанием строки."""

    def __init__(self, path: str, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {reason}")


class ArpaFormatError(DataError):
    """Некорректный ARPA файл."""


class ModelFormatError(DataError):
    """Некорректный бинарный контейнер модели."""


class VocabularyMismatchError(DataError):
    """Скореры построены над разными словарями."""


class SmoothingError(DataError):
    """Сглаживание неприменимо к этим данным."""


class TrainingDivergenceError(DataError):
    """
    Функция потерь стала не конечной во время обучения.

    Args:
        epoch: Номер эпохи
        example_index: Индекс примера в корпусе
        learning_rate: Текущий шаг обучения
        loss: Значение функции потерь
    """

    def __init__(self, epoch: int, example_index: int, learning_rate: float, loss: float):
        self.epoch = epoch
        self.example_index = example_index
        self.learning_rate = learning_rate
        self.loss = loss
        super().__init__(
            f"training diverged: epoch {epoch}, example {example_index}, "
            f"learning rate {learning_rate:g}, loss {loss!r}; "
            f"try a smaller learning rate or gradient clip"
        )


class SearchInvariantError(WordOrderError):
    """Нарушен внутренний инвариант поиска (это баг, а не ошибка данных)."""

    exit_code = EXIT_INTERNAL


class DecodeError(WordOrderError):
    """
    Ошибка при декодировании конкретного предложения корпуса.

    Код выхода берётся у исходной ошибки.
    """

    def __init__(self, sentence_index: int, cause: BaseException):
        self.sentence_index = sentence_index
        self.cause = cause
        self.exit_code = exit_code_for(cause)
        super().__init__(f"sentence {sentence_index + 1}: {cause}")


def exit_code_for(error: BaseException) -> int:
    """
    Код выхода для исключения.

    Args:
        error: Пойманное исключение

    Returns:
        int: 1 - usage, 2 - данные, 3 - внутренняя ошибка
    """
    if isinstance(error, WordOrderError):
        return error.exit_code
    if isinstance(error, ValueError):
        return EXIT_USAGE
    if isinstance(error, OSError):
        return EXIT_DATA
    return EXIT_INTERNAL


def sanitize_error_message(error: BaseException, context: Optional[str] = None) -> str:
    """
    Очистить сообщение об ошибке от путей домашних директорий.

    Args:
        error: Объект исключения
        context: Необязательный префикс (например, имя файла)

    Returns:
        str: Однострочное сообщение для пользователя
    """
    try:
        error_type = type(error).__name__
    except Exception:
        error_type = "UnknownError"

    try:
        error_message = str(error)
    except Exception:
        error_message = repr(error)

    for pattern in (r'/home/[^/\s]+', r'/Users/[^/\s]+', r'C:\\Users\\[^\\\s]+'):
        error_message = re.sub(pattern, '~', error_message)

    error_message = error_message.replace('\n', ' ').strip()
    prefix = f"{context}: " if context else ""
    return f"{prefix}{error_type}: {error_message}"
