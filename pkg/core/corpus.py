"""
Чтение и запись корпусов: UTF-8, одно предложение в строке, токены через пробел.
"""

import logging
from typing import Iterable, Iterator, List, Sequence

from core.bag import TokenSequence
from core.vocabulary import Vocabulary
from utils.errors import CorpusFormatError

logger = logging.getLogger(__name__)


def iter_token_lines(path: str) -> Iterator[List[str]]:
    """
    Построчно прочитать токенизированный файл.

    Args:
        path: Путь к файлу

    Yields:
        List[str]: Токены очередной строки (пустая строка -> пустой список)

    Raises:
        CorpusFormatError: Если строка не декодируется как UTF-8
    """
    with open(path, 'rb') as f:
        for line_number, raw in enumerate(f, start=1):
            try:
                line = raw.decode('utf-8')
            except UnicodeDecodeError as e:
                raise CorpusFormatError(path, line_number, f"invalid UTF-8 ({e.reason})")
            yield line.split()


def read_token_lines(path: str) -> List[List[str]]:
    return list(iter_token_lines(path))


def load_corpus(path: str, vocab: Vocabulary) -> List[TokenSequence]:
    """
    Загрузить корпус как последовательности id.

    Порядок строк сохраняется, OOV -> unk.

    Args:
        path: Путь к корпусу
        vocab: Словарь

    Returns:
        List[TokenSequence]: Предложения
    """
    corpus = [vocab.encode(tokens) for tokens in iter_token_lines(path)]
    unk_count = sum(1 for sentence in corpus for token_id in sentence if token_id == vocab.unk_id)
    logger.info(f"📖 [CORPUS] {path}: {len(corpus)} предложений, unk: {unk_count}")
    return corpus


def write_lines(path: str, sentences: Iterable[Sequence[str]]):
    """Записать предложения (списки токенов) по одному в строке."""
    with open(path, 'w', encoding='utf-8') as f:
        for tokens in sentences:
            f.write(' '.join(tokens) + '\n')
