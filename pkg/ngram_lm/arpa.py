"""
Чтение и запись ARPA файлов.

Формат:
    \\data\\
    ngram 1=N1
    ...
    \\1-grams:
    logp<TAB>w<TAB>bow
    ...
    \\end\\
"""

import logging
import re
from typing import List, Optional

from config import ARPA_LOG_ZERO
from core.vocabulary import Vocabulary
from ngram_lm.model import NGramModel, NGramTable
from utils.errors import ArpaFormatError, VocabularyMismatchError

logger = logging.getLogger(__name__)

FINGERPRINT_PREFIX = '# vocabulary-sha256: '
_COUNT_LINE = re.compile(r'^ngram\s+(\d+)\s*=\s*(\d+)$')
_SECTION_LINE = re.compile(r'^\\(\d+)-grams:$')


def _format_float(value: float) -> str:
    return f"{value:.10f}"


def export_arpa(model: NGramModel, vocab: Vocabulary) -> str:
    """
    Сериализовать модель в ARPA текст.

    Args:
        model: n-gram модель
        vocab: Словарь, по которому id переводятся в формы

    Returns:
        str: ARPA текст (log10, поля через табуляцию)
    """
    lines = [FINGERPRINT_PREFIX + vocab.fingerprint(), '', '\\data\\']
    for k, table in enumerate(model.entries, start=1):
        lines.append(f"ngram {k}={len(table)}")

    for k, table in enumerate(model.entries, start=1):
        lines.append('')
        lines.append(f"\\{k}-grams:")
        highest = k == model.order
        for ngram in sorted(table):
            logp, bow = table[ngram]
            words = ' '.join(vocab.token_of(i) for i in ngram)
            if highest:
                lines.append(f"{_format_float(logp)}\t{words}")
            else:
                lines.append(f"{_format_float(logp)}\t{words}\t{_format_float(bow)}")

    lines.append('')
    lines.append('\\end\\')
    return '\n'.join(lines) + '\n'


def write_arpa(model: NGramModel, vocab: Vocabulary, path: str):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(export_arpa(model, vocab))
    logger.info(f"💾 [ARPA] Модель записана в {path} ({model.counts()})")


def import_arpa(text: str, vocab: Vocabulary) -> NGramModel:
    """
    Разобрать ARPA текст.

    Args:
        text: Содержимое ARPA файла
        vocab: Словарь; все слова файла должны в нём быть

    Returns:
        NGramModel: Модель с теми же log10 значениями

    Raises:
        ArpaFormatError: Нарушена структура файла или не сходятся счётчики
        VocabularyMismatchError: Отпечаток словаря не совпадает или слово вне словаря
    """
    lines = text.splitlines()
    index = 0

    # Всё до \data\ - комментарии (в том числе отпечаток словаря)
    while index < len(lines) and lines[index].strip() != '\\data\\':
        line = lines[index].strip()
        if line.startswith(FINGERPRINT_PREFIX):
            expected = line[len(FINGERPRINT_PREFIX):].strip()
            if expected != vocab.fingerprint():
                raise VocabularyMismatchError(
                    "ARPA model was built over a different vocabulary (fingerprint mismatch)"
                )
        index += 1
    if index == len(lines):
        raise ArpaFormatError("missing \\data\\ header")
    index += 1

    declared: List[int] = []
    while index < len(lines) and lines[index].strip():
        match = _COUNT_LINE.match(lines[index].strip())
        if not match:
            raise ArpaFormatError(f"line {index + 1}: malformed count line {lines[index]!r}")
        order, count = int(match.group(1)), int(match.group(2))
        if order != len(declared) + 1:
            raise ArpaFormatError(f"line {index + 1}: expected count for order {len(declared) + 1}")
        declared.append(count)
        index += 1
    if not declared:
        raise ArpaFormatError("no n-gram counts declared in \\data\\ section")

    entries: List[NGramTable] = [dict() for _ in declared]
    current: Optional[int] = None
    finished = False
    while index < len(lines):
        line = lines[index].strip()
        index += 1
        if not line:
            continue
        if line == '\\end\\':
            finished = True
            break
        section = _SECTION_LINE.match(line)
        if section:
            current = int(section.group(1))
            if current < 1 or current > len(declared):
                raise ArpaFormatError(f"line {index}: section \\{current}-grams: not declared in \\data\\")
            continue
        if line.startswith('\\'):
            raise ArpaFormatError(f"line {index}: malformed section header {line!r}")
        if current is None:
            raise ArpaFormatError(f"line {index}: n-gram entry outside of a section")

        fields = line.split('\t') if '\t' in line else line.split()
        try:
            if '\t' in line:
                logp = float(fields[0])
                words = fields[1].split()
                bow = float(fields[2]) if len(fields) > 2 else 0.0
            else:
                logp = float(fields[0])
                words = fields[1:1 + current]
                bow = float(fields[1 + current]) if len(fields) > 1 + current else 0.0
        except (ValueError, IndexError):
            raise ArpaFormatError(f"line {index}: malformed n-gram entry {line!r}")
        if len(words) != current:
            raise ArpaFormatError(f"line {index}: expected {current} words, got {len(words)}")

        ngram = []
        for word in words:
            if word not in vocab:
                raise VocabularyMismatchError(f"line {index}: word {word!r} is not in the vocabulary")
            ngram.append(vocab.id_of(word))
        entries[current - 1][tuple(ngram)] = (logp, bow)

    if not finished:
        raise ArpaFormatError("missing \\end\\ marker")

    for k, (table, count) in enumerate(zip(entries, declared), start=1):
        if len(table) != count:
            raise ArpaFormatError(f"\\{k}-grams: header declares {count} entries, found {len(table)}")

    return NGramModel(len(declared), entries, vocab.bos_id, vocab.eos_id, vocab.unk_id,
                      len(vocab), floor=ARPA_LOG_ZERO, smoothing='arpa')


def read_arpa(path: str, vocab: Vocabulary) -> NGramModel:
    with open(path, 'r', encoding='utf-8') as f:
        model = import_arpa(f.read(), vocab)
    logger.info(f"📖 [ARPA] {path}: порядок {model.order}, n-граммы {model.counts()}")
    return model
