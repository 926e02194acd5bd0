"""
Словарь: двунаправленное отображение токен <-> id с зарезервированными токенами.
"""

import hashlib
import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from config import BOS_TOKEN, EOS_TOKEN, PTB_SECOND_UNK_TOKEN, UNK_TOKEN
from utils.errors import DataError

logger = logging.getLogger(__name__)


class Vocabulary:
    """
    Неизменяемый словарь.

    Зарезервированные токены всегда идут первыми: <s>, </s>, затем один
    или несколько unk. Id плотные, от 0 до |V| - 1.
    """

    def __init__(self, tokens: Sequence[str], unk_tokens: Sequence[str] = (UNK_TOKEN,),
                 bos: str = BOS_TOKEN, eos: str = EOS_TOKEN):
        """
        Args:
            tokens: Все токены в порядке id (зарезервированные первыми)
            unk_tokens: Формы unk-токенов; OOV отображается в первую
            bos: Токен начала предложения
            eos: Токен конца предложения
        """
        if not unk_tokens:
            raise ValueError("vocabulary needs at least one unknown token")

        self._tokens: Tuple[str, ...] = tuple(tokens)
        self._ids: Dict[str, int] = {}
        for index, token in enumerate(self._tokens):
            if token in self._ids:
                raise DataError(f"duplicate vocabulary entry {token!r} at id {index}")
            self._ids[token] = index

        reserved = (bos, eos) + tuple(unk_tokens)
        if len(set(reserved)) != len(reserved):
            raise ValueError("reserved tokens must have distinct surface forms")
        if self._tokens[:len(reserved)] != reserved:
            raise DataError(f"reserved tokens must come first in this order: {' '.join(reserved)}")

        self.bos_id = self._ids[bos]
        self.eos_id = self._ids[eos]
        self.unk_ids: Tuple[int, ...] = tuple(self._ids[u] for u in unk_tokens)
        self.unk_id = self.unk_ids[0]
        self._fingerprint: Optional[str] = None

    @property
    def tokens(self) -> Tuple[str, ...]:
        return self._tokens

    @property
    def reserved_ids(self) -> Tuple[int, ...]:
        return (self.bos_id, self.eos_id) + self.unk_ids

    @property
    def reserved_tokens(self) -> Tuple[str, ...]:
        return tuple(self._tokens[i] for i in self.reserved_ids)

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self._tokens == other._tokens \
            and self.unk_ids == other.unk_ids

    def __hash__(self) -> int:
        return hash(self._tokens)

    def id_of(self, token: str) -> int:
        """Id токена; OOV -> основной unk."""
        return self._ids.get(token, self.unk_id)

    def token_of(self, token_id: int) -> str:
        return self._tokens[token_id]

    def encode(self, words: Iterable[str]) -> List[int]:
        return [self._ids.get(word, self.unk_id) for word in words]

    def decode(self, ids: Iterable[int]) -> List[str]:
        return [self._tokens[i] for i in ids]

    def fingerprint(self) -> str:
        """
        SHA-256 от списка токенов.

        Используется, чтобы не смешивать скореры над разными словарями.

        Returns:
            str: hex-строка (64 символа)
        """
        if self._fingerprint is None:
            digest = hashlib.sha256('\n'.join(self._tokens).encode('utf-8'))
            self._fingerprint = digest.hexdigest()
        return self._fingerprint

    def save(self, path: str):
        """Записать словарь: одна форма в строке, номер строки = id."""
        with open(path, 'w', encoding='utf-8') as f:
            for token in self._tokens:
                f.write(token + '\n')
        logger.info(f"💾 [VOCAB] Словарь ({len(self)} токенов) сохранён в {path}")

    @classmethod
    def load(cls, path: str) -> 'Vocabulary':
        """
        Прочитать словарь из файла.

        Unk-токены распознаются по известным формам сразу после <s> и </s>.

        Args:
            path: Путь к файлу словаря

        Returns:
            Vocabulary: Загруженный словарь
        """
        with open(path, 'r', encoding='utf-8') as f:
            tokens = [line.rstrip('\n') for line in f]
        while tokens and tokens[-1] == '':
            tokens.pop()

        if len(tokens) < 3:
            raise DataError(f"{path}: vocabulary needs at least <s>, </s> and one unknown token")

        unk_tokens = []
        for token in tokens[2:]:
            if token in (UNK_TOKEN, PTB_SECOND_UNK_TOKEN):
                unk_tokens.append(token)
            else:
                break
        if not unk_tokens:
            raise DataError(f"{path}: no unknown token after the sentence sentinels")

        return cls(tokens, unk_tokens=unk_tokens, bos=tokens[0], eos=tokens[1])


def build_vocab(corpus: Iterable[Sequence[str]], max_size: int, ptb: bool = False) -> Vocabulary:
    """
    Построить словарь из потока токенизированных предложений.

    Оставляет (max_size - число зарезервированных) самых частых форм.
    При равной частоте побеждает лексикографически меньшая форма (порядок
    кодовых точек совпадает с побайтовым порядком UTF-8).

    Args:
        corpus: Предложения как списки строк
        max_size: Итоговый размер словаря с учётом зарезервированных
        ptb: Два unk-токена (соглашение PTB)

    Returns:
        Vocabulary: Новый словарь
    """
    unk_tokens = (UNK_TOKEN, PTB_SECOND_UNK_TOKEN) if ptb else (UNK_TOKEN,)
    reserved = (BOS_TOKEN, EOS_TOKEN) + unk_tokens
    if max_size <= len(reserved):
        raise ValueError(f"max_size must exceed the {len(reserved)} reserved tokens")

    counts: Counter = Counter()
    for sentence in corpus:
        counts.update(sentence)
    if not counts:
        raise DataError("cannot build a vocabulary from an empty corpus")

    # Зарезервированные формы уже в словаре, в PTB-режиме оба unk - обычные id
    for token in reserved:
        counts.pop(token, None)

    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    kept = [token for token, _ in ranked[:max_size - len(reserved)]]
    if len(kept) < len(ranked):
        logger.info(f"✂️ [VOCAB] Отброшено {len(ranked) - len(kept)} редких форм")

    return Vocabulary(list(reserved) + kept, unk_tokens=unk_tokens)
