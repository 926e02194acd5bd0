"""
Мешок слов (мультимножество id токенов) - вход задачи упорядочивания.
"""

from types import MappingProxyType
from typing import Iterable, List, Mapping, Tuple

from core.vocabulary import Vocabulary

# Последовательность токенов - просто список id
TokenSequence = List[int]


class Bag:
    """
    Неизменяемое мультимножество id.

    Пары (id, count) хранятся отсортированными, поэтому равные мешки
    имеют одинаковый ключ независимо от порядка вставки.
    """

    __slots__ = ('_counts', '_size', '_key')

    def __init__(self, counts: Mapping[int, int] = None):
        items = sorted((counts or {}).items())
        for token_id, count in items:
            if count < 1:
                raise ValueError(f"bag count for id {token_id} must be >= 1, got {count}")
        self._key: Tuple[Tuple[int, int], ...] = tuple(items)
        self._counts = MappingProxyType(dict(items))
        self._size = sum(count for _, count in items)

    @classmethod
    def from_ids(cls, ids: Iterable[int]) -> 'Bag':
        counts = {}
        for token_id in ids:
            counts[token_id] = counts.get(token_id, 0) + 1
        return cls(counts)

    @property
    def counts(self) -> Mapping[int, int]:
        return self._counts

    @property
    def size(self) -> int:
        return self._size

    @property
    def key(self) -> Tuple[Tuple[int, int], ...]:
        return self._key

    def __len__(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._size > 0

    def __contains__(self, token_id: int) -> bool:
        return token_id in self._counts

    def __eq__(self, other) -> bool:
        return isinstance(other, Bag) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        inner = ', '.join(f"{token_id}:{count}" for token_id, count in self._key)
        return f"Bag({{{inner}}})"

    def count(self, token_id: int) -> int:
        return self._counts.get(token_id, 0)

    def types(self) -> List[int]:
        """Различные id с count >= 1, по возрастанию."""
        return [token_id for token_id, _ in self._key]

    def elements(self) -> List[int]:
        """Все токены с повторениями, по возрастанию id."""
        return [token_id for token_id, count in self._key for _ in range(count)]

    def remove(self, token_id: int) -> 'Bag':
        """
        Новый мешок без одного вхождения token_id.

        Raises:
            KeyError: если токена нет в мешке
        """
        if token_id not in self._counts:
            raise KeyError(token_id)
        counts = dict(self._counts)
        if counts[token_id] == 1:
            del counts[token_id]
        else:
            counts[token_id] -= 1
        return Bag(counts)


def bag_of_words(sentence: Iterable[int]) -> Bag:
    """Мешок слов предложения."""
    return Bag.from_ids(sentence)


def sorted_bag_sequence(bag: Bag, vocab: Vocabulary) -> TokenSequence:
    """
    Канонический порядок мешка для энкодера bag2seq.

    Сортировка по поверхностной форме (порядок кодовых точек = побайтовый
    порядок UTF-8), дубликаты стоят рядом.

    Args:
        bag: Мешок слов
        vocab: Словарь для поверхностных форм

    Returns:
        TokenSequence: Последовательность длины bag.size
    """
    ordered = sorted(bag.types(), key=vocab.token_of)
    return [token_id for token_id in ordered for _ in range(bag.count(token_id))]
