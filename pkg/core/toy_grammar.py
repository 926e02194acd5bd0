"""
Генератор игрушечного корпуса подлежащее-сказуемое-дополнение.

Нужен для настольных экспериментов и тестов: словарь < 200 слов,
предложения длиной 5-11 токенов.
"""

import random
from typing import Dict, List, Sequence

AGENTS = ['dog', 'cat', 'farmer', 'teacher', 'child', 'doctor', 'bird', 'horse',
          'pilot', 'singer', 'baker', 'student', 'king', 'queen', 'fox']
OBJECTS = ['ball', 'book', 'apple', 'letter', 'box', 'car', 'song', 'bread',
           'stone', 'cake', 'map', 'key', 'lamp', 'coin', 'hat']
PLACES = ['garden', 'house', 'river', 'market', 'school', 'forest', 'city', 'field', 'kitchen', 'road']
VERBS = ['sees', 'finds', 'takes', 'likes', 'brings', 'wants', 'holds', 'drops',
         'paints', 'sells', 'buys', 'hides', 'carries', 'watches', 'needs']
PREPOSITIONS = ['in', 'near', 'behind', 'under', 'across']

SHARED_DETERMINERS = ['the', 'a', 'this', 'every']
SHARED_ADJECTIVES = ['big', 'small', 'old', 'young', 'red', 'quiet', 'happy', 'strange']

# Раздельные служебные слова: порядок однозначно восстанавливается по мешку
SLOT_WORDS: Dict[str, List[str]] = {
    'subject_det': ['the'],
    'subject_adj': ['big', 'small', 'old', 'young', 'happy'],
    'object_det': ['a'],
    'object_adj': ['red', 'blue', 'green', 'heavy', 'shiny'],
    'place_det': ['some'],
}


def _noun_phrase(rng: random.Random, determiners: Sequence[str], adjectives: Sequence[str],
                 nouns: Sequence[str], adjective_rate: float) -> List[str]:
    phrase = [rng.choice(determiners)]
    if rng.random() < adjective_rate:
        phrase.append(rng.choice(adjectives))
    phrase.append(rng.choice(nouns))
    return phrase


def generate_sentence(rng: random.Random, shared_function_words: bool = True,
                      adjective_rate: float = 0.4, pp_rate: float = 0.3) -> List[str]:
    """
    Сгенерировать одно предложение.

    Args:
        rng: Генератор случайных чисел
        shared_function_words: Общие артикли/прилагательные для всех групп
        adjective_rate: Вероятность прилагательного в группе
        pp_rate: Вероятность предложной группы в конце

    Returns:
        List[str]: Токены предложения, последний - "."
    """
    if shared_function_words:
        subject_det = object_det = place_det = SHARED_DETERMINERS
        subject_adj = object_adj = SHARED_ADJECTIVES
    else:
        subject_det, object_det = SLOT_WORDS['subject_det'], SLOT_WORDS['object_det']
        place_det = SLOT_WORDS['place_det']
        subject_adj, object_adj = SLOT_WORDS['subject_adj'], SLOT_WORDS['object_adj']

    sentence = _noun_phrase(rng, subject_det, subject_adj, AGENTS, adjective_rate)
    sentence.append(rng.choice(VERBS))
    sentence.extend(_noun_phrase(rng, object_det, object_adj, OBJECTS, adjective_rate))
    if rng.random() < pp_rate:
        sentence.append(rng.choice(PREPOSITIONS))
        sentence.extend(_noun_phrase(rng, place_det, [], PLACES, 0.0))
    sentence.append('.')
    return sentence


def generate_toy_corpus(size: int, seed: int = 1, shared_function_words: bool = True) -> List[List[str]]:
    """
    Сгенерировать корпус заданного размера (детерминированно по seed).

    Args:
        size: Число предложений
        seed: Зерно генератора
        shared_function_words: См. generate_sentence

    Returns:
        List[List[str]]: Предложения
    """
    rng = random.Random(seed)
    return [generate_sentence(rng, shared_function_words) for _ in range(size)]
