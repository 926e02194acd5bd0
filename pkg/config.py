import os
from dotenv import load_dotenv

# Загружаем переменные из .env файла
load_dotenv()


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name, str(default))
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"❌ {name} должен быть целым числом, получено: {value!r}")


def _env_float(name: str, default: float) -> float:
    value = os.getenv(name, str(default))
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"❌ {name} должен быть числом, получено: {value!r}")


# Режим отладки
DEBUG = os.getenv('WORDORDER_DEBUG', 'False') == 'True'

# Логи пишем сюда (если включено в main.py)
LOG_DIR = os.getenv('WORDORDER_LOG_DIR', 'logs')

# Зарезервированные токены словаря
BOS_TOKEN = os.getenv('WORDORDER_BOS', '<s>')
EOS_TOKEN = os.getenv('WORDORDER_EOS', '</s>')
UNK_TOKEN = os.getenv('WORDORDER_UNK', '<unk>')
# Второй unk для PTB-режима (в данных PTB встречаются два разных unk)
PTB_SECOND_UNK_TOKEN = os.getenv('WORDORDER_UNK2', '<unk2>')

# Настройки n-gram модели
NGRAM_ORDER = _env_int('WORDORDER_NGRAM_ORDER', 5)
NGRAM_SMOOTHING = os.getenv('WORDORDER_NGRAM_SMOOTHING', 'auto')
SMOOTHING_METHODS = ('auto', 'kneser_ney', 'witten_bell', 'mle')
# Пол для униграмм эвристики f: log(1 / (FACTOR * |V|))
UNIGRAM_FLOOR_FACTOR = _env_float('WORDORDER_UNIGRAM_FLOOR_FACTOR', 10.0)
# "Ноль" в формате ARPA (log10)
ARPA_LOG_ZERO = -99.0

# Пресеты размерностей нейросетей: E - эмбеддинги, H - скрытый слой, A - аннотации
DIMENSION_PRESETS = {
    'ptb': {'embed': 300, 'hidden': 500, 'attention': 500},
    'desk': {'embed': 32, 'hidden': 64, 'attention': 64},
    'tiny': {'embed': 4, 'hidden': 5, 'attention': 5},
}
DEFAULT_PRESET = os.getenv('WORDORDER_PRESET', 'desk')
NPLM_CONTEXT = _env_int('WORDORDER_NPLM_CONTEXT', 4)  # n - 1 для 5-граммной NPLM

# Обучение
TRAIN_EPOCHS = _env_int('WORDORDER_EPOCHS', 10)
LEARNING_RATE = _env_float('WORDORDER_LEARNING_RATE', 1.0)
GRAD_CLIP = _env_float('WORDORDER_GRAD_CLIP', 5.0)
INIT_SCALE = _env_float('WORDORDER_INIT_SCALE', 0.08)
# Интервал инициализации тензоров кодировщика bag2seq
ENCODER_INIT_SCALE = _env_float('WORDORDER_ENCODER_INIT_SCALE', 0.5)
SEED = _env_int('WORDORDER_SEED', 1)
# Шаг обучения уменьшается вдвое, если dev-перплексия улучшилась меньше чем на эту долю
LR_STALL_TOLERANCE = 1e-3
# Сколько эпох подряд без улучшения терпеть до уменьшения шага
LR_PATIENCE = _env_int('WORDORDER_LR_PATIENCE', 2)
# Шаг не опускается ниже этой доли начального
LR_FLOOR_FRACTION = 0.05

# Поиск
BEAM_SIZE = _env_int('WORDORDER_BEAM', 5)
HEURISTIC = os.getenv('WORDORDER_HEURISTIC', 'none')
HEURISTICS = ('none', 'f', 'g')
RECOMBINATION_K = _env_int('WORDORDER_RECOMBINATION_K', 4)
F_WEIGHT = _env_float('WORDORDER_F_WEIGHT', 1.0)
MAX_EXHAUSTIVE_BAG = 8  # больше - факториальный взрыв
WORKERS = _env_int('WORDORDER_WORKERS', 1)

# Подбор весов лог-линейной комбинации
TUNE_BUDGET = _env_int('WORDORDER_TUNE_BUDGET', 100)
TUNE_BEAM = _env_int('WORDORDER_TUNE_BEAM', 5)
TUNE_BOUNDS = (0.0, 10.0)

# Бенчмарк (время декодирования vs размер луча)
BENCH_BEAMS = (1, 5, 64, 512)

# Коды выхода CLI
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

# Проверка значений
if NGRAM_SMOOTHING not in SMOOTHING_METHODS:
    raise ValueError(f"❌ Неизвестный метод сглаживания: {NGRAM_SMOOTHING}")

if HEURISTIC not in HEURISTICS:
    raise ValueError(f"❌ Неизвестная эвристика: {HEURISTIC}")

if DEFAULT_PRESET not in DIMENSION_PRESETS:
    raise ValueError(f"❌ Неизвестный пресет размерностей: {DEFAULT_PRESET}")

if NGRAM_ORDER < 1 or BEAM_SIZE < 1:
    raise ValueError("❌ WORDORDER_NGRAM_ORDER и WORDORDER_BEAM должны быть >= 1")
