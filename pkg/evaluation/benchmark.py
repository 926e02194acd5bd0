"""
Замер времени декодирования в зависимости от размера луча.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from core.bag import Bag
from ngram_lm.unigrams import UnigramTable
from scorers.base import Scorer
from search.batch import decode_corpus
from search.hypothesis import BeamConfig
from utils.errors import sanitize_error_message

logger = logging.getLogger(__name__)


@dataclass
class BenchConfig:
    """Одна конфигурация: набор скореров, луч, эвристика."""

    scorer: Scorer
    beam: BeamConfig
    unigrams: Optional[UnigramTable] = None

    @property
    def key(self) -> Tuple[str, int, str]:
        return self.scorer.name, self.beam.beam_size, self.beam.heuristic


@dataclass
class TimingRow:
    scorers: str
    beam_size: int
    heuristic: str
    seconds: float
    sentences: int
    tokens_per_second: float
    error: Optional[str] = None


@dataclass
class TimingReport:
    rows: List[TimingRow] = field(default_factory=list)
    parallel: bool = False

    def to_tsv(self) -> str:
        lines = ['scorers\tbeam\theuristic\tseconds\tsentences\ttokens_per_second\terror']
        for r in self.rows:
            lines.append(f"{r.scorers}\t{r.beam_size}\t{r.heuristic}\t{r.seconds:.6f}\t{r.sentences}\t"
                         f"{r.tokens_per_second:.2f}\t{r.error or ''}")
        return '\n'.join(lines) + '\n'

    def series(self) -> Dict[str, List[Tuple[int, float]]]:
        """(скореры/эвристика) -> [(луч, секунды)] по возрастанию луча, без упавших строк."""
        series: Dict[str, List[Tuple[int, float]]] = {}
        for r in self.rows:
            if r.error is None:
                series.setdefault(f"{r.scorers} ({r.heuristic})", []).append((r.beam_size, r.seconds))
        return {name: sorted(points) for name, points in series.items()}

    def seconds(self, scorers: str, beam_size: int, heuristic: str = 'none') -> float:
        for r in self.rows:
            if (r.scorers, r.beam_size, r.heuristic) == (scorers, beam_size, heuristic) and r.error is None:
                return r.seconds
        raise KeyError((scorers, beam_size, heuristic))


def benchmark_decode(bags: Sequence[Bag], configurations: Sequence[BenchConfig], warmup: bool = True,
                     workers: int = 1) -> TimingReport:
    """
    Время декодирования одного и того же набора мешков каждой конфигурацией.

    Перед замером одно предложение декодируется без учёта времени. Ошибка
    конфигурации записывается в её строку, остальные продолжают работать.

    Args:
        bags: Мешки
        configurations: Конфигурации (ключи не повторяются)
        warmup: Прогрев на первом мешке
        workers: > 1 - параллельный режим, несравнимый с однопоточным

    Returns:
        TimingReport: По строке на конфигурацию
    """
    if not bags:
        raise ValueError("benchmark needs at least one bag")
    keys = [c.key for c in configurations]
    if len(set(keys)) != len(keys):
        raise ValueError("benchmark configurations must be unique by (scorers, beam, heuristic)")

    tokens = sum(bag.size for bag in bags)
    report = TimingReport(parallel=workers > 1)
    if report.parallel:
        logger.warning(f"⚠️ [BENCH] {workers} потоков: время несравнимо с однопоточным")

    for c in configurations:
        name, beam_size, heuristic = c.key
        try:
            if warmup:
                decode_corpus(bags[:1], c.scorer, c.beam, c.unigrams, workers=1)
            start = time.perf_counter()
            decode_corpus(bags, c.scorer, c.beam, c.unigrams, workers=workers)
            seconds = max(time.perf_counter() - start, 1e-9)
            row = TimingRow(name, beam_size, heuristic, seconds, len(bags), tokens / seconds)
            logger.info(f"⏱️ [BENCH] {name} beam={beam_size} {heuristic}: {seconds:.3f} с")
        except Exception as e:
            row = TimingRow(name, beam_size, heuristic, 0.0, len(bags), 0.0, sanitize_error_message(e))
            logger.error(f"❌ [BENCH] {name} beam={beam_size} {heuristic}: {row.error}")
        report.rows.append(row)
    return report


def plot_timing(report: TimingReport, path: str):
    """График время/луч (log-оси) в файл."""
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    plt.figure()
    for name, points in report.series().items():
        xs = [beam for beam, _ in points]
        ys = [seconds for _, seconds in points]
        plt.plot(xs, ys, marker='o', label=name)
    plt.xscale('log')
    plt.yscale('log')
    plt.xlabel('Beam size')
    plt.ylabel('Decoding time, s')
    plt.title('Decoding time vs beam size' + (' (parallel)' if report.parallel else ''))
    plt.legend()
    plt.tight_layout()
    plt.savefig(path, dpi=150)
    plt.close()
    logger.info(f"📈 [BENCH] график сохранён в {path}")
