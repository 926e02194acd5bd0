"""
Корпусный BLEU на уже токенизированном тексте (поведение multi-bleu).

Считает sacrebleu без токенизации и без сглаживания: нулевая точность
любого порядка даёт BLEU 0.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from sacrebleu.metrics import BLEU

from utils.errors import DataError

logger = logging.getLogger(__name__)

MAX_ORDER = 4

_BLEU = BLEU(tokenize='none', smooth_method='none', force=True, effective_order=False)


@dataclass(frozen=True)
class BleuReport:
    """
    Attributes:
        bleu: Корпусный BLEU, шкала 0..100
        precisions: Модифицированные точности p_1..p_4 (доли, не проценты)
        brevity_penalty: BP в (0, 1]
        hyp_len: Число токенов гипотез
        ref_len: Число токенов эталонов
    """

    bleu: float
    precisions: Tuple[float, ...]
    brevity_penalty: float
    hyp_len: int
    ref_len: int

    def recompose(self) -> float:
        """BLEU, пересчитанный из p_n и BP."""
        if any(p <= 0 for p in self.precisions):
            return 0.0
        return 100.0 * self.brevity_penalty * math.exp(sum(math.log(p) for p in self.precisions) / MAX_ORDER)

    def summary_line(self) -> str:
        """Строка в стиле multi-bleu."""
        precisions = '/'.join(f"{100.0 * p:.1f}" for p in self.precisions)
        ratio = self.hyp_len / self.ref_len if self.ref_len else 0.0
        return (f"BLEU = {self.bleu:.2f}, {precisions} (BP={self.brevity_penalty:.3f}, "
                f"ratio={ratio:.3f}, hyp_len={self.hyp_len}, ref_len={self.ref_len})")

    def tsv_row(self) -> str:
        """BLEU p1 p2 p3 p4 BP hyp_len ref_len через табуляцию."""
        fields = [f"{self.bleu:.4f}"] + [f"{p:.6f}" for p in self.precisions]
        fields += [f"{self.brevity_penalty:.6f}", str(self.hyp_len), str(self.ref_len)]
        return '\t'.join(fields)


def corpus_bleu(hypotheses: Sequence[Sequence[str]], references: Sequence[Sequence[str]]) -> BleuReport:
    """
    BLEU по корпусу.

    Args:
        hypotheses: Гипотезы, по списку токенов на предложение
        references: Эталоны, выровнены с гипотезами

    Returns:
        BleuReport: Отчёт

    Raises:
        DataError: Пустой корпус или разное число предложений
    """
    if len(hypotheses) != len(references):
        raise DataError(f"{len(hypotheses)} hypotheses for {len(references)} references")
    if not hypotheses:
        raise DataError("cannot compute BLEU of an empty corpus")

    hyp_lines = [' '.join(tokens) for tokens in hypotheses]
    ref_lines = [' '.join(tokens) for tokens in references]
    result = _BLEU.corpus_score(hyp_lines, [ref_lines])
    precisions = tuple(p / 100.0 for p in result.precisions)
    report = BleuReport(
        bleu=result.score if all(p > 0 for p in precisions) else 0.0,
        precisions=precisions,
        brevity_penalty=result.bp,
        hyp_len=result.sys_len,
        ref_len=result.ref_len,
    )
    logger.debug(f"📏 [BLEU] {report.summary_line()}")
    return report


def bleu_from_lines(hypothesis_lines: Sequence[str], reference_lines: Sequence[str]) -> BleuReport:
    return corpus_bleu([line.split() for line in hypothesis_lines], [line.split() for line in reference_lines])
