"""
Форматирование отчётов команд для вывода в консоль.
"""

from typing import Dict, List, Optional, Sequence


def format_bleu_report(report) -> str:
    """
    Отчёт BLEU: строка в стиле multi-bleu и машинная TSV-строка.

    Args:
        report: BleuReport

    Returns:
        str: Две строки
    """
    return f"{report.summary_line()}\n{report.tsv_row()}"


def format_training_summary(kind: str, output: str, history=None, counts: Optional[List[int]] = None) -> str:
    """
    Итог обучения.

    Args:
        kind: ngram, nplm, rnnlm или bag2seq
        output: Путь к артефакту
        history: TrainingHistory для нейросетей
        counts: Число n-грамм по порядкам для n-gram модели
    """
    lines = [f"✅ Модель {kind} сохранена: {output}"]
    if counts is not None:
        lines.append("📊 n-граммы: " + ', '.join(f"{k}-gram {n}" for k, n in enumerate(counts, start=1)))
    if history is not None and history.records:
        last = history.records[-1]
        lines.append(f"📉 dev ppl: {history.initial_dev_perplexity:.2f} -> {last.dev_perplexity:.2f} "
                     f"за {last.epoch} эпох")
    return '\n'.join(lines)


def format_search_stats(stats) -> str:
    lines = [
        "🔎 Статистика поиска:",
        f"• расширений: {stats.expansions}",
        f"• рекомбинировано: {stats.recombined}",
        f"• отброшено: {stats.pruned}",
    ]
    if stats.max_upper_bound_gap != float('-inf'):
        lines.append(f"• max(s - g): {stats.max_upper_bound_gap:.3e}")
    if stats.max_f_residual != float('-inf'):
        lines.append(f"• max(S_f - s) у финальных: {stats.max_f_residual:.3e}")
    return '\n'.join(lines)


def format_tune_result(names: Sequence[str], result) -> str:
    weights = ', '.join(f"{name}={weight:.4g}" for name, weight in zip(names, result.weights))
    return (
        f"🎯 Подбор весов ({result.method}): {weights}\n"
        f"📈 dev BLEU: {result.baseline_bleu:.2f} -> {result.bleu:.2f} "
        f"({result.evaluations} оценок)"
    )


def format_timing_report(report) -> str:
    lines = ["⏱️ Время декодирования:"]
    for row in report.rows:
        if row.error:
            lines.append(f"❌ {row.scorers} beam={row.beam_size} {row.heuristic}: {row.error}")
        else:
            lines.append(f"• {row.scorers} beam={row.beam_size} {row.heuristic}: "
                         f"{row.seconds:.3f} с ({row.tokens_per_second:.1f} ток/с)")
    if report.parallel:
        lines.append("⚠️ Параллельный режим: время несравнимо с однопоточным")
    return '\n'.join(lines)


def format_vocab_summary(path: str, size: int, reserved: Sequence[str]) -> str:
    return f"✅ Словарь сохранён: {path}\n📚 Размер: {size} (служебные: {' '.join(reserved)})"


def format_counts(title: str, counts: Dict[str, int]) -> str:
    return title + '\n' + '\n'.join(f"• {key}: {value}" for key, value in counts.items())
