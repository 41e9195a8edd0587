"""Text and CSV renderings of evaluation results.

The text layout follows the usual confusion table: one row per true class,
one column per cluster labelled with the class it was mapped to, and a
"The class should be" column naming the row. An accuracy table follows with
per-class correct counts, their sum and the overall percent.
"""

from __future__ import annotations

from .evaluation import ConfusionMatrix, EvaluationReport


def _column_order(cm: ConfusionMatrix, report: EvaluationReport) -> list[tuple[int, str]]:
    owner = report.mapping.class_to_cluster()
    cols = [(owner[c], cm.class_names[c]) for c in range(cm.classes) if c in owner]
    mapped = {p for p, _ in cols}
    cols += [(p, f"(cluster {p})") for p in range(cm.clusters) if p not in mapped]
    return cols


def render_confusion(cm: ConfusionMatrix, report: EvaluationReport) -> str:
    cols = _column_order(cm, report)
    width = max([len(name) for _, name in cols] + [5])
    header = "".join(f"{name:>{width + 2}}" for _, name in cols)
    lines = [
        "Classification result",
        header + "  The class should be",
    ]
    for t, name in enumerate(cm.class_names):
        cells = "".join(f"{int(cm.counts[p, t]):>{width + 2}}" for p, _ in cols)
        lines.append(f"{cells}  {name}")
    return "\n".join(lines)


def render_comparison(reports, labels) -> str:
    """Side-by-side accuracy table, one column per run."""
    reports = list(reports)
    labels = [str(label) for label in labels]
    names = reports[0].class_names
    first = max([len(n) for n in names] + [len("% Accuracy")])
    width = max([len(label) for label in labels] + [7])
    lines = [" " * first + "".join(f"{label:>{width + 2}}" for label in labels)]
    for c, name in enumerate(names):
        lines.append(f"{name:<{first}}" + "".join(f"{r.class_correct[c]:>{width + 2}}" for r in reports))
    lines.append(f"{'Σ':<{first}}" + "".join(f"{r.correct_total:>{width + 2}}" for r in reports))
    lines.append(
        f"{'% Accuracy':<{first}}" + "".join(f"{r.overall_display:>{width + 2}}" for r in reports)
    )
    return "\n".join(lines)


def render_text(cm: ConfusionMatrix, report: EvaluationReport) -> str:
    out = [render_confusion(cm, report), "", "Accuracy"]
    names = report.class_names
    first = max([len(n) for n in names] + [len("% Accuracy")])
    for name, c, n, pct in zip(names, report.class_correct, report.class_totals, report.per_class_display):
        out.append(f"{name:<{first}}  {c:>5} / {n:<5} {pct:>6}")
    out.append(f"{'Σ':<{first}}  {report.correct_total:>5} / {report.image_total:<5}")
    out.append(f"{'% Accuracy':<{first}}  {report.overall_display:>14}")
    return "\n".join(out) + "\n"


def render_csv(report: EvaluationReport) -> str:
    rows = ["class,correct,total,accuracy,display"]
    for name, c, n, acc, disp in zip(
        report.class_names,
        report.class_correct,
        report.class_totals,
        report.per_class_accuracy,
        report.per_class_display,
    ):
        rows.append(f"{name},{c},{n},{acc!r},{disp}")
    rows.append(
        f"ALL,{report.correct_total},{report.image_total},{report.overall_accuracy!r},{report.overall_display}"
    )
    return "\n".join(rows) + "\n"
