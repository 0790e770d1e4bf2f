"""Scoring for component tagging and relation classification.

The headline component score is the mean of F1-Claim and F1-Premise;
MajorClaim is reported when observed but stays out of the headline.
Zero denominators yield 0, never NaN.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from argproj.corpus import (
    AnnotatedSentence,
    ComponentLabel,
    Corpus,
    RelationInstance,
    RelationLabel,
)

HEADLINE_LABELS = (ComponentLabel.CLAIM, ComponentLabel.PREMISE)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int      # gold count
    predicted: int
    correct: int

    def to_json(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "support": self.support,
            "predicted": self.predicted,
            "correct": self.correct,
        }


def _metrics(correct: int, predicted: int, support: int) -> ClassMetrics:
    precision = correct / predicted if predicted else 0.0
    recall = correct / support if support else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return ClassMetrics(precision, recall, f1, support, predicted, correct)


@dataclass(frozen=True)
class EvalReport:
    mode: str
    per_class: dict[str, ClassMetrics]
    headline_f1: float

    def f1(self, label: ComponentLabel) -> float:
        metrics = self.per_class.get(label.value)
        return metrics.f1 if metrics else 0.0

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "per_class": {name: m.to_json() for name, m in self.per_class.items()},
            "headline_f1": self.headline_f1,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _check_aligned(gold: Corpus, pred: Corpus) -> None:
    gold_sents = list(gold.sentences())
    pred_sents = list(pred.sentences())
    if len(gold_sents) != len(pred_sents):
        raise ValueError(
            f"corpora are misaligned: {len(gold_sents)} vs {len(pred_sents)} sentences")
    for i, (g, p) in enumerate(zip(gold_sents, pred_sents)):
        if len(g.tokens) != len(p.tokens):
            raise ValueError(
                f"sentence {i} token counts differ: {len(g.tokens)} vs {len(p.tokens)}")


def _token_classes(sentence: AnnotatedSentence) -> list[str | None]:
    classes: list[str | None] = [None] * len(sentence.tokens)
    for span in sentence.spans:
        for i in range(span.start, span.end):
            classes[i] = span.label.value
    return classes


def score_components(gold: Corpus, pred: Corpus, mode: str = "token") -> EvalReport:
    """Score predicted spans against gold.

    Token mode scores per-token class labels (B-/I- collapse); span mode counts
    a true positive only on an exact (start, end, label) match.
    """
    if mode not in ("token", "span"):
        raise ValueError(f"mode must be 'token' or 'span', got {mode!r}")
    _check_aligned(gold, pred)

    correct: Counter[str] = Counter()
    gold_count: Counter[str] = Counter()
    pred_count: Counter[str] = Counter()

    for g, p in zip(gold.sentences(), pred.sentences()):
        if mode == "token":
            for gc, pc in zip(_token_classes(g), _token_classes(p)):
                if gc is not None:
                    gold_count[gc] += 1
                if pc is not None:
                    pred_count[pc] += 1
                if gc is not None and gc == pc:
                    correct[gc] += 1
        else:
            gold_spans = set(g.spans)
            pred_spans = set(p.spans)
            for span in gold_spans:
                gold_count[span.label.value] += 1
            for span in pred_spans:
                pred_count[span.label.value] += 1
            for span in gold_spans & pred_spans:
                correct[span.label.value] += 1

    labels = [label.value for label in HEADLINE_LABELS]
    major = ComponentLabel.MAJOR_CLAIM.value
    if gold_count[major] or pred_count[major]:
        labels.append(major)
    per_class = {
        name: _metrics(correct[name], pred_count[name], gold_count[name])
        for name in labels
    }
    headline = (per_class[ComponentLabel.CLAIM.value].f1
                + per_class[ComponentLabel.PREMISE.value].f1) / 2
    return EvalReport(mode=mode, per_class=per_class, headline_f1=headline)


@dataclass(frozen=True)
class RelationScores:
    per_class: dict[str, ClassMetrics]
    macro_f1: float

    def to_json(self) -> dict:
        return {
            "per_class": {name: m.to_json() for name, m in self.per_class.items()},
            "macro_f1": self.macro_f1,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _as_label(value: RelationInstance | RelationLabel) -> RelationLabel:
    return value.label if isinstance(value, RelationInstance) else value


def score_relations(
    gold: Sequence[RelationInstance | RelationLabel],
    pred: Sequence[RelationLabel],
) -> RelationScores:
    """Per-class F1 over the observed label set plus their macro average."""
    if len(gold) != len(pred):
        raise ValueError(f"length mismatch: {len(gold)} gold vs {len(pred)} predicted")
    gold_labels = [_as_label(g) for g in gold]
    observed = sorted({*gold_labels, *pred}, key=lambda l: l.value)

    per_class = {}
    for label in observed:
        correct = sum(1 for g, p in zip(gold_labels, pred) if g is label and p is label)
        per_class[label.value] = _metrics(
            correct,
            sum(1 for p in pred if p is label),
            sum(1 for g in gold_labels if g is label),
        )
    macro = (sum(m.f1 for m in per_class.values()) / len(per_class)) if per_class else 0.0
    return RelationScores(per_class=per_class, macro_f1=macro)


@dataclass(frozen=True)
class ComparisonTable:
    """Named eval reports laid out side by side, best value per column marked."""

    columns: tuple[str, ...]
    rows: dict[str, dict[str, float | None]]
    best: dict[str, tuple[str, ...]]

    def to_json(self) -> dict:
        return {"columns": list(self.columns), "rows": self.rows,
                "best": {c: list(names) for c, names in self.best.items()}}

    def render(self) -> str:
        width = max((len(name) for name in self.rows), default=4)
        lines = ["  ".join([" " * width] + [f"{c:>12}" for c in self.columns])]
        for name, values in self.rows.items():
            cells = []
            for col in self.columns:
                value = values.get(col)
                if value is None:
                    cells.append(f"{'-':>12}")
                    continue
                mark = "*" if name in self.best.get(col, ()) else " "
                cells.append(f"{value:>11.4f}{mark}")
            lines.append("  ".join([f"{name:<{width}}"] + cells))
        return "\n".join(lines) + "\n"


def compare_variants(reports: Mapping[str, EvalReport]) -> ComparisonTable:
    """Aligned comparison of several eval reports (e.g. corpus variants)."""
    if not reports:
        raise ValueError("no reports to compare")
    columns: list[str] = ["headline_f1"]
    for report in reports.values():
        for name in report.per_class:
            col = f"f1_{name}"
            if col not in columns:
                columns.append(col)

    rows: dict[str, dict[str, float | None]] = {}
    for name, report in reports.items():
        row: dict[str, float | None] = {"headline_f1": report.headline_f1}
        for col in columns[1:]:
            metrics = report.per_class.get(col[len("f1_"):])
            row[col] = metrics.f1 if metrics else None
        rows[name] = row

    best: dict[str, tuple[str, ...]] = {}
    for col in columns:
        values = {name: row[col] for name, row in rows.items() if row[col] is not None}
        if values:
            top = max(values.values())
            best[col] = tuple(name for name, v in values.items() if v == top)
    return ComparisonTable(columns=tuple(columns), rows=rows, best=best)
