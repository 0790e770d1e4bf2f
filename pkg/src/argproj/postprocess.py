"""Automatic correction rules applied to projected corpora.

Three rules run as an ordered pipeline over sentence pairs, each with an
audit trail: expanding full-component sentences to full spans, pulling
missed articles into the following span, and absorbing trailing punctuation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from argproj.corpus import AnnotatedSentence, Corpus, Document, Span
from argproj.projection import SentenceClass, classify_sentence

RULE_FULL_COMPONENT = "full_component_expansion"
RULE_ARTICLE = "article_fix"
RULE_PUNCTUATION = "punctuation_absorption"
DEFAULT_RULE_ORDER = (RULE_FULL_COMPONENT, RULE_ARTICLE, RULE_PUNCTUATION)

# Configurable; the toolkit only ships the Spanish determiners.
DEFAULT_ARTICLE_LEXICON = frozenset(
    {"el", "la", "los", "las", "un", "una", "unos", "unas"})


@dataclass(frozen=True)
class RulePipelineConfig:
    """Which rules run, in which order, and their knobs."""

    rules: tuple[str, ...] = DEFAULT_RULE_ORDER
    article_lexicon: frozenset[str] = DEFAULT_ARTICLE_LEXICON
    cover_punctuation: bool = True  # full-component spans include edge punctuation

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "article_lexicon",
                           frozenset(w.casefold() for w in self.article_lexicon))
        unknown = set(self.rules) - set(DEFAULT_RULE_ORDER)
        if unknown:
            raise ValueError(f"unknown rules: {sorted(unknown)}")
        if len(set(self.rules)) != len(self.rules):
            raise ValueError("duplicate rules in pipeline")
        if RULE_ARTICLE in self.rules and not self.article_lexicon:
            raise ValueError("article_fix enabled with empty article lexicon")


def apply_full_component_rule(
    src: AnnotatedSentence, tgt: AnnotatedSentence, cover_punctuation: bool = True
) -> tuple[AnnotatedSentence, bool]:
    """If the source sentence is one full component, make the target one too,
    regardless of what projection produced."""
    if classify_sentence(src) is not SentenceClass.FULL_COMPONENT:
        return tgt, False
    if not tgt.tokens:
        return tgt, False
    label = src.spans[0].label

    start, end = 0, len(tgt.tokens)
    if not cover_punctuation:
        while start < end and tgt.tokens[start].is_punct:
            start += 1
        while start < end and tgt.tokens[end - 1].is_punct:
            end -= 1
        if start >= end:
            return tgt, False
        # Punctuation boundaries belong to the absorption rule: any single
        # same-label span already covering every word counts as satisfied.
        if (len(tgt.spans) == 1 and tgt.spans[0].label is label
                and classify_sentence(tgt) is SentenceClass.FULL_COMPONENT):
            return tgt, False

    desired = (Span(start, end, label),)
    if tgt.spans == desired:
        return tgt, False
    return tgt.with_spans(desired), True


def apply_article_fix(
    tgt: AnnotatedSentence, lexicon: Iterable[str] = DEFAULT_ARTICLE_LEXICON
) -> tuple[AnnotatedSentence, bool]:
    """Extend spans left over immediately preceding uncovered article tokens."""
    lexicon = {w.casefold() for w in lexicon}
    covered = set()
    for span in tgt.spans:
        covered.update(range(span.start, span.end))
    new_spans = []
    changed = False
    for span in tgt.spans:
        start = span.start
        while start - 1 >= 0 and start - 1 not in covered \
                and tgt.tokens[start - 1].text.casefold() in lexicon:
            start -= 1
            covered.add(start)
        if start != span.start:
            changed = True
            new_spans.append(Span(start, span.end, span.label))
        else:
            new_spans.append(span)
    if not changed:
        return tgt, False
    return tgt.with_spans(new_spans), True


def apply_punctuation_absorption(tgt: AnnotatedSentence) -> tuple[AnnotatedSentence, bool]:
    """Absorb punctuation tokens that immediately follow a span into it."""
    starts = {span.start for span in tgt.spans}
    new_spans = []
    changed = False
    for span in tgt.spans:
        end = span.end
        while end < len(tgt.tokens) and end not in starts and tgt.tokens[end].is_punct:
            end += 1
        if end != span.end:
            changed = True
            new_spans.append(Span(span.start, end, span.label))
        else:
            new_spans.append(span)
    if not changed:
        return tgt, False
    return tgt.with_spans(new_spans), True


@dataclass
class RuleCount:
    sentences_changed: int = 0
    spans_modified: int = 0


@dataclass
class CorrectionReport:
    """Per-rule change counts plus the number of distinct sentences touched."""

    rules: dict[str, RuleCount] = field(default_factory=dict)
    sentences_touched: int = 0
    overall: int = 0

    @property
    def total_rule_applications(self) -> int:
        return sum(c.sentences_changed for c in self.rules.values())

    def to_json(self) -> dict:
        return {
            "rules": {
                name: {"sentences_changed": c.sentences_changed,
                       "spans_modified": c.spans_modified}
                for name, c in self.rules.items()
            },
            "sentences_touched": self.sentences_touched,
            "overall": self.overall,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _spans_modified(rule: str, before: AnnotatedSentence, after: AnnotatedSentence) -> int:
    if rule == RULE_FULL_COMPONENT:
        return 1
    return sum(1 for a, b in zip(before.spans, after.spans) if a != b)


def apply_rules(
    src: AnnotatedSentence, tgt: AnnotatedSentence, cfg: RulePipelineConfig
) -> tuple[AnnotatedSentence, dict[str, int]]:
    """Run the configured rules over one sentence pair; returns per-rule
    modified-span counts for the rules that changed anything."""
    changes: dict[str, int] = {}
    for rule in cfg.rules:
        before = tgt
        if rule == RULE_FULL_COMPONENT:
            tgt, changed = apply_full_component_rule(src, tgt, cfg.cover_punctuation)
        elif rule == RULE_ARTICLE:
            tgt, changed = apply_article_fix(tgt, cfg.article_lexicon)
        else:
            tgt, changed = apply_punctuation_absorption(tgt)
        if changed:
            changes[rule] = _spans_modified(rule, before, tgt)
    return tgt, changes


def run_pipeline(
    src_corpus: Corpus, tgt_corpus: Corpus, cfg: RulePipelineConfig = RulePipelineConfig()
) -> tuple[Corpus, CorrectionReport]:
    """Apply the rule pipeline to every sentence pair of two aligned corpora."""
    if src_corpus.n_sentences != tgt_corpus.n_sentences:
        raise ValueError(
            f"sentence count mismatch: source {src_corpus.n_sentences}, "
            f"target {tgt_corpus.n_sentences}"
        )
    report = CorrectionReport(rules={rule: RuleCount() for rule in cfg.rules})
    src_iter = src_corpus.sentences()

    documents = []
    for doc in tgt_corpus.documents:
        sentences = []
        for tgt_sent in doc.sentences:
            src_sent = next(src_iter)
            fixed, changes = apply_rules(src_sent, tgt_sent, cfg)
            report.overall += 1
            if changes:
                report.sentences_touched += 1
            for rule, n_spans in changes.items():
                report.rules[rule].sentences_changed += 1
                report.rules[rule].spans_modified += n_spans
            sentences.append(fixed)
        documents.append(Document(doc_id=doc.doc_id, sentences=tuple(sentences),
                                  origin=doc.origin))
    return Corpus(documents=tuple(documents), name=tgt_corpus.name), report
