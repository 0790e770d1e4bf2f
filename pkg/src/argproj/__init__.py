"""Cross-lingual annotation projection toolkit for argument mining corpora."""

from argproj.alignment import (
    SentenceAlignment,
    TranslationTable,
    align_with_table,
    parse_pharaoh,
    serialize_pharaoh,
    symmetrize,
    train_model1,
)
from argproj.corpus import (
    AnnotatedSentence,
    ComponentLabel,
    ConllError,
    Corpus,
    Document,
    IobError,
    RelationError,
    RelationInstance,
    RelationLabel,
    Span,
    Token,
    component_stats,
    iob_to_spans,
    is_punctuation,
    parse_conll,
    parse_relations,
    relation_stats,
    serialize_conll,
    serialize_relations,
    spans_to_iob,
)
from argproj.datasetops import distribution_report, export_relations, merge_corpora, split_corpus
from argproj.evaluate import EvalReport, compare_variants, score_components, score_relations
from argproj.postprocess import (
    CorrectionReport,
    RulePipelineConfig,
    apply_article_fix,
    apply_full_component_rule,
    apply_punctuation_absorption,
    run_pipeline,
)
from argproj.projection import (
    ProjectionConfig,
    ProjectionOutcome,
    ProjectionReport,
    SentenceClass,
    classify_sentence,
    project_corpus,
    project_sentence,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotatedSentence",
    "ComponentLabel",
    "ConllError",
    "CorrectionReport",
    "Corpus",
    "Document",
    "EvalReport",
    "IobError",
    "ProjectionConfig",
    "ProjectionOutcome",
    "ProjectionReport",
    "RelationError",
    "RelationInstance",
    "RelationLabel",
    "RulePipelineConfig",
    "SentenceAlignment",
    "SentenceClass",
    "Span",
    "Token",
    "TranslationTable",
    "align_with_table",
    "apply_article_fix",
    "apply_full_component_rule",
    "apply_punctuation_absorption",
    "classify_sentence",
    "compare_variants",
    "component_stats",
    "distribution_report",
    "export_relations",
    "iob_to_spans",
    "is_punctuation",
    "merge_corpora",
    "parse_conll",
    "parse_pharaoh",
    "parse_relations",
    "project_corpus",
    "project_sentence",
    "relation_stats",
    "run_pipeline",
    "score_components",
    "score_relations",
    "serialize_conll",
    "serialize_pharaoh",
    "serialize_relations",
    "spans_to_iob",
    "split_corpus",
    "symmetrize",
    "train_model1",
    "__version__",
]
