"""Corpus assembly: merging, ratio splits, and file exports."""

from __future__ import annotations

import random
from pathlib import Path
from typing import Mapping, Sequence

from argproj.corpus import (
    ComponentLabel,
    Corpus,
    Document,
    RelationInstance,
    RelationLabel,
    component_stats,
    relation_stats,
    serialize_relations,
)


def merge_corpora(corpora: Sequence[Corpus], seed: int, name: str = "merged") -> Corpus:
    """Concatenate corpora and shuffle at document level, deterministically.

    Every document keeps its origin corpus name as provenance metadata.  A
    document id occurring in more than one input corpus is disambiguated by
    prefixing it with the corpus name for every occurrence.
    """
    if not corpora:
        raise ValueError("no corpora to merge")

    owners: dict[str | None, set[int]] = {}
    for idx, corpus in enumerate(corpora):
        for doc in corpus.documents:
            owners.setdefault(doc.doc_id, set()).add(idx)

    documents: list[Document] = []
    seen: set[str] = set()
    for corpus in corpora:
        for doc in corpus.documents:
            doc_id = doc.doc_id
            if len(owners[doc_id]) > 1:
                doc_id = f"{corpus.name}:{doc.doc_id}" if doc.doc_id is not None else corpus.name
            if doc_id is not None:
                if doc_id in seen:
                    raise ValueError(f"cannot disambiguate duplicate document id {doc_id!r}")
                seen.add(doc_id)
            documents.append(Document(
                doc_id=doc_id,
                sentences=doc.sentences,
                origin=doc.origin if doc.origin is not None else corpus.name,
            ))

    # Shuffling can move an anonymous document off the front, so name it.
    if len(documents) > 1:
        documents = [
            doc if doc.doc_id is not None else Document(
                doc_id=doc.origin or "anonymous", sentences=doc.sentences, origin=doc.origin)
            for doc in documents
        ]
    random.Random(seed).shuffle(documents)
    return Corpus(documents=tuple(documents), name=name)


def split_corpus(corpus: Corpus, ratios: Sequence[float], seed: int) -> list[Corpus]:
    """Document-level ratio split, seed-deterministic; sizes round down except
    the last part, which takes the remainder."""
    if not ratios or any(r <= 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("ratios must be positive and sum to 1")
    documents = list(corpus.documents)
    random.Random(seed).shuffle(documents)
    parts: list[Corpus] = []
    cursor = 0
    for i, ratio in enumerate(ratios):
        count = len(documents) - cursor if i == len(ratios) - 1 else int(len(documents) * ratio)
        chunk = documents[cursor:cursor + count]
        chunk = [doc if doc.doc_id is not None else
                 Document(doc_id="anonymous", sentences=doc.sentences, origin=doc.origin)
                 for doc in chunk]
        parts.append(Corpus(documents=tuple(chunk), name=f"{corpus.name}[{i}]"))
        cursor += count
    return parts


def export_relations(instances: Sequence[RelationInstance], path: str | Path) -> None:
    """Write relation instances to a file, one per line, in input order."""
    Path(path).write_text(serialize_relations(instances), encoding="utf-8")


def _component_counts_json(corpus: Corpus) -> dict:
    counts = component_stats(corpus)
    return {
        "Premise": counts[ComponentLabel.PREMISE],
        "Claim": counts[ComponentLabel.CLAIM],
        "MajorClaim": counts[ComponentLabel.MAJOR_CLAIM],
        "total": sum(counts.values()),
    }


def _relation_counts_json(instances: Sequence[RelationInstance]) -> dict:
    counts = relation_stats(instances)
    out = {label.value: counts[label] for label in RelationLabel}
    out["total"] = sum(counts.values())
    return out


def distribution_report(
    corpora: Corpus | Mapping[str, Corpus] | None = None,
    relations: Sequence[RelationInstance] | Mapping[str, Sequence[RelationInstance]] | None = None,
) -> dict:
    """Per-split label counts for components and relations, plus totals."""
    report: dict = {}

    if corpora is not None:
        splits = corpora if isinstance(corpora, Mapping) else {corpora.name or "corpus": corpora}
        rows = {name: _component_counts_json(corpus) for name, corpus in splits.items()}
        totals = {
            key: sum(row[key] for row in rows.values())
            for key in ("Premise", "Claim", "MajorClaim", "total")
        }
        report["components"] = {"splits": rows, "total": totals}

    if relations is not None:
        splits = relations if isinstance(relations, Mapping) else {"relations": relations}
        rows = {name: _relation_counts_json(instances) for name, instances in splits.items()}
        keys = [label.value for label in RelationLabel] + ["total"]
        totals = {key: sum(row[key] for row in rows.values()) for key in keys}
        report["relations"] = {"splits": rows, "total": totals}

    return report
