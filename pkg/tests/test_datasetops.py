from __future__ import annotations

import random
from collections import Counter

import pytest

from argproj.corpus import (
    AnnotatedSentence,
    ComponentLabel,
    Corpus,
    Document,
    RelationInstance,
    RelationLabel,
    component_stats,
    parse_relations,
)
from argproj.datasetops import (
    distribution_report,
    export_relations,
    merge_corpora,
    split_corpus,
)
from conftest import ABSTRCT_DIR, require_data
from genutil import random_corpus


class TestMerge:
    def test_single_corpus_identity_modulo_order(self):
        rng = random.Random(97)
        corpus, _ = random_corpus(rng, name="a")
        merged = merge_corpora([corpus], seed=5)
        assert sorted(merged.documents, key=lambda d: d.doc_id or "") == \
            sorted(corpus.documents, key=lambda d: d.doc_id or "")

    def test_stats_additive(self):
        rng = random.Random(101)
        a, tally_a = random_corpus(rng, name="a")
        b, tally_b = random_corpus(rng, name="b")
        merged = merge_corpora([a, b], seed=1)
        assert component_stats(merged) == tally_a + tally_b

    def test_seed_deterministic(self):
        rng = random.Random(103)
        a, _ = random_corpus(rng, max_docs=5, name="a")
        b, _ = random_corpus(rng, max_docs=5, name="b")
        m1 = merge_corpora([a, b], seed=42)
        m2 = merge_corpora([a, b], seed=42)
        assert m1 == m2

    def test_different_seeds_may_reorder(self):
        rng = random.Random(107)
        a, _ = random_corpus(rng, max_docs=6, max_sents=2, name="a")
        b, _ = random_corpus(rng, max_docs=6, max_sents=2, name="b")
        orders = {tuple(d.doc_id for d in merge_corpora([a, b], seed=s).documents)
                  for s in range(20)}
        assert len(orders) > 1

    def test_provenance_tagged(self):
        rng = random.Random(109)
        a, _ = random_corpus(rng, name="english")
        b, _ = random_corpus(rng, name="spanish")
        merged = merge_corpora([a, b], seed=0)
        assert {d.origin for d in merged.documents} == {"english", "spanish"}

    def test_duplicate_ids_prefixed(self):
        sent = AnnotatedSentence.from_words(["x"])
        a = Corpus(documents=(Document("doc0", (sent,)),), name="en")
        b = Corpus(documents=(Document("doc0", (sent,)),), name="es")
        merged = merge_corpora([a, b], seed=0)
        assert sorted(d.doc_id for d in merged.documents) == ["en:doc0", "es:doc0"]

    def test_unresolvable_duplicates(self):
        sent = AnnotatedSentence.from_words(["x"])
        a = Corpus(documents=(Document("doc0", (sent,)),), name="same")
        b = Corpus(documents=(Document("doc0", (sent,)),), name="same")
        with pytest.raises(ValueError):
            merge_corpora([a, b], seed=0)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            merge_corpora([], seed=0)

    def test_anonymous_documents_named_when_shuffled(self):
        sent = AnnotatedSentence.from_words(["x"])
        a = Corpus(documents=(Document(None, (sent,)),), name="a")
        b = Corpus(documents=(Document("d", (sent,)),), name="b")
        merged = merge_corpora([a, b], seed=3)
        assert all(d.doc_id is not None for d in merged.documents)


class TestSplit:
    def test_partition_and_determinism(self):
        rng = random.Random(113)
        corpus, _ = random_corpus(rng, max_docs=10, name="c")
        parts = split_corpus(corpus, [0.5, 0.25, 0.25], seed=9)
        again = split_corpus(corpus, [0.5, 0.25, 0.25], seed=9)
        assert parts == again
        assert sum(len(p.documents) for p in parts) == len(corpus.documents)
        merged_stats = Counter()
        for p in parts:
            merged_stats += component_stats(p)
        assert merged_stats == component_stats(corpus)

    def test_bad_ratios(self):
        corpus, _ = random_corpus(random.Random(1), name="c")
        with pytest.raises(ValueError):
            split_corpus(corpus, [0.5, 0.4], seed=0)
        with pytest.raises(ValueError):
            split_corpus(corpus, [], seed=0)


class TestExportRelations:
    def test_empty_export(self, tmp_path):
        out = tmp_path / "rels.txt"
        export_relations([], out)
        assert out.read_text(encoding="utf-8") == ""

    def test_round_trip(self, tmp_path):
        instances = [
            RelationInstance(RelationLabel.SUPPORT, "a", "b"),
            RelationInstance(RelationLabel.NO_REL, "c d", "e"),
            RelationInstance(RelationLabel.ATTACK, "f", "g"),
        ]
        out = tmp_path / "rels.txt"
        export_relations(instances, out)
        text = out.read_text(encoding="utf-8")
        assert len(text.splitlines()) == 3
        assert parse_relations(text) == instances

    def test_released_train_relation_file_line_count(self):
        path = require_data(ABSTRCT_DIR / "train_relations.txt")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 14285


class TestDistributionReport:
    def test_empty(self):
        report = distribution_report(Corpus(name="x"), [])
        assert report["components"]["splits"]["x"]["total"] == 0
        assert report["relations"]["splits"]["relations"]["total"] == 0

    def test_shapes_and_totals(self):
        rng = random.Random(127)
        a, tally_a = random_corpus(rng, name="train")
        b, tally_b = random_corpus(rng, name="dev")
        rels = {
            "test": [RelationInstance(RelationLabel.SUPPORT, "a", "b"),
                     RelationInstance(RelationLabel.NO_REL, "c", "d")],
        }
        report = distribution_report({"train": a, "dev": b}, rels)
        comp = report["components"]
        assert comp["splits"]["train"]["Premise"] == tally_a[ComponentLabel.PREMISE]
        assert comp["total"]["Premise"] == tally_a[ComponentLabel.PREMISE] + tally_b[ComponentLabel.PREMISE]
        rel = report["relations"]
        assert rel["splits"]["test"]["Support"] == 1
        assert rel["splits"]["test"]["noRel"] == 1
        assert rel["total"]["total"] == 2

    def test_abstrct_glaucoma_distribution(self):
        from argproj.corpus import parse_conll
        path = require_data(ABSTRCT_DIR / "glaucoma_test.conll")
        report = distribution_report(parse_conll(path.read_text(encoding="utf-8"), name="glaucoma"))
        row = report["components"]["splits"]["glaucoma"]
        assert (row["Premise"], row["Claim"], row["MajorClaim"]) == (404, 183, 7)

    def test_abstrct_mixed_relations(self):
        path = require_data(ABSTRCT_DIR / "mixed_test_relations.txt")
        report = distribution_report(relations=parse_relations(path.read_text(encoding="utf-8")))
        row = report["relations"]["splits"]["relations"]
        assert (row["Support"], row["Attack"], row["noRel"]) == (296, 24, 3012)
